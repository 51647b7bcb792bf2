#include "rssgeo/noise.hpp"

#include <cmath>

#include "rssgeo/rng.hpp"

namespace rssgeo::noise {

NoiseMoments noise_moments(double sigma_db) {
  const double z = kEta * kEta * sigma_db * sigma_db;
  NoiseMoments m;
  m.mean = std::expm1(z / 2.0);
  m.variance = std::exp(z) * std::expm1(z);
  return m;
}

Eigen::VectorXd simulate_noisy_data(const std::vector<scene::Emitter>& emitters,
                                    const scene::SensorArray& sensors,
                                    const scene::PathlossModel& model, double sigma_db,
                                    std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd data = Eigen::VectorXd::Zero(sensors.count());
  for (const auto& emitter : emitters) {
    for (int j = 0; j < sensors.count(); ++j) {
      const double r = scene::distance(sensors.positions[j], sensors.altitude, emitter.position);
      const double shadow = std::exp(kEta * rng.next_normal(sigma_db));
      data[j] += emitter.power * model.gain(r) * shadow;
    }
  }
  return data;
}

double expected_residual_sq_bound(const Eigen::VectorXd& d_ref, double sigma_db) {
  const NoiseMoments m = noise_moments(sigma_db);
  return (m.mean * m.mean + m.variance) * d_ref.squaredNorm();
}

double termination_epsilon(const Eigen::VectorXd& data, double sigma_db, double c) {
  const NoiseMoments m = noise_moments(sigma_db);
  return c * std::sqrt(m.mean * m.mean + m.variance) * data.norm();
}

}  // namespace rssgeo::noise
