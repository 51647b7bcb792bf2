#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "rssgeo/scene.hpp"

namespace rssgeo::noise {

/// dB-to-natural-log conversion constant: e^(eta * x) == 10^(x / 10).
inline constexpr double kEta = 0.23025850929940456840179914546844;  // ln(10) / 10

/// First two moments of X = e^(eta * R) - 1 with R ~ N(0, sigma_db^2).
struct NoiseMoments {
  double mean = 0;      // mu0 = exp(eta^2 sigma^2 / 2) - 1
  double variance = 0;  // sigma0^2 = exp(eta^2 sigma^2) (exp(eta^2 sigma^2) - 1)
};

/// Closed-form moments of the multiplicative shadowing perturbation.
NoiseMoments noise_moments(double sigma_db);

/// Simulates one noisy data vector: d_j = sum_i p_i gain(r_ij) e^(eta R_ij)
/// with one independent N(0, sigma_db^2) draw per (emitter, sensor) pair,
/// drawn emitter-major in declaration order.  Deterministic in the seed.
Eigen::VectorXd simulate_noisy_data(const std::vector<scene::Emitter>& emitters,
                                    const scene::SensorArray& sensors,
                                    const scene::PathlossModel& model, double sigma_db,
                                    std::uint64_t seed);

/// Upper bound (mu0^2 + sigma0^2) * |d_ref|^2 on E|d - d0|^2; an equality
/// when a single emitter is present and d_ref = d0.
double expected_residual_sq_bound(const Eigen::VectorXd& d_ref, double sigma_db);

/// Solver stopping threshold C * sqrt(mu0^2 + sigma0^2) * |d|.
double termination_epsilon(const Eigen::VectorXd& data, double sigma_db, double c = 0.25);

}  // namespace rssgeo::noise
