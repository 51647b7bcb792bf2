#include "rssgeo/scene.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "rssgeo/parallel.hpp"

namespace rssgeo::scene {

double PathlossModel::gain(double r) const {
  if (r == 0.0) {
    throw ZeroDistanceError("pathloss gain requested at zero distance");
  }
  return reference_power * std::pow(reference_distance / r, exponent);
}

void PathlossModel::validate() const {
  if (!(exponent > 0) || !std::isfinite(exponent)) {
    throw ScenarioError("pathloss exponent must be positive, got " + std::to_string(exponent));
  }
  if (!(reference_distance > 0) || !std::isfinite(reference_distance)) {
    throw ScenarioError("reference distance must be positive");
  }
  if (!(reference_power > 0) || !std::isfinite(reference_power)) {
    throw ScenarioError("reference power must be positive");
  }
}

void SensorArray::validate() const {
  if (positions.empty()) {
    throw ScenarioError("sensor array must contain at least one sensor");
  }
  if (!(altitude >= 0) || !std::isfinite(altitude)) {
    throw ScenarioError("sensor altitude must be finite and >= 0");
  }
  for (const auto& p : positions) {
    if (!p.allFinite()) {
      throw ScenarioError("sensor positions must be finite");
    }
  }
  constexpr double kCoincidenceTol = 1e-9;  // meters
  for (std::size_t a = 0; a < positions.size(); ++a) {
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      if ((positions[a] - positions[b]).norm() < kCoincidenceTol) {
        throw ScenarioError("sensors " + std::to_string(a) + " and " + std::to_string(b) +
                            " are coincident");
      }
    }
  }
}

GridIndex CandidateGrid::index_of(int ix, int iy) const {
  if (ix < 1 || ix > nx || iy < 1 || iy > ny) {
    throw DimensionMismatchError("grid cell (" + std::to_string(ix) + ", " + std::to_string(iy) +
                                 ") outside " + std::to_string(nx) + "x" + std::to_string(ny));
  }
  return static_cast<GridIndex>(iy - 1) * nx + ix;
}

Eigen::Vector2d CandidateGrid::point(GridIndex index) const {
  if (index < 1 || index > count()) {
    throw DimensionMismatchError("grid index " + std::to_string(index) + " outside 1.." +
                                 std::to_string(count()));
  }
  const int ix = static_cast<int>((index - 1) % nx) + 1;
  const int iy = static_cast<int>((index - 1) / nx) + 1;
  return origin + Eigen::Vector2d((ix - 0.5) * spacing, (iy - 0.5) * spacing);
}

GridIndex CandidateGrid::nearest_index(const Eigen::Vector2d& p) const {
  const auto clamp = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  const int ix = clamp(static_cast<int>(std::floor((p.x() - origin.x()) / spacing)) + 1, 1, nx);
  const int iy = clamp(static_cast<int>(std::floor((p.y() - origin.y()) / spacing)) + 1, 1, ny);
  return index_of(ix, iy);
}

void CandidateGrid::validate() const {
  if (nx < 1 || ny < 1) {
    throw ScenarioError("candidate grid must have at least one cell per axis");
  }
  if (!(spacing > 0) || !std::isfinite(spacing)) {
    throw ScenarioError("grid spacing must be positive");
  }
  if (!origin.allFinite()) {
    throw ScenarioError("grid origin must be finite");
  }
}

void Scenario::validate() const {
  grid.validate();
  sensors.validate();
  model.validate();
  if (!(sigma_db >= 0) || !std::isfinite(sigma_db)) {
    throw ScenarioError("sigma_db must be finite and >= 0");
  }
  for (const auto& e : emitters) {
    if (!e.position.allFinite() || !(e.power >= 0) || !std::isfinite(e.power)) {
      throw ScenarioError("emitters require finite positions and power >= 0");
    }
  }
}

double distance(const Eigen::Vector2d& sensor_xy, double altitude,
                const Eigen::Vector2d& location) {
  const double planar = (sensor_xy - location).norm();
  return std::sqrt(planar * planar + altitude * altitude);
}

MeasurementMatrix build_measurement_matrix(const CandidateGrid& grid, const SensorArray& sensors,
                                           const PathlossModel& model) {
  grid.validate();
  sensors.validate();
  model.validate();

  const int m = sensors.count();
  const int n = grid.count();
  MeasurementMatrix matrix;
  matrix.gains.resize(m, n);

  // Column-parallel fill; each column depends only on its own grid point, so
  // the result does not depend on scheduling.
  std::atomic<int> first_zero_distance{-1};
  parallel_for(n, [&](int col) {
    const Eigen::Vector2d point = grid.point(static_cast<GridIndex>(col) + 1);
    for (int j = 0; j < m; ++j) {
      const double r = distance(sensors.positions[j], sensors.altitude, point);
      if (r == 0.0) {
        int expected = -1;
        first_zero_distance.compare_exchange_strong(expected, col);
        return;
      }
      matrix.gains(j, col) = model.gain(r);
    }
  });
  if (first_zero_distance.load() >= 0) {
    throw ZeroDistanceError("a sensor coincides with grid index " +
                            std::to_string(first_zero_distance.load() + 1));
  }
  return matrix;
}

Eigen::VectorXd forward(const MeasurementMatrix& matrix, const Eigen::VectorXd& powers) {
  if (powers.size() != matrix.candidate_count()) {
    throw DimensionMismatchError("power vector length " + std::to_string(powers.size()) +
                                 " != candidate count " +
                                 std::to_string(matrix.candidate_count()));
  }
  return matrix.gains * powers;
}

Eigen::VectorXd forward_offgrid(const std::vector<Emitter>& emitters, const SensorArray& sensors,
                                const PathlossModel& model) {
  Eigen::VectorXd data = Eigen::VectorXd::Zero(sensors.count());
  for (const auto& emitter : emitters) {
    for (int j = 0; j < sensors.count(); ++j) {
      const double r = distance(sensors.positions[j], sensors.altitude, emitter.position);
      data[j] += emitter.power * model.gain(r);
    }
  }
  return data;
}

Eigen::VectorXd unit_power_vector(const CandidateGrid& grid, GridIndex index, double power) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(grid.count());
  if (index < 1 || index > grid.count()) {
    throw DimensionMismatchError("grid index " + std::to_string(index) + " outside 1.." +
                                 std::to_string(grid.count()));
  }
  p[index - 1] = power;
  return p;
}

}  // namespace rssgeo::scene
