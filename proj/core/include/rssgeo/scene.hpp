#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "rssgeo/errors.hpp"

namespace rssgeo::scene {

/// One-based linear index of a candidate grid point.  The grid linearizes
/// x-fastest: index = (iy - 1) * nx + ix for one-based (ix, iy).  Column
/// k (zero-based) of a measurement matrix corresponds to grid index k + 1.
using GridIndex = std::int32_t;

/// One-slope log-distance propagation model: an emitter of reference power p
/// contributes p * k_ref * (r0 / r)^n at distance r.
struct PathlossModel {
  double exponent = 3.5;          // n, dimensionless
  double reference_distance = 1;  // r0, meters
  double reference_power = 1;     // k_ref, gain at r = r0

  double gain(double r) const;  // k_ref * (r0 / r)^n; throws ZeroDistanceError on r == 0

  void validate() const;
};

/// Planar sensor positions sharing one altitude above the candidate plane.
struct SensorArray {
  std::vector<Eigen::Vector2d> positions;  // (a_j, b_j), meters
  double altitude = 0;                     // h >= 0, meters

  int count() const { return static_cast<int>(positions.size()); }

  // At least one sensor, finite coordinates, no coincident pair within 1e-9 m.
  void validate() const;
};

/// Rectangular grid of candidate emitter locations.  Cell centers sit at
/// origin + ((ix - 0.5) * spacing, (iy - 0.5) * spacing), one-based ix, iy.
struct CandidateGrid {
  int nx = 0;
  int ny = 0;
  double spacing = 1;                        // meters
  Eigen::Vector2d origin{0.0, 0.0};          // offset of the grid corner, meters

  int count() const { return nx * ny; }

  GridIndex index_of(int ix, int iy) const;          // one-based cell coordinates
  Eigen::Vector2d point(GridIndex index) const;      // cell center for a linear index
  GridIndex nearest_index(const Eigen::Vector2d& p) const;

  void validate() const;
};

/// A transmitter: planar position (need not lie on the grid) and reference power.
struct Emitter {
  Eigen::Vector2d position{0.0, 0.0};  // meters
  double power = 0;                    // reference power at r0, >= 0
};

/// A complete simulated experiment: geometry, channel, noise level, truth.
struct Scenario {
  CandidateGrid grid;
  SensorArray sensors;
  PathlossModel model;
  double sigma_db = 0;            // lognormal shadowing spread, dB
  std::vector<Emitter> emitters;  // ground truth (may be empty)

  void validate() const;
};

/// Pathloss gain matrix: rows indexed by sensors (M), columns by candidate
/// grid points (N); entry (j, i) = k_ref * (r0 / r_ij)^n.
struct MeasurementMatrix {
  Eigen::MatrixXd gains;  // M x N, strictly positive

  int sensor_count() const { return static_cast<int>(gains.rows()); }
  int candidate_count() const { return static_cast<int>(gains.cols()); }

  /// Column view for a one-based grid index.
  auto column(GridIndex index) const { return gains.col(index - 1); }
  double column_norm(GridIndex index) const { return gains.col(index - 1).norm(); }
};

/// Euclidean 3-D distance from an elevated sensor to a ground location.
double distance(const Eigen::Vector2d& sensor_xy, double altitude,
                const Eigen::Vector2d& location);

/// Builds the M x N gain matrix for a grid/sensor/pathloss configuration.
/// Throws ZeroDistanceError if any sensor coincides with a grid point.
/// Column construction parallelizes; the result is bit-identical to serial.
MeasurementMatrix build_measurement_matrix(const CandidateGrid& grid,
                                           const SensorArray& sensors,
                                           const PathlossModel& model);

/// Noiseless forward map d0 = Phi * p for an on-grid power vector.
Eigen::VectorXd forward(const MeasurementMatrix& matrix, const Eigen::VectorXd& powers);

/// Noiseless data from emitters evaluated at their exact (possibly off-grid)
/// positions, bypassing the candidate grid.
Eigen::VectorXd forward_offgrid(const std::vector<Emitter>& emitters,
                                const SensorArray& sensors, const PathlossModel& model);

/// Power vector with a single nonzero entry at the given grid index.
Eigen::VectorXd unit_power_vector(const CandidateGrid& grid, GridIndex index, double power = 1.0);

}  // namespace rssgeo::scene
