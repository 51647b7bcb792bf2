#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "rssgeo/scene.hpp"

namespace rssgeo::solver {

enum class Termination {
  kNoiseFloor,   // residual fell to the expected-noise threshold
  kMaxSparsity,  // support reached the configured sparsity cap
  kStall,        // no admissible column improved the fit
};

std::string to_string(Termination t);

struct SparseSolution {
  std::vector<scene::GridIndex> support;  // grid indices with strictly positive power
  Eigen::VectorXd powers;                 // aligned with support, >= 0
  double residual_norm = 0;               // |d - Phi_S p|
  int iterations = 0;                     // accepted greedy augmentations
  Termination terminated_by = Termination::kNoiseFloor;
};

struct SolverConfig {
  int max_sparsity = 12;
  double band_exclusion = 0.98;   // beta: new columns must have coherence <= beta with support
  double termination_c = 0.25;    // C in the expected-noise stopping rule
  double sigma_db = 0;            // noise level feeding the stopping rule
  bool local_optimization = true; // band-local support refinement (BLOOMP only)
  double nnls_tolerance = 1e-10;  // dual feasibility tolerance in the active-set solver
  double stall_tolerance = 1e-12; // minimum relative residual improvement per iteration
};

/// Normalized absolute inner product |x . y| / (|x| |y|) in [0, 1].
/// Throws ZeroVectorError when either vector has zero norm.
double coherence(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Largest pairwise column coherence of the matrix (>= 2 nonzero columns).
double mutual_coherence(const scene::MeasurementMatrix& matrix);

/// Nonnegative least squares restricted to the given support columns
/// (Lawson-Hanson active set).  Returns powers aligned with `support`.
/// Throws DegenerateSupportError when the restricted columns are
/// rank-deficient beyond tolerance.
Eigen::VectorXd nnls_on_support(const scene::MeasurementMatrix& matrix, const Eigen::VectorXd& d,
                                const std::vector<scene::GridIndex>& support,
                                double dual_tolerance = 1e-10);

/// Nonnegativity-constrained orthogonal matching pursuit.
SparseSolution omp_solve(const scene::MeasurementMatrix& matrix, const Eigen::VectorXd& d,
                         const SolverConfig& config);

/// Band-excluded, locally optimized OMP: a new column must have coherence
/// <= beta with every selected column, and after each selection every support
/// index may be replaced by the best index of its own coherence band when
/// that strictly reduces the residual.
SparseSolution bloomp_solve(const scene::MeasurementMatrix& matrix, const Eigen::VectorXd& d,
                            const SolverConfig& config, const scene::CandidateGrid& grid);

}  // namespace rssgeo::solver
