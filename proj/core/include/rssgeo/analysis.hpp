#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "rssgeo/quadrature.hpp"
#include "rssgeo/scene.hpp"

namespace rssgeo::analysis {

/// Two-hypothesis resolution query: an emitter sits at q1; can noisy data
/// distinguish q1 from q2 for this sensor layout, channel, and noise level?
struct ResolutionQuery {
  Eigen::Vector2d q1{0.0, 0.0};
  Eigen::Vector2d q2{0.0, 0.0};
  scene::SensorArray sensors;
  scene::PathlossModel model;
  double sigma_db = 0;
};

/// Single lognormal e^N(mu, sigma^2) matched to a positively weighted
/// lognormal sum.  sigma == 0 encodes the noiseless point mass; `empty`
/// flags a vacuous (zero-term) sum.
struct LognormalFit {
  double mu = 0;
  double sigma = 0;
  bool empty = true;
};

/// P(Q > 0) over a grid of q2 candidates for one anchor q1.
struct ResolutionField {
  Eigen::Vector2d anchor{0.0, 0.0};
  scene::CandidateGrid grid;
  std::vector<double> values;              // size grid.count(), NaN where quadrature failed
  std::vector<scene::GridIndex> failures;  // indices of failed cells, if any
};

/// Minimum reliably detectable powers 2*eps/|Phi_i| over a region.
struct ClearanceReport {
  std::vector<scene::GridIndex> region;
  std::vector<double> thresholds;       // aligned with region
  double max_threshold = 0;
  scene::GridIndex argmax_index = 0;
};

/// Which norm |Phi_i| enters the detectability threshold.
enum class ThresholdNorm { kEuclidean, kSupremum };

/// Unit-norm noiseless signature b = d / |d| of a location; independent of
/// the emitter's reference power.  Throws ZeroSignatureError if |d| == 0.
Eigen::VectorXd normalized_signature(const Eigen::Vector2d& location,
                                     const scene::SensorArray& sensors,
                                     const scene::PathlossModel& model);

/// Discriminant weights w_j = (b1_j - b2_j) / r_1j^n.  Throws
/// DegenerateQueryError when |b1 - b2| < 1e-12.
Eigen::VectorXd discriminant_weights(const ResolutionQuery& query);

/// Two-moment (Fenton-Wilkinson) fit of a single lognormal to
/// sum_j w_j e^(eta N(0, sigma_db^2)) with independent terms and w_j > 0.
LognormalFit fit_lognormal_sum(const std::vector<double>& weights, double sigma_db);

/// CDF H(x) of Q = Q+ - Q- for fitted lognormal halves, evaluated by
/// adaptive quadrature of the convolution integral (substituted y = e^t).
/// Requires both fits nonvacuous with sigma > 0.
double signed_sum_cdf(const LognormalFit& positive, const LognormalFit& negative, double x,
                      const quad::QuadratureOptions& options = {});

/// Probability of assigning the emitter to the true location q1:
/// P(Q > 0) = 1 - H(0).  Degenerate queries return 0.5 by convention;
/// an empty negative (positive) group returns 1 (0).
double prob_correct_assignment(const ResolutionQuery& query,
                               const quad::QuadratureOptions& options = {});

/// Empirical resolution probability: fraction of trials where data simulated
/// from q1 matches b1 better than b2 (strict coherence comparison).
double monte_carlo_resolution(const ResolutionQuery& query, int trials, std::uint64_t seed);

/// P(Q > 0) with q2 swept over every grid cell center.  Cells where the
/// quadrature fails carry NaN and are listed in `failures`.
ResolutionField resolution_map(const Eigen::Vector2d& anchor, const scene::CandidateGrid& grid,
                               const scene::SensorArray& sensors,
                               const scene::PathlossModel& model, double sigma_db,
                               const quad::QuadratureOptions& options = {});

/// Power threshold 2*eps/|Phi_i| below which an extra emitter at grid index
/// i cannot be distinguished from fit error at tolerance eps.
double detectability_threshold(const scene::MeasurementMatrix& matrix, scene::GridIndex index,
                               double epsilon, ThresholdNorm norm = ThresholdNorm::kEuclidean);

/// Per-index detectability thresholds over a region plus the region maximum.
ClearanceReport clearance_map(const scene::MeasurementMatrix& matrix,
                              const std::vector<scene::GridIndex>& region, double epsilon,
                              ThresholdNorm norm = ThresholdNorm::kEuclidean);

}  // namespace rssgeo::analysis
