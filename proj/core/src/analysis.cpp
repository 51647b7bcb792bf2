#include "rssgeo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rssgeo/noise.hpp"
#include "rssgeo/parallel.hpp"
#include "rssgeo/rng.hpp"

namespace rssgeo::analysis {

namespace {

constexpr double kDegenerateTol = 1e-12;

double lognormal_cdf(double x, double mu, double sigma) {
  if (x <= 0.0) return 0.0;
  return 0.5 + 0.5 * std::erf((std::log(x) - mu) / (sigma * std::numbers::sqrt2));
}

double normal_pdf(double t, double mu, double sigma) {
  const double z = (t - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

Eigen::VectorXd normalized_signature(const Eigen::Vector2d& location,
                                     const scene::SensorArray& sensors,
                                     const scene::PathlossModel& model) {
  const Eigen::VectorXd data =
      scene::forward_offgrid({{location, 1.0}}, sensors, model);
  const double norm = data.norm();
  if (norm == 0.0) {
    throw ZeroSignatureError("location produced identically zero data");
  }
  return data / norm;
}

Eigen::VectorXd discriminant_weights(const ResolutionQuery& query) {
  const Eigen::VectorXd b1 = normalized_signature(query.q1, query.sensors, query.model);
  const Eigen::VectorXd b2 = normalized_signature(query.q2, query.sensors, query.model);
  const Eigen::VectorXd c = b1 - b2;
  if (c.norm() < kDegenerateTol) {
    throw DegenerateQueryError("query locations are indistinguishable");
  }
  Eigen::VectorXd w(c.size());
  for (int j = 0; j < c.size(); ++j) {
    const double r1j =
        scene::distance(query.sensors.positions[j], query.sensors.altitude, query.q1);
    w[j] = c[j] / std::pow(r1j, query.model.exponent);
  }
  return w;
}

LognormalFit fit_lognormal_sum(const std::vector<double>& weights, double sigma_db) {
  LognormalFit fit;
  if (weights.empty()) return fit;

  double sum_w = 0;
  double sum_w2 = 0;
  for (double w : weights) {
    if (!(w > 0)) {
      throw Error("fit_lognormal_sum requires strictly positive weights");
    }
    sum_w += w;
    sum_w2 += w * w;
  }

  // Exact first two moments of the weighted sum of iid lognormal factors.
  const double z = noise::kEta * noise::kEta * sigma_db * sigma_db;
  const double mean = sum_w * std::exp(z / 2.0);
  const double variance = sum_w2 * std::exp(z) * std::expm1(z);

  fit.empty = false;
  if (variance == 0.0) {  // sigma_db == 0: point mass at the plain sum
    fit.mu = std::log(sum_w);
    fit.sigma = 0.0;
    return fit;
  }
  const double sigma_sq = std::log1p(variance / (mean * mean));
  fit.sigma = std::sqrt(sigma_sq);
  fit.mu = std::log(mean) - sigma_sq / 2.0;
  return fit;
}

double signed_sum_cdf(const LognormalFit& positive, const LognormalFit& negative, double x,
                      const quad::QuadratureOptions& options) {
  if (positive.empty || negative.empty || positive.sigma <= 0.0 || negative.sigma <= 0.0) {
    throw Error("signed_sum_cdf requires nonvacuous fits with positive sigma");
  }

  // H(x) = integral over y in (max(0,-x), inf) of F+(x + y) g-(y) dy.
  // With y = e^t the negative half's density becomes a plain normal in t,
  // which removes the endpoint singularity and bounds the domain by tails.
  const double mu_n = negative.mu;
  const double sigma_n = negative.sigma;
  constexpr double kTailSigmas = 12.0;

  double t_lo = mu_n - kTailSigmas * sigma_n;
  const double t_hi = mu_n + kTailSigmas * sigma_n;
  if (x < 0.0) {
    const double cutoff = std::log(-x);
    t_lo = std::max(t_lo, cutoff);
    if (t_lo >= t_hi) {
      return 0.0;  // cutoff beyond the negative half's far tail
    }
  }

  const auto integrand = [&](double t) {
    return lognormal_cdf(x + std::exp(t), positive.mu, positive.sigma) *
           normal_pdf(t, mu_n, sigma_n);
  };
  const auto res = quad::integrate(integrand, t_lo, t_hi, options);
  if (!res.converged) {
    throw QuadratureFailureError("signed-sum CDF quadrature exhausted its budget (error " +
                                 std::to_string(res.error_estimate) + ")");
  }
  return std::clamp(res.value, 0.0, 1.0);
}

double prob_correct_assignment(const ResolutionQuery& query,
                               const quad::QuadratureOptions& options) {
  Eigen::VectorXd w;
  try {
    w = discriminant_weights(query);
  } catch (const DegenerateQueryError&) {
    return 0.5;  // coin-toss convention for indistinguishable locations
  }

  std::vector<double> positive;
  std::vector<double> negative;
  for (int j = 0; j < w.size(); ++j) {
    if (w[j] > 0.0) {
      positive.push_back(w[j]);
    } else if (w[j] < 0.0) {
      negative.push_back(-w[j]);
    }
    // zero weights contribute nothing and are dropped
  }

  if (negative.empty()) return positive.empty() ? 0.5 : 1.0;
  if (positive.empty()) return 0.0;

  if (query.sigma_db == 0.0) {
    // Noiseless case: Q is deterministic; its sign is the sign of c . d1.
    double sum_p = 0, sum_n = 0;
    for (double v : positive) sum_p += v;
    for (double v : negative) sum_n += v;
    if (sum_p > sum_n) return 1.0;
    if (sum_p < sum_n) return 0.0;
    return 0.5;
  }

  const LognormalFit fit_pos = fit_lognormal_sum(positive, query.sigma_db);
  const LognormalFit fit_neg = fit_lognormal_sum(negative, query.sigma_db);
  const double h0 = signed_sum_cdf(fit_pos, fit_neg, 0.0, options);
  return std::clamp(1.0 - h0, 0.0, 1.0);
}

double monte_carlo_resolution(const ResolutionQuery& query, int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw Error("monte_carlo_resolution requires at least one trial");
  }
  const Eigen::VectorXd b1 = normalized_signature(query.q1, query.sensors, query.model);
  const Eigen::VectorXd b2 = normalized_signature(query.q2, query.sensors, query.model);
  if ((b1 - b2).norm() < kDegenerateTol) {
    return 0.5;  // degenerate rule: strict wins would be spurious
  }

  const Eigen::VectorXd c = b1 - b2;
  const std::vector<scene::Emitter> truth = {{query.q1, 1.0}};
  std::vector<std::uint8_t> wins(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, [&](int t) {
    const Eigen::VectorXd d =
        noise::simulate_noisy_data(truth, query.sensors, query.model, query.sigma_db,
                                   substream_seed(seed, static_cast<std::uint64_t>(t)));
    // mu(d, b1) > mu(d, b2) reduces to c . d > 0 for positive data.
    wins[static_cast<std::size_t>(t)] = c.dot(d) > 0.0 ? 1 : 0;
  });
  std::size_t total = 0;
  for (auto v : wins) total += v;
  return static_cast<double>(total) / static_cast<double>(trials);
}

ResolutionField resolution_map(const Eigen::Vector2d& anchor, const scene::CandidateGrid& grid,
                               const scene::SensorArray& sensors,
                               const scene::PathlossModel& model, double sigma_db,
                               const quad::QuadratureOptions& options) {
  grid.validate();
  sensors.validate();
  model.validate();

  ResolutionField field;
  field.anchor = anchor;
  field.grid = grid;
  field.values.assign(static_cast<std::size_t>(grid.count()),
                      std::numeric_limits<double>::quiet_NaN());

  parallel_for(grid.count(), [&](int cell) {
    ResolutionQuery query;
    query.q1 = anchor;
    query.q2 = grid.point(static_cast<scene::GridIndex>(cell) + 1);
    query.sensors = sensors;
    query.model = model;
    query.sigma_db = sigma_db;
    try {
      field.values[static_cast<std::size_t>(cell)] = prob_correct_assignment(query, options);
    } catch (const QuadratureFailureError&) {
      // left as NaN; recorded below
    }
  });

  for (int cell = 0; cell < grid.count(); ++cell) {
    if (std::isnan(field.values[static_cast<std::size_t>(cell)])) {
      field.failures.push_back(static_cast<scene::GridIndex>(cell) + 1);
    }
  }
  return field;
}

double detectability_threshold(const scene::MeasurementMatrix& matrix, scene::GridIndex index,
                               double epsilon, ThresholdNorm norm) {
  if (index < 1 || index > matrix.candidate_count()) {
    throw DimensionMismatchError("grid index " + std::to_string(index) + " out of range");
  }
  if (epsilon < 0) {
    throw Error("epsilon must be nonnegative");
  }
  const auto column = matrix.column(index);
  const double column_norm =
      norm == ThresholdNorm::kEuclidean ? column.norm() : column.cwiseAbs().maxCoeff();
  if (column_norm == 0.0) {
    throw ZeroVectorError("matrix column " + std::to_string(index) + " is zero");
  }
  return 2.0 * epsilon / column_norm;
}

ClearanceReport clearance_map(const scene::MeasurementMatrix& matrix,
                              const std::vector<scene::GridIndex>& region, double epsilon,
                              ThresholdNorm norm) {
  if (region.empty()) {
    throw DimensionMismatchError("clearance_map requires a nonempty region");
  }
  ClearanceReport report;
  report.region = region;
  report.thresholds.resize(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) {
    report.thresholds[i] = detectability_threshold(matrix, region[i], epsilon, norm);
    if (i == 0 || report.thresholds[i] > report.max_threshold) {
      report.max_threshold = report.thresholds[i];
      report.argmax_index = region[i];
    }
  }
  return report;
}

}  // namespace rssgeo::analysis
