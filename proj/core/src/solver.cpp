#include "rssgeo/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "rssgeo/noise.hpp"

namespace rssgeo::solver {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kNoiseFloor: return "noise-floor";
    case Termination::kMaxSparsity: return "max-sparsity";
    case Termination::kStall: return "stall";
  }
  return "unknown";
}

double coherence(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) {
    throw ZeroVectorError("coherence of a zero vector is undefined");
  }
  const double mu = std::abs(x.dot(y)) / (nx * ny);
  return std::min(mu, 1.0);  // guard roundoff above 1
}

double mutual_coherence(const scene::MeasurementMatrix& matrix) {
  const auto& phi = matrix.gains;
  const int n = matrix.candidate_count();
  if (n < 2) {
    throw DimensionMismatchError("mutual coherence needs at least two columns");
  }
  Eigen::VectorXd norms = phi.colwise().norm();
  for (int i = 0; i < n; ++i) {
    if (norms[i] == 0.0) {
      throw ZeroVectorError("matrix column " + std::to_string(i + 1) + " is zero");
    }
  }
  // Gram matrix in modest blocks keeps memory flat for large N.
  constexpr int kBlock = 512;
  double best = 0;
  for (int i0 = 0; i0 < n; i0 += kBlock) {
    const int iw = std::min(kBlock, n - i0);
    for (int j0 = i0; j0 < n; j0 += kBlock) {
      const int jw = std::min(kBlock, n - j0);
      Eigen::MatrixXd gram = phi.middleCols(i0, iw).transpose() * phi.middleCols(j0, jw);
      for (int a = 0; a < iw; ++a) {
        const int b_begin = (i0 == j0) ? a + 1 : 0;
        for (int b = b_begin; b < jw; ++b) {
          const double mu = std::abs(gram(a, b)) / (norms[i0 + a] * norms[j0 + b]);
          best = std::max(best, mu);
        }
      }
    }
  }
  return std::min(best, 1.0);
}

namespace {

// Lawson-Hanson active-set NNLS on an explicit M x k column block.  Inner
// least-squares solves use column-pivoted QR so nearly coherent supports
// stay stable.  k is small here (the solver's sparsity cap).
Eigen::VectorXd nnls_dense(const Eigen::MatrixXd& a, const Eigen::VectorXd& d,
                           double dual_tolerance) {
  const int k = static_cast<int>(a.cols());

  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-12);
    if (qr.rank() < k) {
      throw DegenerateSupportError("support columns are rank-deficient");
    }
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  std::vector<int> passive;
  passive.reserve(k);
  std::vector<bool> in_passive(k, false);
  std::vector<bool> barred(k, false);  // anti-cycling: entries that re-clamped on entry

  Eigen::VectorXd residual = d;
  const double dual_scale = (a.transpose() * d).cwiseAbs().maxCoeff();
  const double tol = dual_tolerance * std::max(1.0, dual_scale);

  const auto solve_passive = [&](const std::vector<int>& set) {
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(set.size()));
    for (std::size_t c = 0; c < set.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(set[c]);
    return Eigen::VectorXd(sub.colPivHouseholderQr().solve(d));
  };

  for (int outer = 0; outer < 6 * k + 20; ++outer) {
    const Eigen::VectorXd w = a.transpose() * residual;

    int entering = -1;
    double best_w = tol;
    for (int i = 0; i < k; ++i) {
      if (!in_passive[i] && !barred[i] && w[i] > best_w) {
        best_w = w[i];
        entering = i;
      }
    }
    if (entering < 0) break;  // KKT: every clamped coordinate has nonpositive gradient

    passive.push_back(entering);
    in_passive[entering] = true;

    Eigen::VectorXd z = solve_passive(passive);
    for (int inner = 0; inner <= 3 * k + 10; ++inner) {
      if (passive.empty() || z.minCoeff() > 0.0) break;

      // Step from x toward z until the first coordinate hits zero.
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < passive.size(); ++c) {
        if (z[c] <= 0.0) {
          const double xc = x[passive[c]];
          const double denom = xc - z[c];
          alpha = std::min(alpha, denom > 0.0 ? xc / denom : 0.0);
        }
      }
      for (std::size_t c = 0; c < passive.size(); ++c) {
        x[passive[c]] += alpha * (z[c] - x[passive[c]]);
      }
      std::vector<int> kept;
      for (std::size_t c = 0; c < passive.size(); ++c) {
        if (x[passive[c]] > 0.0 && z[c] > 0.0) {
          kept.push_back(passive[c]);
        } else {
          x[passive[c]] = 0.0;
          in_passive[passive[c]] = false;
        }
      }
      passive = std::move(kept);
      if (passive.empty()) break;
      z = solve_passive(passive);
    }

    x.setZero();
    for (std::size_t c = 0; c < passive.size(); ++c) x[passive[c]] = std::max(z[c], 0.0);
    residual = d - a * x;

    if (!in_passive[entering]) {
      barred[entering] = true;  // entered and was clamped straight back
    } else {
      std::fill(barred.begin(), barred.end(), false);
    }
    if (passive.size() == static_cast<std::size_t>(k)) break;
  }
  return x;
}

Eigen::MatrixXd gather_columns(const scene::MeasurementMatrix& matrix,
                               const std::vector<scene::GridIndex>& support) {
  Eigen::MatrixXd sub(matrix.gains.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    sub.col(static_cast<Eigen::Index>(c)) = matrix.gains.col(support[c] - 1);
  }
  return sub;
}

// Shared greedy driver for OMP and BLOOMP.
class GreedyPursuit {
 public:
  GreedyPursuit(const scene::MeasurementMatrix& matrix, const Eigen::VectorXd& d,
                const SolverConfig& config, bool band_excluded)
      : matrix_(matrix),
        d_(d),
        config_(config),
        band_excluded_(band_excluded),
        column_norms_(matrix.gains.colwise().norm()) {
    for (int i = 0; i < column_norms_.size(); ++i) {
      if (column_norms_[i] == 0.0) {
        throw ZeroVectorError("matrix column " + std::to_string(i + 1) + " is zero");
      }
    }
  }

  SparseSolution run() {
    SparseSolution out;
    const double d_norm = d_.norm();
    if (d_norm == 0.0) {
      out.terminated_by = Termination::kNoiseFloor;
      return out;
    }

    const double eps = noise::termination_epsilon(d_, config_.sigma_db, config_.termination_c);
    // Exact-fit floor: a residual at roundoff scale counts as fully explained.
    const double floor = std::max(eps, 1e-13 * d_norm);

    double residual_norm = d_norm;
    Termination reason = Termination::kMaxSparsity;

    while (static_cast<int>(support_.size()) < config_.max_sparsity) {
      if (residual_norm <= floor) {
        reason = Termination::kNoiseFloor;
        break;
      }

      const Eigen::VectorXd residual =
          support_.empty() ? d_ : Eigen::VectorXd(d_ - gather_columns(matrix_, support_) * powers_);
      const int pick = select_column(residual);
      if (pick < 0) {
        reason = Termination::kStall;  // band exclusion left no admissible column
        break;
      }

      auto trial_support = support_;
      trial_support.push_back(static_cast<scene::GridIndex>(pick) + 1);
      Eigen::VectorXd trial_powers;
      if (!try_nnls(trial_support, &trial_powers)) {
        rejected_.insert(pick);  // newest column degenerate; bar it and retry
        continue;
      }

      const double trial_norm = residual_norm_of(trial_support, trial_powers);
      if (residual_norm - trial_norm < config_.stall_tolerance * residual_norm) {
        reason = Termination::kStall;  // no measurable progress; drop the pick
        break;
      }

      support_ = std::move(trial_support);
      powers_ = std::move(trial_powers);
      residual_norm = trial_norm;
      ++out.iterations;
      rejected_.clear();

      if (band_excluded_ && config_.local_optimization) {
        residual_norm = locally_optimize(residual_norm);
      }

      if (residual_norm <= floor) {
        reason = Termination::kNoiseFloor;
        break;
      }
    }

    // The recovered support carries only strictly positive powers; entries the
    // active-set solver clamped to zero contribute nothing to the fit.
    for (std::size_t c = 0; c < support_.size(); ++c) {
      if (powers_[c] > 0.0) out.support.push_back(support_[c]);
    }
    out.powers.resize(static_cast<Eigen::Index>(out.support.size()));
    Eigen::Index filled = 0;
    for (std::size_t c = 0; c < support_.size(); ++c) {
      if (powers_[c] > 0.0) out.powers[filled++] = powers_[c];
    }
    out.residual_norm = residual_norm_of(support_, powers_);
    out.terminated_by = reason;
    return out;
  }

 private:
  // Classic OMP proxy: largest |column . residual| / |column|, ties to the
  // lowest grid index.  Band-excluded mode skips columns whose coherence with
  // any support column exceeds beta.
  int select_column(const Eigen::VectorXd& residual) {
    std::vector<bool> blocked(static_cast<std::size_t>(matrix_.candidate_count()), false);
    for (auto idx : support_) blocked[idx - 1] = true;
    for (int col : rejected_) blocked[col] = true;
    if (band_excluded_) {
      for (auto idx : support_) {
        for (int col : band_of(idx - 1)) blocked[col] = true;
      }
    }

    const Eigen::VectorXd corr = matrix_.gains.transpose() * residual;
    int best = -1;
    double best_score = 0;
    for (int i = 0; i < corr.size(); ++i) {
      if (blocked[i]) continue;
      const double score = std::abs(corr[i]) / column_norms_[i];
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  bool in_support(int col) const {
    for (auto idx : support_) {
      if (idx - 1 == col) return true;
    }
    return false;
  }

  double column_coherence(int a, int b) const {
    if (a == b) return 1.0;
    const double dot = matrix_.gains.col(a).dot(matrix_.gains.col(b));
    return std::abs(dot) / (column_norms_[a] * column_norms_[b]);
  }

  // Columns within the coherence band of `col` (excluding col itself),
  // ascending; computed on demand and cached for the lifetime of the solve.
  const std::vector<int>& band_of(int col) {
    auto it = band_cache_.find(col);
    if (it != band_cache_.end()) return it->second;
    std::vector<int> band;
    const Eigen::VectorXd corr = matrix_.gains.transpose() * matrix_.gains.col(col);
    for (int i = 0; i < corr.size(); ++i) {
      if (i == col) continue;
      if (std::abs(corr[i]) / (column_norms_[i] * column_norms_[col]) > config_.band_exclusion) {
        band.push_back(i);
      }
    }
    return band_cache_.emplace(col, std::move(band)).first->second;
  }

  bool try_nnls(const std::vector<scene::GridIndex>& support, Eigen::VectorXd* powers) const {
    try {
      *powers = nnls_dense(gather_columns(matrix_, support), d_, config_.nnls_tolerance);
      return true;
    } catch (const DegenerateSupportError&) {
      return false;
    }
  }

  double residual_norm_of(const std::vector<scene::GridIndex>& support,
                          const Eigen::VectorXd& powers) const {
    if (support.empty()) return d_.norm();
    return (d_ - gather_columns(matrix_, support) * powers).norm();
  }

  // One pass over the support in insertion order; each index may move to the
  // best strictly improving member of its own coherence band that keeps the
  // band-exclusion property against the rest of the support.
  double locally_optimize(double current_norm) {
    for (std::size_t slot = 0; slot < support_.size(); ++slot) {
      const int col = support_[slot] - 1;
      const auto& band = band_of(col);

      int best_col = -1;
      double best_norm = current_norm;
      Eigen::VectorXd best_powers;

      for (int candidate : band) {  // ascending, so equal fits keep the lowest index
        if (in_support(candidate)) continue;
        bool admissible = true;
        for (std::size_t other = 0; other < support_.size(); ++other) {
          if (other == slot) continue;
          if (column_coherence(support_[other] - 1, candidate) > config_.band_exclusion) {
            admissible = false;
            break;
          }
        }
        if (!admissible) continue;

        auto trial = support_;
        trial[slot] = static_cast<scene::GridIndex>(candidate) + 1;
        Eigen::VectorXd trial_powers;
        if (!try_nnls(trial, &trial_powers)) continue;
        const double norm = residual_norm_of(trial, trial_powers);
        if (norm < best_norm) {
          best_norm = norm;
          best_col = candidate;
          best_powers = std::move(trial_powers);
        }
      }

      if (best_col >= 0 && best_norm < current_norm) {
        support_[slot] = static_cast<scene::GridIndex>(best_col) + 1;
        powers_ = std::move(best_powers);
        current_norm = best_norm;
      }
    }
    return current_norm;
  }

  const scene::MeasurementMatrix& matrix_;
  const Eigen::VectorXd& d_;
  const SolverConfig& config_;
  const bool band_excluded_;
  Eigen::VectorXd column_norms_;

  std::vector<scene::GridIndex> support_;
  Eigen::VectorXd powers_;
  std::unordered_set<int> rejected_;
  std::unordered_map<int, std::vector<int>> band_cache_;
};

}  // namespace

Eigen::VectorXd nnls_on_support(const scene::MeasurementMatrix& matrix, const Eigen::VectorXd& d,
                                const std::vector<scene::GridIndex>& support,
                                double dual_tolerance) {
  if (support.empty()) {
    throw DimensionMismatchError("nnls_on_support requires a nonempty support");
  }
  if (d.size() != matrix.sensor_count()) {
    throw DimensionMismatchError("data length does not match the sensor count");
  }
  for (auto idx : support) {
    if (idx < 1 || idx > matrix.candidate_count()) {
      throw DimensionMismatchError("support index " + std::to_string(idx) + " out of range");
    }
  }
  return nnls_dense(gather_columns(matrix, support), d, dual_tolerance);
}

SparseSolution omp_solve(const scene::MeasurementMatrix& matrix, const Eigen::VectorXd& d,
                         const SolverConfig& config) {
  if (d.size() != matrix.sensor_count()) {
    throw DimensionMismatchError("data length does not match the sensor count");
  }
  GreedyPursuit pursuit(matrix, d, config, /*band_excluded=*/false);
  return pursuit.run();
}

SparseSolution bloomp_solve(const scene::MeasurementMatrix& matrix, const Eigen::VectorXd& d,
                            const SolverConfig& config, const scene::CandidateGrid& grid) {
  if (d.size() != matrix.sensor_count()) {
    throw DimensionMismatchError("data length does not match the sensor count");
  }
  if (grid.count() != matrix.candidate_count()) {
    throw DimensionMismatchError("grid size does not match the matrix column count");
  }
  GreedyPursuit pursuit(matrix, d, config, /*band_excluded=*/true);
  return pursuit.run();
}

}  // namespace rssgeo::solver
