#include "rssgeo/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rssgeo/errors.hpp"

namespace rssgeo::ingest {

double FilterCoefficients::magnitude_response(double frequency_fraction) const {
  const double w = 2.0 * std::numbers::pi * frequency_fraction;
  return b / std::sqrt(1.0 - 2.0 * a * std::cos(w) + a * a);
}

FilterCoefficients design_fading_filter(const FadingFilterParams& params) {
  if (!(params.passband_ripple_db > 0)) {
    throw Error("passband ripple must be positive");
  }
  if (!(params.cutoff_fraction > 0) || !(params.cutoff_fraction < 0.5)) {
    throw Error("cutoff fraction must lie in (0, 0.5)");
  }
  // Order-1 Chebyshev type I prototype: |H(jw)|^2 = 1 / (1 + eps^2 (w/wp)^2),
  // a single analog pole at -wp/eps.  Matched-z maps it to a digital pole,
  // and b = 1 - a restores unit DC gain.
  const double eps = std::sqrt(std::pow(10.0, params.passband_ripple_db / 10.0) - 1.0);
  const double pole_rate = 2.0 * std::numbers::pi * params.cutoff_fraction / eps;

  FilterCoefficients c;
  c.a = std::exp(-pole_rate);
  c.b = 1.0 - c.a;
  const double time_constant = 1.0 / pole_rate;  // samples
  c.transient_samples = static_cast<int>(std::ceil(5.0 * time_constant));
  return c;
}

std::vector<double> apply_fading_filter(const std::vector<double>& samples,
                                        const FilterCoefficients& coefficients) {
  std::vector<double> out(samples.size());
  double state = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    state = coefficients.a * state + coefficients.b * samples[k];
    out[k] = state;
  }
  return out;
}

double remove_fast_fading(const RssSampleStream& stream, const FadingFilterParams& params) {
  if (stream.samples.empty()) {
    throw EmptyStreamError("sensor " + std::to_string(stream.sensor_id) + ": no samples");
  }
  if (!(stream.sample_rate_hz > 0)) {
    throw Error("sample rate must be positive");
  }
  const FilterCoefficients coeffs = design_fading_filter(params);
  std::vector<double> filtered = apply_fading_filter(stream.samples, coeffs);

  // Keep at least one sample even when the stream is shorter than the transient.
  const std::size_t discard =
      std::min(static_cast<std::size_t>(coeffs.transient_samples), filtered.size() - 1);
  const std::size_t tail = filtered.size() - discard;

  if (params.use_median) {
    std::vector<double> window(filtered.begin() + static_cast<std::ptrdiff_t>(discard),
                               filtered.end());
    std::sort(window.begin(), window.end());
    const std::size_t mid = window.size() / 2;
    return window.size() % 2 == 1 ? window[mid] : 0.5 * (window[mid - 1] + window[mid]);
  }
  double sum = 0;
  for (std::size_t k = discard; k < filtered.size(); ++k) sum += filtered[k];
  return sum / static_cast<double>(tail);
}

std::vector<double> normalize_rss(const std::vector<double>& rss_values,
                                  const std::vector<double>& distances_m) {
  if (rss_values.empty() || rss_values.size() != distances_m.size()) {
    throw DimensionMismatchError("rss and distance lists must be nonempty and equal length");
  }
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < rss_values.size(); ++i) {
    if (!(rss_values[i] > 0)) {
      throw NonpositiveRssError("rss value " + std::to_string(i) + " is not positive");
    }
    if (distances_m[i] < distances_m[nearest]) nearest = i;
  }
  std::vector<double> out(rss_values.size());
  const double ref = rss_values[nearest];
  for (std::size_t i = 0; i < rss_values.size(); ++i) out[i] = rss_values[i] / ref;
  return out;
}

PathlossFit fit_pathloss(const std::vector<RssPoint>& points, double reference_distance_m) {
  if (points.size() < 2) {
    throw InsufficientPointsError("pathloss fit needs at least two points");
  }
  if (!(reference_distance_m > 0)) {
    throw Error("reference distance must be positive");
  }

  const auto n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : points) {
    if (!(p.rss > 0)) {
      throw NonpositiveRssError("pathloss fit requires positive rss values");
    }
    if (!(p.distance_m > 0)) {
      throw Error("pathloss fit requires positive distances");
    }
    const double x = std::log10(p.distance_m / reference_distance_m);
    const double y = 10.0 * std::log10(p.rss);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }

  const double det = n * sxx - sx * sx;
  // All distances equal makes the slope undetermined.
  if (std::abs(det) < 1e-12 * std::max(1.0, n * sxx)) {
    throw CollinearDegenerateError("all distances coincide; exponent is undetermined");
  }
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;

  PathlossFit fit;
  fit.exponent = -slope / 10.0;
  fit.reference_power = std::pow(10.0, intercept / 10.0);
  fit.point_count = static_cast<int>(points.size());

  if (points.size() == 2) {
    fit.sigma_db = 0.0;  // exact interpolation, no residual degrees of freedom
    return fit;
  }
  double ss_residual = 0;
  for (const auto& p : points) {
    const double x = std::log10(p.distance_m / reference_distance_m);
    const double y = 10.0 * std::log10(p.rss);
    const double e = y - (intercept + slope * x);
    ss_residual += e * e;
  }
  fit.sigma_db = std::sqrt(ss_residual / (n - 2.0));
  return fit;
}

}  // namespace rssgeo::ingest
