#pragma once

#include <vector>

namespace rssgeo::ingest {

/// Raw RSS samples from one sensor.
struct RssSampleStream {
  int sensor_id = 0;
  double sample_rate_hz = 0;    // > 0
  std::vector<double> samples;  // linear power, >= 0
};

/// First-order low-pass smoother for fast-fading removal.
struct FadingFilterParams {
  double passband_ripple_db = 0.5;  // Chebyshev type I passband ripple
  double cutoff_fraction = 0.01;    // passband edge as a fraction of the sample rate
  bool use_median = false;          // reduce the filtered tail by median instead of mean
};

/// Realized recursion y[k] = a * y[k-1] + b * x[k] with unit DC gain.
struct FilterCoefficients {
  double a = 0;
  double b = 1;
  int transient_samples = 0;  // five time constants, rounded up

  /// |H(e^(i 2 pi f / fs))| for a frequency given as a fraction of fs.
  double magnitude_response(double frequency_fraction) const;
};

/// Distance / RSS pair feeding the pathloss regression.
struct RssPoint {
  double distance_m = 0;
  double rss = 0;  // linear power, > 0
};

/// Log-distance regression result.
struct PathlossFit {
  double exponent = 0;        // n_hat
  double sigma_db = 0;        // residual standard deviation (dB), divisor count - 2
  double reference_power = 0; // k_hat: modeled linear power at the reference distance
  int point_count = 0;
};

/// Order-1 Chebyshev type I low-pass realized as a single digital pole
/// (matched-z), normalized to unit DC gain.
FilterCoefficients design_fading_filter(const FadingFilterParams& params);

/// Filters the stream and reduces it to one representative RSS value:
/// mean (or median) of the filtered samples after the transient is dropped.
/// Throws EmptyStreamError on an empty stream.
double remove_fast_fading(const RssSampleStream& stream, const FadingFilterParams& params = {});

/// Applies the designed filter to a sample buffer (zero initial state).
std::vector<double> apply_fading_filter(const std::vector<double>& samples,
                                        const FilterCoefficients& coefficients);

/// Divides every RSS value by the value at the minimum-distance sensor.
/// Throws NonpositiveRssError unless all RSS values are positive.
std::vector<double> normalize_rss(const std::vector<double>& rss_values,
                                  const std::vector<double>& distances_m);

/// Ordinary least squares of 10*log10(rss) against log10(distance / r0):
/// slope -10 n and intercept 10*log10(k).  Requires >= 2 distinct distances.
PathlossFit fit_pathloss(const std::vector<RssPoint>& points, double reference_distance_m = 1.0);

}  // namespace rssgeo::ingest
