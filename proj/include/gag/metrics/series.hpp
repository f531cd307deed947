#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "gag/core/types.hpp"

namespace gag {

// Periodicity strength of a time series, in dB:
//   SNR = 10 log10( P_peak / mean(P_other) )
// over the one-sided power spectrum (zero frequency excluded, series
// mean-centered first). A pure tone with no noise yields +infinity.
inline double snr_periodicity(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 8) throw Error("snr_periodicity needs at least 8 samples");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  bool constant = true;
  for (double v : series)
    if (v != series[0]) {
      constant = false;
      break;
    }
  if (constant) throw DegenerateSeries("constant series has no spectrum");

  const std::size_t bins = n / 2;
  std::vector<double> power(bins, 0.0);
  for (std::size_t f = 1; f <= bins; ++f) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(f) * static_cast<double>(t) /
                           static_cast<double>(n);
      const double x = series[t] - mean;
      re += x * std::cos(angle);
      im += x * std::sin(angle);
    }
    power[f - 1] = re * re + im * im;
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < bins; ++i)
    if (power[i] > power[peak]) peak = i;
  double rest = 0.0;
  for (std::size_t i = 0; i < bins; ++i)
    if (i != peak) rest += power[i];
  if (bins <= 1) throw DegenerateSeries("spectrum has a single bin");
  rest /= static_cast<double>(bins - 1);
  if (rest <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(power[peak] / rest);
}

}  // namespace gag
