#pragma once

#include <string>
#include <vector>

#include "beatlab/core.hpp"

namespace beatlab::spectral {

enum class Window { Rect, Hann };
enum class Detrend { SubtractMean, None };

const char* to_string(Window w) noexcept;
const char* to_string(Detrend d) noexcept;

struct FitConfig {
  double band_lo_hz = 1e-3;
  double band_hi_hz = 1.0;
  int bins_per_decade = 8;
  Detrend detrend = Detrend::SubtractMean;
  Window window = Window::Hann;

  // Checks the band ordering and that both edges lie in (0, nyquist_hz].
  void validate(double nyquist_hz) const;
};

// Single full-length one-sided periodogram on the grid k fs / M, k = 1..M/2:
//
//   power[k] = 2 / (fs M W) |X_k|^2,   W = mean(w^2)
//
// where X is the DFT of the (optionally mean-removed) series times the
// window w. The Nyquist bin is not treated specially and DC is never
// reported. Requires at least 8 samples.
Psd periodogram(const TimeSeries& x, Window window, Detrend detrend);

// Averages a PSD in logarithmic frequency bins of width 1/bins_per_decade
// decades starting at band_lo_hz; the last bin is closed at band_hi_hz. Each
// populated bin reports the geometric-mean frequency and arithmetic-mean power
// of its members. Throws if fewer than 2 bins are populated.
Psd log_bin(const Psd& psd, int bins_per_decade, double band_lo_hz, double band_hi_hz);

// OLS of log10(power) on log10(freq) over the log-binned PSD in cfg's band.
// Needs at least 5 binned points and strictly positive binned power.
SlopeFit fit_slope(const Psd& psd, const FitConfig& cfg);

struct Verdict {
  bool pink = false;
  std::vector<std::string> failed;  // one entry per violated condition
  std::string rationale;
};

inline constexpr double kPinkSlopeMin = -1.5;
inline constexpr double kPinkSlopeMax = -0.5;
inline constexpr double kPinkMinDecades = 2.0;
inline constexpr double kPinkMinRSquared = 0.8;

// Pink iff slope in [-1.5, -0.5], at least 2 decades fitted, and R^2 >= 0.8.
Verdict pink_verdict(const SlopeFit& fit);

}  // namespace beatlab::spectral
