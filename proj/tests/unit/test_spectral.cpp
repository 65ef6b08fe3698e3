#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "beatlab/spectral.hpp"

using namespace beatlab;
using namespace beatlab::spectral;

namespace {

constexpr double kPi = std::numbers::pi;

TimeSeries make(std::vector<double> v, double rate) {
  const std::size_t n = v.size();
  return TimeSeries(SamplingSpec(rate, n), std::move(v));
}

TimeSeries noise(std::size_t n, std::uint64_t seed, double rate = 1.0) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return make(std::move(v), rate);
}

Psd power_law(double exponent, double lo, double hi, std::size_t n) {
  Psd p;
  p.convention = "exact";
  for (std::size_t i = 1; i <= n; ++i) {
    const double f = lo + (hi - lo) * static_cast<double>(i) / n;
    p.freqs_hz.push_back(f);
    p.power.push_back(std::pow(f, exponent));
  }
  return p;
}

}  // namespace

TEST(Periodogram, MatchesNaiveDft) {
  const auto x = noise(64, 9, 8.0);
  for (auto w : {Window::Rect, Window::Hann}) {
    const auto p = periodogram(x, w, Detrend::SubtractMean);
    const double mean = x.mean();
    std::vector<double> win(64, 1.0);
    if (w == Window::Hann) {
      for (int k = 0; k < 64; ++k) win[k] = 0.5 - 0.5 * std::cos(2.0 * kPi * k / 64.0);
    }
    double wp = 0.0;
    for (double v : win) wp += v * v / 64.0;
    ASSERT_EQ(p.size(), 32u);
    for (int k = 1; k <= 32; ++k) {
      std::complex<double> acc = 0.0;
      for (int t = 0; t < 64; ++t) {
        acc += (x[t] - mean) * win[t] * std::polar(1.0, -2.0 * kPi * k * t / 64.0);
      }
      const double expected = 2.0 / (8.0 * 64.0 * wp) * std::norm(acc);
      EXPECT_NEAR(p.power[k - 1], expected, 1e-12 * std::max(1.0, expected));
      EXPECT_DOUBLE_EQ(p.freqs_hz[k - 1], k * 8.0 / 64.0);
    }
  }
}

TEST(Periodogram, OnBinSinusoidRect) {
  const std::size_t n = 1024;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(2.0 * kPi * 37.0 * i / n);
  const auto p = periodogram(make(v, 1.0), Window::Rect, Detrend::SubtractMean);
  const double peak = p.power[36];
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k != 36) ASSERT_LE(p.power[k], 1e-20 * peak) << k;
  }
}

TEST(Periodogram, Parseval) {
  for (std::size_t n : {1000u, 1001u}) {
    const auto x = noise(n, 4, 50.0);
    const auto p = periodogram(x, Window::Rect, Detrend::SubtractMean);
    double var = 0.0;
    const double m = x.mean();
    for (double v : x.samples()) var += (v - m) * (v - m);
    var /= static_cast<double>(n);
    double sum = 0.0;
    for (double v : p.power) sum += v;
    sum *= 50.0 / static_cast<double>(n);
    // One-sided sum double-counts the Nyquist bin of even lengths.
    if (n % 2 == 0) sum -= 0.5 * p.power.back() * 50.0 / static_cast<double>(n);
    EXPECT_NEAR(sum / var, 1.0, 1e-10);
  }
}

TEST(Periodogram, WhiteNoiseIsFlat) {
  const auto x = noise(1 << 16, 21, 100.0);
  FitConfig cfg;
  cfg.band_lo_hz = 0.5;
  cfg.band_hi_hz = 50.0;
  cfg.window = Window::Rect;
  const auto fit = fit_slope(periodogram(x, cfg.window, cfg.detrend), cfg);
  EXPECT_NEAR(fit.slope, 0.0, 0.1);
  EXPECT_NEAR(fit.decades, 2.0, 1e-12);
}

TEST(Periodogram, ScaleEquivariance) {
  const auto x = noise(4096, 5, 10.0);
  std::vector<double> v(x.samples().begin(), x.samples().end());
  for (auto& s : v) s *= 3.0;
  const auto y = make(v, 10.0);
  const auto px = periodogram(x, Window::Hann, Detrend::SubtractMean);
  const auto py = periodogram(y, Window::Hann, Detrend::SubtractMean);
  for (std::size_t k = 0; k < px.size(); ++k) EXPECT_NEAR(py.power[k], 9.0 * px.power[k], 1e-12 * py.power[k]);
  FitConfig cfg;
  cfg.band_lo_hz = 0.01;
  cfg.band_hi_hz = 5.0;
  EXPECT_NEAR(fit_slope(px, cfg).slope, fit_slope(py, cfg).slope, 1e-12);
}

TEST(Periodogram, CircularShiftInvariance) {
  const auto x = noise(2000, 6, 1.0);
  std::vector<double> v(x.samples().begin(), x.samples().end());
  std::rotate(v.begin(), v.begin() + 517, v.end());
  const auto a = periodogram(x, Window::Rect, Detrend::None);
  const auto b = periodogram(make(v, 1.0), Window::Rect, Detrend::None);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a.power[k], b.power[k], 1e-10 * a.power[k]);
}

TEST(Periodogram, RejectsShortSeries) {
  EXPECT_THROW(periodogram(make({1, 2, 3, 4, 5, 6, 7}, 1.0), Window::Rect, Detrend::None),
               std::invalid_argument);
}

TEST(Periodogram, ConventionTagNamesEstimator) {
  const auto p = periodogram(noise(16, 1), Window::Hann, Detrend::SubtractMean);
  EXPECT_NE(p.convention.find("hann"), std::string::npos);
  EXPECT_NE(p.convention.find("subtract_mean"), std::string::npos);
}

TEST(LogBin, LogSpacedInputUnchanged) {
  Psd p;
  const double width = 1.0 / 8.0;
  for (int j = 0; j < 24; ++j) {
    p.freqs_hz.push_back(std::pow(10.0, (j + 0.5) * width));
    p.power.push_back(1.0 + j);
  }
  const auto b = log_bin(p, 8, 1.0, 1000.0);
  ASSERT_EQ(b.size(), 24u);
  for (std::size_t i = 0; i < 24; ++i) {
    EXPECT_NEAR(b.freqs_hz[i] / p.freqs_hz[i], 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(b.power[i], p.power[i]);
  }
}

TEST(LogBin, BinCountBounded) {
  const auto p = power_law(-1.0, 0.0, 10000.0, 100000);
  const auto b = log_bin(p, 8, 1.0, 10000.0);
  EXPECT_LE(b.size(), 32u);
  EXPECT_GE(b.size(), 30u);
}

TEST(LogBin, DropsEmptyBins) {
  Psd p{{1.0, 1.01, 500.0}, {1.0, 1.0, 1.0}, "t"};
  EXPECT_EQ(log_bin(p, 8, 1.0, 1000.0).size(), 2u);
  Psd one{{1.0, 1.01}, {1.0, 1.0}, "t"};
  EXPECT_THROW(log_bin(one, 8, 1.0, 1000.0), std::invalid_argument);
}

TEST(LogBin, PowerLawClosure) {
  // Geometric-mean frequencies keep an exact power law on the same exponent
  // when each bin is a single point or a log-symmetric set of points.
  Psd p;
  p.convention = "exact";
  for (int j = 0; j < 4 * 8 * 5; ++j) {
    const double f = std::pow(10.0, (j + 0.5) / 40.0);
    p.freqs_hz.push_back(f);
    p.power.push_back(1.0 / f);
  }
  FitConfig cfg;
  cfg.band_lo_hz = 1.0;
  cfg.band_hi_hz = 1e4;
  cfg.bins_per_decade = 40;
  EXPECT_NEAR(fit_slope(p, cfg).slope, -1.0, 1e-6);
}

TEST(FitSlope, ExactPowerLaws) {
  for (double e : {-1.0, -1.5}) {
    Psd p;
    p.convention = "exact";
    for (int j = 0; j < 32; ++j) {
      const double f = std::pow(10.0, (j + 0.5) / 8.0);
      p.freqs_hz.push_back(f);
      p.power.push_back(std::pow(f, e));
    }
    FitConfig cfg;
    cfg.band_lo_hz = 1.0;
    cfg.band_hi_hz = 1e4;
    const auto fit = fit_slope(p, cfg);
    EXPECT_NEAR(fit.slope, e, 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_NEAR(fit.decades, 4.0, 1e-12);
    EXPECT_EQ(fit.points_used, 32);
    EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-9);
  }
}

TEST(FitSlope, DenseLinearGridPowerLaw) {
  const auto p = power_law(-1.0, 0.0, 100.0, 200000);
  FitConfig cfg;
  cfg.band_lo_hz = 0.01;
  cfg.band_hi_hz = 100.0;
  EXPECT_NEAR(fit_slope(p, cfg).slope, -1.0, 2e-3);
}

TEST(FitSlope, Errors) {
  Psd p{{1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}, "t"};
  FitConfig cfg;
  cfg.band_lo_hz = 1.0;
  cfg.band_hi_hz = 3.0;
  EXPECT_THROW(fit_slope(p, cfg), std::invalid_argument);
  auto z = power_law(-1.0, 0.0, 100.0, 1000);
  for (std::size_t i = 0; i < 20; ++i) z.power[i] = 0.0;
  cfg.band_lo_hz = 0.1;
  cfg.band_hi_hz = 100.0;
  EXPECT_THROW(fit_slope(z, cfg), std::invalid_argument);
}

TEST(FitConfig, Validate) {
  FitConfig cfg;
  cfg.band_hi_hz = 60.0;
  EXPECT_THROW(cfg.validate(50.0), std::invalid_argument);
  cfg.band_hi_hz = 50.0;
  EXPECT_NO_THROW(cfg.validate(50.0));
  cfg.band_lo_hz = 60.0;
  EXPECT_THROW(cfg.validate(100.0), std::invalid_argument);
}

TEST(PinkVerdict, Examples) {
  SlopeFit good;
  good.slope = -1.0;
  good.decades = 4.0;
  good.r_squared = 0.95;
  EXPECT_TRUE(pink_verdict(good).pink);
  EXPECT_TRUE(pink_verdict(good).failed.empty());

  auto positive = good;
  positive.slope = 0.8;
  const auto v = pink_verdict(positive);
  EXPECT_FALSE(v.pink);
  EXPECT_EQ(v.failed, std::vector<std::string>{"slope"});

  auto narrow = good;
  narrow.decades = 1.0;
  EXPECT_EQ(pink_verdict(narrow).failed, std::vector<std::string>{"decades"});

  auto noisy = good;
  noisy.r_squared = 0.5;
  noisy.slope = -2.0;
  const auto n = pink_verdict(noisy);
  EXPECT_EQ(n.failed, (std::vector<std::string>{"slope", "r_squared"}));
  EXPECT_NE(n.rationale.find("R^2"), std::string::npos);
}

TEST(PinkVerdict, EdgesInclusive) {
  SlopeFit f;
  f.decades = 2.0;
  f.r_squared = 0.8;
  f.slope = -1.5;
  EXPECT_TRUE(pink_verdict(f).pink);
  f.slope = -0.5;
  EXPECT_TRUE(pink_verdict(f).pink);
}
