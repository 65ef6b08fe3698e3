#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "beatlab/demod.hpp"
#include "beatlab/spectral.hpp"
#include "beatlab/synth.hpp"

using namespace beatlab;
using namespace beatlab::demod;

namespace {

TimeSeries series(std::vector<double> v, double rate = 1.0) {
  const std::size_t n = v.size();
  return TimeSeries(SamplingSpec(rate, n), std::move(v));
}

std::vector<double> values(const TimeSeries& x) { return {x.samples().begin(), x.samples().end()}; }

TimeSeries sine(double f, double rate, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(2.0 * std::numbers::pi * f * i / rate);
  return series(std::move(v), rate);
}

TimeSeries small_bank(std::size_t n = 8192) {
  synth::WaveBankConfig c;
  c.field = RandomField{2, 0.0, 30.0, 200};
  c.num_waves = 200;
  return synth::synthesize(c, SamplingSpec(100.0, n));
}

const std::vector<double> kAlt{0.0, 2.0, 0.0, 2.0, 0.0, 2.0};

}  // namespace

TEST(Square, Examples) {
  EXPECT_EQ(values(square(series({0, 0, 0, 0}))), (std::vector<double>{0, 0, 0, 0}));
  EXPECT_EQ(values(square(series({-2, 3}))), (std::vector<double>{4, 9}));
  const auto y = square(sine(1.3, 100.0, 10000));
  EXPECT_NEAR(y.mean(), 0.5, 2.0 / 10000.0);
  EXPECT_EQ(y.spec(), SamplingSpec(100.0, 10000));
}

TEST(ThresholdKeepAboveMean, Examples) {
  EXPECT_EQ(values(threshold_keep_above_mean(series({3, 3, 3}))), (std::vector<double>{3, 3, 3}));
  EXPECT_EQ(values(threshold_keep_above_mean(series(kAlt))), kAlt);
  EXPECT_EQ(values(threshold_keep_above_mean(series({1, 5, 3}))), (std::vector<double>{0, 5, 3}));
}

TEST(BinaryAboveMean, Examples) {
  EXPECT_EQ(values(binary_above_mean(series(kAlt))), (std::vector<double>{0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(values(binary_below_mean(series(kAlt))), (std::vector<double>{1, 0, 1, 0, 1, 0}));
}

TEST(BinaryAboveMean, ComplementIsAllOnes) {
  const auto x = square(small_bank());
  const auto a = binary_above_mean(x);
  const auto b = binary_below_mean(x);
  for (std::size_t i = 0; i < x.size(); ++i) ASSERT_EQ(a[i] + b[i], 1.0);
}

TEST(BinaryAboveMean, ComplementPsdsAgreeAwayFromDc) {
  const auto x = square(small_bank());
  for (auto w : {spectral::Window::Rect, spectral::Window::Hann}) {
    const auto pa = spectral::periodogram(binary_above_mean(x), w, spectral::Detrend::SubtractMean);
    const auto pb = spectral::periodogram(binary_below_mean(x), w, spectral::Detrend::SubtractMean);
    for (std::size_t k = 0; k < pa.size(); ++k) {
      const double scale = std::max(pa.power[k], 1e-300);
      ASSERT_LE(std::abs(pa.power[k] - pb.power[k]) / scale, 1e-10) << "bin " << k;
    }
  }
}

TEST(ThresholdRawAboveMean, Examples) {
  EXPECT_EQ(values(threshold_raw_above_mean(series({4, 4}))), (std::vector<double>{4, 4}));
  const auto x = sine(1.0, 64.0, 64);  // zero mean up to rounding
  const auto y = threshold_raw_above_mean(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= x.mean()) EXPECT_EQ(y[i], x[i]);
    else EXPECT_EQ(y[i], 0.0);
  }
}

TEST(HalfWaveRectify, Examples) {
  EXPECT_EQ(values(half_wave_rectify(series({-1, 2, -3}))), (std::vector<double>{0, 2, 0}));
  const std::vector<double> pos{0.0, 1.5, 2.0};
  EXPECT_EQ(values(half_wave_rectify(series(pos))), pos);
}

TEST(SegmentAggregate, ConstantSeries) {
  const auto x = series(std::vector<double>(1000, 2.5), 100.0);
  for (auto mode : {AggregateMode::Mean, AggregateMode::QuadraticMean}) {
    const auto y = segment_aggregate(x, 10, mode);
    EXPECT_EQ(values(y), std::vector<double>(10, 2.5));
    EXPECT_DOUBLE_EQ(y.spec().sample_rate_hz(), 1.0);
  }
  const auto ms = segment_aggregate(x, 10, AggregateMode::QuadraticMean, QuadraticMode::MeanSquare);
  EXPECT_EQ(values(ms), std::vector<double>(10, 6.25));
}

TEST(SegmentAggregate, RmsAndMeanValues) {
  const auto x = series({3, -3, 1, 1, 9, 9});
  EXPECT_EQ(values(segment_aggregate(x, 3, AggregateMode::Mean)), (std::vector<double>{0, 1, 9}));
  EXPECT_EQ(values(segment_aggregate(x, 3, AggregateMode::QuadraticMean)),
            (std::vector<double>{3, 1, 9}));
}

TEST(SegmentAggregate, TailDroppedAndRateFromSegmentLength) {
  const auto x = series({1, 2, 3, 4, 5, 6, 7}, 7.0);
  const auto y = segment_aggregate(x, 3, AggregateMode::Mean);
  EXPECT_EQ(values(y), (std::vector<double>{1.5, 3.5, 5.5}));
  EXPECT_DOUBLE_EQ(y.spec().sample_rate_hz(), 3.5);
}

TEST(SegmentAggregate, Errors) {
  EXPECT_THROW(segment_aggregate(series({1, 2, 3}), 4, AggregateMode::Mean), std::invalid_argument);
  EXPECT_THROW(segment_aggregate(series({1, 2, 3}), 0, AggregateMode::Mean), std::invalid_argument);
}

TEST(Decimate, Examples) {
  const auto y = decimate(series({1, 2, 3, 4}, 10.0), 2);
  EXPECT_EQ(values(y), (std::vector<double>{1, 3}));
  EXPECT_DOUBLE_EQ(y.spec().sample_rate_hz(), 5.0);
  EXPECT_EQ(decimate(series(std::vector<double>(1000, 1.0)), 2).size(), 500u);
  EXPECT_EQ(values(decimate(series({1, 2, 3, 4, 5}), 2)), (std::vector<double>{1, 3, 5}));
  EXPECT_THROW(decimate(series({1, 2, 3, 4}), 1), std::invalid_argument);
}

TEST(Properties, SquareAfterRectifyOnNonnegativeInput) {
  const auto x = square(small_bank(2048));
  EXPECT_EQ(values(square(half_wave_rectify(x))), values(square(x)));
}

TEST(Properties, KeptIndexSetScaleInvariant) {
  const auto x = square(small_bank(2048));
  std::vector<double> scaled(x.samples().begin(), x.samples().end());
  for (auto& v : scaled) v *= 7.25;
  const auto a = binary_above_mean(x);
  const auto b = binary_above_mean(TimeSeries(x.spec(), scaled));
  EXPECT_EQ(values(a), values(b));
  const auto ta = threshold_keep_above_mean(x);
  const auto tb = threshold_keep_above_mean(TimeSeries(x.spec(), scaled));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(ta[i] == 0.0, tb[i] == 0.0);
}

TEST(Spec, DescribeParseRoundTrip) {
  for (const char* text : {"identity", "square", "threshold_keep_above_mean", "binary_above_mean",
                           "binary_below_mean", "threshold_raw_above_mean", "half_wave_rectify",
                           "segment_rms:1000", "segment_mean_square:20", "segment_mean:40000",
                           "decimate:2"}) {
    EXPECT_EQ(describe(parse_step(text)), text);
  }
  EXPECT_THROW(parse_step("decimate"), std::invalid_argument);
  EXPECT_THROW(parse_step("decimate:1"), std::invalid_argument);
  EXPECT_THROW(parse_step("square:3"), std::invalid_argument);
  EXPECT_THROW(parse_step("wobble"), std::invalid_argument);
}

TEST(Spec, ParametersPresentExactlyWhenNeeded) {
  DemodSpec s{Kind::Square};
  s.factor = 2;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  DemodSpec d{Kind::Decimate};
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(Chain, AppliesInOrder) {
  const auto x = series({-1, 2, -3, 4});
  const std::vector<DemodSpec> chain{parse_step("half_wave_rectify"), parse_step("square"),
                                     parse_step("decimate:2")};
  EXPECT_EQ(values(apply_chain(chain, x)), (std::vector<double>{0, 0}));
  const std::vector<DemodSpec> other{parse_step("square"), parse_step("decimate:2")};
  EXPECT_EQ(values(apply_chain(other, x)), (std::vector<double>{1, 9}));
  EXPECT_EQ(values(apply_chain({}, x)), values(x));
}
