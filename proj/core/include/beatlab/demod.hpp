#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "beatlab/core.hpp"

namespace beatlab::demod {

enum class Kind {
  Identity,
  Square,
  ThresholdKeepAboveMean,
  BinaryAboveMean,
  BinaryBelowMean,
  ThresholdRawAboveMean,
  HalfWaveRectify,
  SegmentQuadraticMean,
  SegmentMean,
  Decimate,
};

// How SegmentQuadraticMean reduces a segment.
enum class QuadraticMode { Rms, MeanSquare };

enum class AggregateMode { Mean, QuadraticMean };

// One step of a demodulation chain. `segments` is used by the segment kinds,
// `factor` by Decimate; both must be zero for every other kind.
struct DemodSpec {
  Kind kind = Kind::Identity;
  std::size_t segments = 0;
  std::size_t factor = 0;
  QuadraticMode quadratic = QuadraticMode::Rms;

  void validate() const;
};

const char* to_string(Kind k) noexcept;
// Textual form used by config files and output headers: "square",
// "segment_rms:40000", "segment_mean_square:40000", "decimate:2", ...
std::string describe(const DemodSpec& spec);
DemodSpec parse_step(const std::string& text);

TimeSeries square(const TimeSeries& x);

// Samples below the mean are zeroed; samples equal to the mean are kept.
TimeSeries threshold_keep_above_mean(const TimeSeries& x);
TimeSeries binary_above_mean(const TimeSeries& x);
TimeSeries binary_below_mean(const TimeSeries& x);
// Same rule as threshold_keep_above_mean, intended for the raw signal.
TimeSeries threshold_raw_above_mean(const TimeSeries& x);
TimeSeries half_wave_rectify(const TimeSeries& x);

// Splits x into `segments` consecutive equal-length segments (tail samples
// that do not fill a segment are dropped) and reduces each one. The output
// rate is fs / segment_length. QuadraticMean uses `quadratic` to choose
// between root-mean-square and mean-of-squares.
TimeSeries segment_aggregate(const TimeSeries& x, std::size_t segments, AggregateMode mode,
                             QuadraticMode quadratic = QuadraticMode::Rms);

// Keeps every factor-th sample starting at index 0, with no anti-alias filter.
TimeSeries decimate(const TimeSeries& x, std::size_t factor);

TimeSeries apply(const DemodSpec& spec, const TimeSeries& x);
TimeSeries apply_chain(std::span<const DemodSpec> chain, const TimeSeries& x);

}  // namespace beatlab::demod
