#include "beatlab/demod.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace beatlab::demod {

namespace {

template <class F>
TimeSeries map_samples(const TimeSeries& x, F&& f) {
  std::vector<double> out(x.size());
  const auto in = x.samples();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
  return TimeSeries(x.spec(), std::move(out));
}

bool is_segment(Kind k) { return k == Kind::SegmentQuadraticMean || k == Kind::SegmentMean; }

std::size_t parse_count(const std::string& text, const std::string& step) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("demod step '" + step + "': bad integer '" + text + "'");
  }
  return v;
}

}  // namespace

const char* to_string(Kind k) noexcept {
  switch (k) {
    case Kind::Identity: return "identity";
    case Kind::Square: return "square";
    case Kind::ThresholdKeepAboveMean: return "threshold_keep_above_mean";
    case Kind::BinaryAboveMean: return "binary_above_mean";
    case Kind::BinaryBelowMean: return "binary_below_mean";
    case Kind::ThresholdRawAboveMean: return "threshold_raw_above_mean";
    case Kind::HalfWaveRectify: return "half_wave_rectify";
    case Kind::SegmentQuadraticMean: return "segment_quadratic_mean";
    case Kind::SegmentMean: return "segment_mean";
    case Kind::Decimate: return "decimate";
  }
  return "unknown";
}

void DemodSpec::validate() const {
  if (is_segment(kind)) {
    if (segments < 2) throw std::invalid_argument("segment demod needs at least 2 segments");
  } else if (segments != 0) {
    throw std::invalid_argument(std::string("segments is not a parameter of ") + to_string(kind));
  }
  if (kind == Kind::Decimate) {
    if (factor < 2) throw std::invalid_argument("decimate factor must be at least 2");
  } else if (factor != 0) {
    throw std::invalid_argument(std::string("factor is not a parameter of ") + to_string(kind));
  }
}

std::string describe(const DemodSpec& spec) {
  switch (spec.kind) {
    case Kind::SegmentQuadraticMean:
      return (spec.quadratic == QuadraticMode::Rms ? "segment_rms:" : "segment_mean_square:") +
             std::to_string(spec.segments);
    case Kind::SegmentMean: return "segment_mean:" + std::to_string(spec.segments);
    case Kind::Decimate: return "decimate:" + std::to_string(spec.factor);
    default: return to_string(spec.kind);
  }
}

DemodSpec parse_step(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  DemodSpec spec;
  if (name == "segment_rms" || name == "segment_quadratic_mean") {
    spec.kind = Kind::SegmentQuadraticMean;
    spec.segments = parse_count(arg, text);
  } else if (name == "segment_mean_square") {
    spec.kind = Kind::SegmentQuadraticMean;
    spec.quadratic = QuadraticMode::MeanSquare;
    spec.segments = parse_count(arg, text);
  } else if (name == "segment_mean") {
    spec.kind = Kind::SegmentMean;
    spec.segments = parse_count(arg, text);
  } else if (name == "decimate") {
    spec.kind = Kind::Decimate;
    spec.factor = parse_count(arg, text);
  } else {
    static constexpr Kind kPlain[] = {Kind::Identity,
                                      Kind::Square,
                                      Kind::ThresholdKeepAboveMean,
                                      Kind::BinaryAboveMean,
                                      Kind::BinaryBelowMean,
                                      Kind::ThresholdRawAboveMean,
                                      Kind::HalfWaveRectify};
    bool found = false;
    for (Kind k : kPlain) {
      if (name == to_string(k)) {
        spec.kind = k;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown demod step '" + text + "'");
    if (!arg.empty()) throw std::invalid_argument("demod step '" + name + "' takes no argument");
  }
  spec.validate();
  return spec;
}

TimeSeries square(const TimeSeries& x) {
  return map_samples(x, [](double v) { return v * v; });
}

TimeSeries threshold_keep_above_mean(const TimeSeries& x) {
  const double m = x.mean();
  return map_samples(x, [m](double v) { return v >= m ? v : 0.0; });
}

TimeSeries binary_above_mean(const TimeSeries& x) {
  const double m = x.mean();
  return map_samples(x, [m](double v) { return v >= m ? 1.0 : 0.0; });
}

TimeSeries binary_below_mean(const TimeSeries& x) {
  const double m = x.mean();
  return map_samples(x, [m](double v) { return v >= m ? 0.0 : 1.0; });
}

TimeSeries threshold_raw_above_mean(const TimeSeries& x) { return threshold_keep_above_mean(x); }

TimeSeries half_wave_rectify(const TimeSeries& x) {
  return map_samples(x, [](double v) { return v > 0.0 ? v : 0.0; });
}

TimeSeries segment_aggregate(const TimeSeries& x, std::size_t segments, AggregateMode mode,
                             QuadraticMode quadratic) {
  if (segments < 2) throw std::invalid_argument("segment_aggregate needs at least 2 segments");
  if (segments > x.size()) {
    throw std::invalid_argument("segment_aggregate: " + std::to_string(segments) +
                                " segments exceed " + std::to_string(x.size()) + " samples");
  }
  const std::size_t len = x.size() / segments;
  const auto in = x.samples();
  std::vector<double> out(segments);
  for (std::size_t s = 0; s < segments; ++s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      const double v = in[s * len + k];
      acc += mode == AggregateMode::Mean ? v : v * v;
    }
    const double m = acc / static_cast<double>(len);
    if (mode == AggregateMode::Mean || quadratic == QuadraticMode::MeanSquare) {
      out[s] = m;
    } else {
      out[s] = std::sqrt(m);
    }
  }
  const SamplingSpec spec(x.spec().sample_rate_hz() / static_cast<double>(len), segments);
  return TimeSeries(spec, std::move(out));
}

TimeSeries decimate(const TimeSeries& x, std::size_t factor) {
  if (factor < 2) throw std::invalid_argument("decimate factor must be at least 2");
  const std::size_t n = (x.size() + factor - 1) / factor;
  if (n < 2) throw std::invalid_argument("decimate would leave fewer than 2 samples");
  const auto in = x.samples();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i * factor];
  const SamplingSpec spec(x.spec().sample_rate_hz() / static_cast<double>(factor), n);
  return TimeSeries(spec, std::move(out));
}

TimeSeries apply(const DemodSpec& spec, const TimeSeries& x) {
  spec.validate();
  switch (spec.kind) {
    case Kind::Identity: return x;
    case Kind::Square: return square(x);
    case Kind::ThresholdKeepAboveMean: return threshold_keep_above_mean(x);
    case Kind::BinaryAboveMean: return binary_above_mean(x);
    case Kind::BinaryBelowMean: return binary_below_mean(x);
    case Kind::ThresholdRawAboveMean: return threshold_raw_above_mean(x);
    case Kind::HalfWaveRectify: return half_wave_rectify(x);
    case Kind::SegmentQuadraticMean:
      return segment_aggregate(x, spec.segments, AggregateMode::QuadraticMean, spec.quadratic);
    case Kind::SegmentMean: return segment_aggregate(x, spec.segments, AggregateMode::Mean);
    case Kind::Decimate: return decimate(x, spec.factor);
  }
  throw std::invalid_argument("unknown demod kind");
}

TimeSeries apply_chain(std::span<const DemodSpec> chain, const TimeSeries& x) {
  TimeSeries cur = x;
  for (const auto& step : chain) cur = apply(step, cur);
  return cur;
}

}  // namespace beatlab::demod
