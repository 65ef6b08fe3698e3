#include "beatlab/core.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace beatlab {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

SamplingSpec::SamplingSpec(double sample_rate_hz, std::size_t num_samples)
    : rate_(sample_rate_hz), n_(num_samples) {
  require_finite(sample_rate_hz, "sample_rate_hz");
  if (!(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("sample_rate_hz must be positive");
  }
  if (num_samples < 2) {
    throw std::invalid_argument("num_samples must be at least 2");
  }
  if (!std::isfinite(duration_s())) {
    throw std::invalid_argument("record duration is not finite");
  }
}

TimeSeries::TimeSeries(SamplingSpec spec, std::vector<double> samples)
    : spec_(spec), samples_(std::move(samples)) {
  if (samples_.size() != spec_.num_samples()) {
    throw std::invalid_argument("sample count " + std::to_string(samples_.size()) +
                                " does not match spec length " +
                                std::to_string(spec_.num_samples()));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
    }
  }
}

double TimeSeries::mean() const noexcept {
  double acc = 0.0;
  for (double v : samples_) acc += v;
  return acc / static_cast<double>(samples_.size());
}

void validate(const Psd& psd) {
  if (psd.freqs_hz.size() != psd.power.size()) {
    throw std::invalid_argument("psd: frequency and power lengths differ");
  }
  for (std::size_t i = 0; i < psd.freqs_hz.size(); ++i) {
    const double f = psd.freqs_hz[i];
    const double p = psd.power[i];
    if (!std::isfinite(f) || !(f > 0.0)) {
      throw std::invalid_argument("psd: frequencies must be positive and finite");
    }
    if (i > 0 && !(f > psd.freqs_hz[i - 1])) {
      throw std::invalid_argument("psd: frequencies must be strictly increasing");
    }
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("psd: power must be finite and nonnegative");
    }
  }
}

void RandomField::validate() const {
  require_finite(range_lo, "range_lo");
  require_finite(range_hi, "range_hi");
  if (range_lo > range_hi) {
    throw std::invalid_argument("random field range_lo exceeds range_hi");
  }
  if (count == 0) {
    throw std::invalid_argument("random field count must be positive");
  }
}

std::vector<double> RandomField::realize() const {
  return make_uniform_field(seed, range_lo, range_hi, count);
}

std::vector<double> make_uniform_field(std::uint64_t seed, double lo, double hi,
                                       std::size_t count) {
  RandomField{seed, lo, hi, count}.validate();
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = rng.uniform(lo, hi);
  return out;
}

}  // namespace beatlab
