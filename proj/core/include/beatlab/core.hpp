#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace beatlab {

// Base class for every error thrown by the library. Validation problems use
// std::invalid_argument / std::domain_error directly; this type is reserved
// for failures of a numerical procedure (non-convergence, exhausted retries).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument naming `what` unless x is finite.
void require_finite(double x, const char* what);

// Uniform time grid shared by every series in a pipeline.
class SamplingSpec {
 public:
  SamplingSpec(double sample_rate_hz, std::size_t num_samples);

  double sample_rate_hz() const noexcept { return rate_; }
  std::size_t num_samples() const noexcept { return n_; }
  double duration_s() const noexcept { return static_cast<double>(n_) / rate_; }
  double nyquist_hz() const noexcept { return 0.5 * rate_; }
  double dt() const noexcept { return 1.0 / rate_; }
  double time_at(std::size_t i) const noexcept { return static_cast<double>(i) / rate_; }

  bool operator==(const SamplingSpec&) const = default;

 private:
  double rate_;
  std::size_t n_;
};

// Real-valued samples bound to a SamplingSpec. All samples are finite and the
// length always equals spec.num_samples().
class TimeSeries {
 public:
  TimeSeries(SamplingSpec spec, std::vector<double> samples);

  const SamplingSpec& spec() const noexcept { return spec_; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }
  double mean() const noexcept;

  // Moves the sample buffer out; the series is left empty and unusable.
  std::vector<double> release() && { return std::move(samples_); }

 private:
  SamplingSpec spec_;
  std::vector<double> samples_;
};

// One-sided power spectral density. `convention` names the estimator and
// normalization that produced it (see spectral.hpp).
struct Psd {
  std::vector<double> freqs_hz;
  std::vector<double> power;
  std::string convention;

  std::size_t size() const noexcept { return freqs_hz.size(); }
};

// Throws std::invalid_argument unless lengths match, frequencies are positive
// and strictly increasing, and power is finite and nonnegative.
void validate(const Psd& psd);

// Log-log power-law fit over [band_lo_hz, band_hi_hz].
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double band_lo_hz = 0.0;
  double band_hi_hz = 0.0;
  double decades = 0.0;
  int points_used = 0;
  double slope_stderr = 0.0;
};

// Deterministic generator used by every stochastic operation. The engine is
// std::mt19937_64 (fully specified by the standard); the double mapping is
// done here rather than through std::uniform_real_distribution, whose output
// is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01();
  }
  std::uint64_t next() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Parameters of an i.i.d. uniform random field r_i on [range_lo, range_hi].
struct RandomField {
  std::uint64_t seed = 0;
  double range_lo = 0.0;
  double range_hi = 1.0;
  std::size_t count = 1;

  void validate() const;
  std::vector<double> realize() const;
};

// `count` uniform draws on [lo, hi] from a stream seeded with `seed`.
std::vector<double> make_uniform_field(std::uint64_t seed, double lo, double hi,
                                       std::size_t count);

}  // namespace beatlab
