#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "beatlab/analytic.hpp"
#include "beatlab/core.hpp"

namespace beatlab::synth {

enum class Mechanism { Exponential, Power, Resonance, IrCascade, TwoWave };
enum class PhaseMode { Zero, UniformRandom };

const char* to_string(Mechanism m) noexcept;
const char* to_string(PhaseMode m) noexcept;

// Energy-shift bounds of the IR cascade; shifts are log-uniform on [lo, hi].
struct ShiftRange {
  double lo = 1e-3;
  double hi = 2.0;
};

// Superposition of `num_waves` unit sinusoids whose frequencies are set by
// the mechanism from the random field r_i:
//
//   Exponential  f_i = w (1 + c e^{-r_i})
//   Power        f_i = w (1 + c r_i^{-alpha})
//   Resonance    f_i = resonance_inverse(r_i)
//   IrCascade    f_i = w - s_i,  s_i log-uniform on the shift range
//   TwoWave      f = w +- lambda_split (field unused)
//
// With several fiducials, waves are split into contiguous equal blocks, wave
// i using fiducial_hz[i * K / num_waves].
struct WaveBankConfig {
  Mechanism mechanism = Mechanism::Exponential;
  std::vector<double> fiducial_hz{10.0};
  double mixing = 0.2;
  std::optional<double> alpha;
  std::optional<analytic::ResonanceParams> resonance;
  std::optional<ShiftRange> cascade;
  std::optional<double> lambda_split;
  RandomField field{1, 0.0, 30.0, 1000};
  PhaseMode phase_mode = PhaseMode::Zero;
  std::size_t num_waves = 1000;

  void validate() const;
};

// Frequencies and phases of a realized bank.
struct WaveBank {
  std::vector<double> freqs_hz;
  std::vector<double> phases;
};

// Lower clamp applied to power-mechanism draws so r_i^{-alpha} stays bounded.
inline constexpr double kPowerDrawFloor = 1e-3;
// Drawn frequencies above this fraction of Nyquist are rejected and redrawn.
inline constexpr double kAliasGuardFraction = 0.9;
// Redraw budget per wave before giving up.
inline constexpr int kMaxRedraws = 10000;

// Draws the bank frequencies and phases for cfg. Draw order: every r_i (with
// in-place redraws) first, then every theta_i on [0, 2 pi) when phase_mode is
// UniformRandom, all from one stream seeded with cfg.field.seed.
WaveBank draw_bank(const WaveBankConfig& cfg, const SamplingSpec& spec);

// sum_i sin(2 pi f_i t + theta_i) on the grid of spec. Samples accumulate in
// wave index order, so the result is bit-reproducible for a given build.
TimeSeries sum_of_sinusoids(std::span<const double> freqs_hz, std::span<const double> phases,
                            const SamplingSpec& spec);

TimeSeries synth_exponential(const WaveBankConfig& cfg, const SamplingSpec& spec);
TimeSeries synth_power(const WaveBankConfig& cfg, const SamplingSpec& spec);
TimeSeries synth_resonance(const WaveBankConfig& cfg, const SamplingSpec& spec);
TimeSeries synth_ir_cascade(const WaveBankConfig& cfg, const SamplingSpec& spec,
                            double shift_lo, double shift_hi);

// sin(2 pi (w + l) t) + sin(2 pi (w - l) t) = 2 cos(2 pi l t) sin(2 pi w t).
// Requires omega >= 10 lambda_split > 0.
TimeSeries synth_two_wave(double omega, double lambda_split, const SamplingSpec& spec);

// Dispatches on cfg.mechanism.
TimeSeries synthesize(const WaveBankConfig& cfg, const SamplingSpec& spec);

}  // namespace beatlab::synth
