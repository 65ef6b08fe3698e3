#include "beatlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace beatlab::synth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kBlock = 128;

std::string name_of(Mechanism m) { return to_string(m); }

void require_mechanism(const WaveBankConfig& cfg, Mechanism expected) {
  if (cfg.mechanism != expected) {
    throw std::invalid_argument("wave bank mechanism is " + name_of(cfg.mechanism) +
                                ", expected " + name_of(expected));
  }
}

double fiducial_for(const WaveBankConfig& cfg, std::size_t i) {
  const std::size_t k = cfg.fiducial_hz.size();
  return cfg.fiducial_hz[i * k / cfg.num_waves];
}

double max_fiducial(const WaveBankConfig& cfg) {
  return *std::max_element(cfg.fiducial_hz.begin(), cfg.fiducial_hz.end());
}

double min_fiducial(const WaveBankConfig& cfg) {
  return *std::min_element(cfg.fiducial_hz.begin(), cfg.fiducial_hz.end());
}

// Draws one frequency per wave via `freq(rng, i)`, redrawing anything outside
// (0, guard]. Returns the frequencies in wave order.
template <class Draw>
std::vector<double> draw_guarded(Rng& rng, std::size_t n, double guard, Draw&& freq) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    int tries = 0;
    double f = freq(rng, i);
    while (!(f > 0.0 && f <= guard)) {
      if (++tries > kMaxRedraws) {
        throw NumericalError("wave " + std::to_string(i) +
                             ": no draw produced a frequency below the alias guard " +
                             std::to_string(guard) + " Hz");
      }
      f = freq(rng, i);
    }
    out[i] = f;
  }
  return out;
}

double phase_of_cycles(double cycles) { return kTwoPi * (cycles - std::floor(cycles)); }

}  // namespace

const char* to_string(Mechanism m) noexcept {
  switch (m) {
    case Mechanism::Exponential: return "exponential";
    case Mechanism::Power: return "power";
    case Mechanism::Resonance: return "resonance";
    case Mechanism::IrCascade: return "ir_cascade";
    case Mechanism::TwoWave: return "two_wave";
  }
  return "unknown";
}

const char* to_string(PhaseMode m) noexcept {
  return m == PhaseMode::Zero ? "zero" : "uniform_random";
}

void WaveBankConfig::validate() const {
  field.validate();
  if (num_waves == 0) throw std::invalid_argument("num_waves must be positive");
  if (num_waves != field.count) {
    throw std::invalid_argument("num_waves (" + std::to_string(num_waves) +
                                ") must equal field.count (" + std::to_string(field.count) +
                                ")");
  }
  if (fiducial_hz.empty()) throw std::invalid_argument("fiducial_hz must not be empty");
  for (double f : fiducial_hz) {
    require_finite(f, "fiducial_hz");
    if (!(f > 0.0)) throw std::invalid_argument("fiducial_hz must be positive");
  }
  require_finite(mixing, "mixing");

  const bool is_power = mechanism == Mechanism::Power;
  const bool is_res = mechanism == Mechanism::Resonance;
  const bool is_ir = mechanism == Mechanism::IrCascade;
  const bool is_two = mechanism == Mechanism::TwoWave;
  if (alpha.has_value() != is_power) {
    throw std::invalid_argument(is_power ? "power mechanism requires alpha"
                                         : "alpha is only valid for the power mechanism");
  }
  if (resonance.has_value() != is_res) {
    throw std::invalid_argument(is_res ? "resonance mechanism requires resonance parameters"
                                       : "resonance parameters only valid for resonance");
  }
  if (cascade.has_value() != is_ir) {
    throw std::invalid_argument(is_ir ? "ir_cascade mechanism requires a shift range"
                                      : "shift range is only valid for ir_cascade");
  }
  if (lambda_split.has_value() != is_two) {
    throw std::invalid_argument(is_two ? "two_wave mechanism requires lambda_split"
                                       : "lambda_split is only valid for two_wave");
  }
  if (fiducial_hz.size() > 1 && !(mechanism == Mechanism::Exponential || is_power)) {
    throw std::invalid_argument("multiple fiducials are only supported for exponential and power");
  }
  if (is_power) {
    require_finite(*alpha, "alpha");
    if (*alpha == 0.0) throw std::invalid_argument("alpha must be nonzero");
    if (field.range_hi < kPowerDrawFloor) {
      throw std::invalid_argument("power mechanism needs range_hi >= 1e-3 (r_i must be positive)");
    }
  }
  if (mechanism == Mechanism::Exponential && !(mixing > -1.0)) {
    throw std::invalid_argument("mixing must exceed -1 so every frequency stays positive");
  }
  if (is_res) {
    resonance->validate();
    if (fiducial_hz.size() != 1 || fiducial_hz.front() != resonance->omega0) {
      throw std::invalid_argument("resonance fiducial_hz must equal resonance.omega0");
    }
  }
  if (is_ir) {
    require_finite(cascade->lo, "shift_lo");
    require_finite(cascade->hi, "shift_hi");
    if (!(cascade->lo > 0.0) || cascade->lo > cascade->hi ||
        !(cascade->hi < fiducial_hz.front())) {
      throw std::invalid_argument("ir_cascade shifts must satisfy 0 < shift_lo <= shift_hi < fiducial");
    }
  }
  if (is_two) {
    require_finite(*lambda_split, "lambda_split");
    if (!(*lambda_split > 0.0) || fiducial_hz.front() < 10.0 * *lambda_split) {
      throw std::invalid_argument("two_wave requires fiducial >= 10 * lambda_split > 0");
    }
  }
}

WaveBank draw_bank(const WaveBankConfig& cfg, const SamplingSpec& spec) {
  cfg.validate();
  const std::size_t n = cfg.num_waves;
  const double nyquist = spec.nyquist_hz();
  const double guard = kAliasGuardFraction * nyquist;
  Rng rng(cfg.field.seed);
  WaveBank bank;

  switch (cfg.mechanism) {
    case Mechanism::Exponential: {
      const double top = max_fiducial(cfg) * (1.0 + std::abs(cfg.mixing));
      if (nyquist < top) {
        throw std::invalid_argument("Nyquist " + std::to_string(nyquist) +
                                    " Hz is below the highest bank frequency " +
                                    std::to_string(top) + " Hz");
      }
      bank.freqs_hz.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double r = rng.uniform(cfg.field.range_lo, cfg.field.range_hi);
        bank.freqs_hz[i] = fiducial_for(cfg, i) * (1.0 + cfg.mixing * std::exp(-r));
      }
      break;
    }
    case Mechanism::Power: {
      if (min_fiducial(cfg) > guard) {
        throw std::invalid_argument("fiducial frequency exceeds the alias guard of the sampling grid");
      }
      const double lo = std::max(cfg.field.range_lo, kPowerDrawFloor);
      const double hi = cfg.field.range_hi;
      const double a = *cfg.alpha;
      bank.freqs_hz = draw_guarded(rng, n, guard, [&](Rng& g, std::size_t i) {
        const double r = g.uniform(lo, hi);
        return fiducial_for(cfg, i) * (1.0 + cfg.mixing * std::pow(r, -a));
      });
      break;
    }
    case Mechanism::Resonance: {
      const auto& rp = *cfg.resonance;
      if (cfg.field.range_hi <= 0.0) {
        throw std::invalid_argument("resonance field range has no positive values to invert");
      }
      if (rp.omega0 > guard) {
        throw std::invalid_argument("resonance frequency exceeds the alias guard of the sampling grid");
      }
      const double t_lo = rp.t_min();
      const double t_hi = rp.peak_value();
      bank.freqs_hz = draw_guarded(rng, n, guard, [&](Rng& g, std::size_t) {
        const double r = std::clamp(g.uniform(cfg.field.range_lo, cfg.field.range_hi), t_lo, t_hi);
        return analytic::resonance_inverse(r, rp);
      });
      break;
    }
    case Mechanism::IrCascade: {
      const double omega = cfg.fiducial_hz.front();
      if (nyquist < omega) {
        throw std::invalid_argument("Nyquist is below the cascade fiducial frequency");
      }
      const double lo = cfg.cascade->lo;
      const double ratio = cfg.cascade->hi / lo;
      bank.freqs_hz.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        bank.freqs_hz[i] = omega - lo * std::pow(ratio, rng.uniform01());
      }
      break;
    }
    case Mechanism::TwoWave: {
      const double omega = cfg.fiducial_hz.front();
      const double split = *cfg.lambda_split;
      if (nyquist < omega + split) {
        throw std::invalid_argument("Nyquist is below omega + lambda_split");
      }
      bank.freqs_hz = {omega + split, omega - split};
      bank.phases = {0.0, 0.0};
      return bank;
    }
  }

  bank.phases.assign(n, 0.0);
  if (cfg.phase_mode == PhaseMode::UniformRandom) {
    for (auto& th : bank.phases) th = kTwoPi * rng.uniform01();
  }
  return bank;
}

TimeSeries sum_of_sinusoids(std::span<const double> freqs_hz, std::span<const double> phases,
                            const SamplingSpec& spec) {
  if (freqs_hz.size() != phases.size()) {
    throw std::invalid_argument("sum_of_sinusoids: frequency and phase counts differ");
  }
  for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
    require_finite(freqs_hz[i], "frequency");
    require_finite(phases[i], "phase");
  }
  const std::size_t n = spec.num_samples();
  const double fs = spec.sample_rate_hz();
  const std::size_t waves = freqs_hz.size();
  std::vector<double> out(n, 0.0);

  // Per-sample rotation of each phasor.
  std::vector<double> rot_c(waves), rot_s(waves);
  for (std::size_t w = 0; w < waves; ++w) {
    const double step = phase_of_cycles(freqs_hz[w] / fs);
    rot_c[w] = std::cos(step);
    rot_s[w] = std::sin(step);
  }

  // Each block restarts every phasor from an exactly evaluated phase, which
  // bounds the drift of the rotation recurrence to kBlock steps.
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t len = std::min(kBlock, n - start);
    double* dst = out.data() + start;
    const double t0 = static_cast<double>(start);
    for (std::size_t w = 0; w < waves; ++w) {
      const double ang = phase_of_cycles(freqs_hz[w] * t0 / fs) + phases[w];
      double s = std::sin(ang);
      double c = std::cos(ang);
      const double rc = rot_c[w];
      const double rs = rot_s[w];
      for (std::size_t k = 0; k < len; ++k) {
        dst[k] += s;
        const double s_next = s * rc + c * rs;
        c = c * rc - s * rs;
        s = s_next;
      }
    }
  }
  return TimeSeries(spec, std::move(out));
}

TimeSeries synth_exponential(const WaveBankConfig& cfg, const SamplingSpec& spec) {
  require_mechanism(cfg, Mechanism::Exponential);
  const auto bank = draw_bank(cfg, spec);
  return sum_of_sinusoids(bank.freqs_hz, bank.phases, spec);
}

TimeSeries synth_power(const WaveBankConfig& cfg, const SamplingSpec& spec) {
  require_mechanism(cfg, Mechanism::Power);
  const auto bank = draw_bank(cfg, spec);
  return sum_of_sinusoids(bank.freqs_hz, bank.phases, spec);
}

TimeSeries synth_resonance(const WaveBankConfig& cfg, const SamplingSpec& spec) {
  require_mechanism(cfg, Mechanism::Resonance);
  const auto bank = draw_bank(cfg, spec);
  return sum_of_sinusoids(bank.freqs_hz, bank.phases, spec);
}

TimeSeries synth_ir_cascade(const WaveBankConfig& cfg, const SamplingSpec& spec,
                            double shift_lo, double shift_hi) {
  require_mechanism(cfg, Mechanism::IrCascade);
  WaveBankConfig local = cfg;
  local.cascade = ShiftRange{shift_lo, shift_hi};
  const auto bank = draw_bank(local, spec);
  return sum_of_sinusoids(bank.freqs_hz, bank.phases, spec);
}

TimeSeries synth_two_wave(double omega, double lambda_split, const SamplingSpec& spec) {
  WaveBankConfig cfg;
  cfg.mechanism = Mechanism::TwoWave;
  cfg.fiducial_hz = {omega};
  cfg.lambda_split = lambda_split;
  cfg.field = RandomField{0, 0.0, 0.0, 2};
  cfg.num_waves = 2;
  const auto bank = draw_bank(cfg, spec);
  return sum_of_sinusoids(bank.freqs_hz, bank.phases, spec);
}

TimeSeries synthesize(const WaveBankConfig& cfg, const SamplingSpec& spec) {
  switch (cfg.mechanism) {
    case Mechanism::Exponential: return synth_exponential(cfg, spec);
    case Mechanism::Power: return synth_power(cfg, spec);
    case Mechanism::Resonance: return synth_resonance(cfg, spec);
    case Mechanism::IrCascade: {
      if (!cfg.cascade) throw std::invalid_argument("ir_cascade mechanism requires a shift range");
      return synth_ir_cascade(cfg, spec, cfg.cascade->lo, cfg.cascade->hi);
    }
    case Mechanism::TwoWave: {
      if (!cfg.lambda_split) throw std::invalid_argument("two_wave mechanism requires lambda_split");
      return synth_two_wave(cfg.fiducial_hz.front(), *cfg.lambda_split, spec);
    }
  }
  throw std::invalid_argument("unknown mechanism");
}

}  // namespace beatlab::synth
