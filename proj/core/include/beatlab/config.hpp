#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "beatlab/analytic.hpp"
#include "beatlab/core.hpp"
#include "beatlab/demod.hpp"
#include "beatlab/spectral.hpp"
#include "beatlab/synth.hpp"

namespace beatlab {

// What a run is judged against. Every present condition must hold.
struct Expectation {
  std::optional<double> slope;      // expected fitted slope, +- tolerance
  double tolerance = 0.25;
  std::optional<bool> pink;         // required pink verdict
  bool positive_slope = false;      // slope must be > 0
  std::optional<double> max_deviation;  // inflection presets: max relative deviation
  std::optional<double> peak_hz;    // two-wave preset: dominant sub-carrier peak, +- one bin
  std::string citation;

  bool empty() const noexcept {
    return !slope && !pink && !positive_slope && !max_deviation && !peak_hz;
  }
};

enum class Analysis {
  Pipeline,       // synthesize -> demodulate -> periodogram -> fit
  ExpBeatCurve,   // Q(delta) for the exponential approach, closed form
  PowBeatCurve,   // Q(delta) for the power approach, quadrature
  Inflection,     // tangent exponential to the inverted resonance curve
  TwoWavePeak,    // two-wave beat: locate the squared-signal peak
};

const char* to_string(Analysis a) noexcept;

// Everything needed to replay one experiment.
struct RunConfig {
  std::string name = "custom";
  std::string description;
  Analysis analysis = Analysis::Pipeline;

  SamplingSpec sampling{100.0, 400000};
  synth::WaveBankConfig bank;
  std::vector<demod::DemodSpec> chain{demod::DemodSpec{demod::Kind::Square}};
  spectral::FitConfig fit;
  Expectation expect;

  // Analytic presets only.
  std::vector<analytic::ExpSyncParams> exp_curves;
  std::vector<analytic::PowerSyncParams> pow_curves;
  analytic::ResonanceParams resonance;
  double curve_lo = 1e-3;   // delta range written to curve.csv
  double curve_hi = 1e2;

  // Free-form notes on how parameter gaps were filled; echoed in outputs.
  std::vector<std::string> notes;

  std::uint64_t seed() const noexcept { return bank.field.seed; }
  // Reseeds the bank (and anything derived from the seed in presets).
  void set_seed(std::uint64_t seed) { bank.field.seed = seed; }

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Schema violation in a run configuration. `field()` is the dotted key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Parses the flat `key = value` format. Keys are dotted (`bank.alpha`), or
// bare inside a `[bank]` section header. `#` and `;` start comments. Every
// key not given keeps its default, and defaults reproduce the fig2 preset.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config_file(const std::string& path);

// Inverse of parse_config: one `key = value` line per parameter.
std::string format_config(const RunConfig& cfg);

}  // namespace beatlab
