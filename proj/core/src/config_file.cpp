#include "beatlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "format.hpp"

namespace beatlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw ConfigError(key, "expected a number, got '" + v + "'");
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) {
    // Accept integral values written in floating notation, e.g. 4e5.
    const double d = to_double(key, v);
    if (d < 0 || d != std::floor(d) || d > 1.8e19) {
      throw ConfigError(key, "expected a nonnegative integer, got '" + v + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

synth::Mechanism to_mechanism(const std::string& key, const std::string& v) {
  using synth::Mechanism;
  for (auto m : {Mechanism::Exponential, Mechanism::Power, Mechanism::Resonance,
                 Mechanism::IrCascade, Mechanism::TwoWave}) {
    if (v == synth::to_string(m)) return m;
  }
  throw ConfigError(key, "unknown mechanism '" + v +
                             "' (exponential, power, resonance, ir_cascade, two_wave)");
}

// Raw key/value pairs plus the bank-shape keys that need post-processing.
struct Pending {
  std::optional<double> alpha, kappa, shift_lo, shift_hi, lambda_split;
  std::optional<std::uint64_t> num_waves;
  std::optional<double> rate;
  std::optional<std::uint64_t> samples;
};

}  // namespace

const char* to_string(Analysis a) noexcept {
  switch (a) {
    case Analysis::Pipeline: return "pipeline";
    case Analysis::ExpBeatCurve: return "exp_beat_curve";
    case Analysis::PowBeatCurve: return "pow_beat_curve";
    case Analysis::Inflection: return "inflection";
    case Analysis::TwoWavePeak: return "two_wave_peak";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (analysis != Analysis::Pipeline && analysis != Analysis::TwoWavePeak) return;
  try {
    bank.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bank", e.what());
  }
  for (const auto& step : chain) {
    try {
      step.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("demod.chain", e.what());
    }
  }
  // Rate after the chain decides which band is reachable.
  double rate = sampling.sample_rate_hz();
  std::size_t n = sampling.num_samples();
  for (const auto& step : chain) {
    if (step.kind == demod::Kind::Decimate) {
      rate /= static_cast<double>(step.factor);
      n = (n + step.factor - 1) / step.factor;
    } else if (step.kind == demod::Kind::SegmentMean ||
               step.kind == demod::Kind::SegmentQuadraticMean) {
      if (step.segments > n) {
        throw ConfigError("demod.chain", "more segments than samples");
      }
      const std::size_t len = n / step.segments;
      rate /= static_cast<double>(len);
      n = step.segments;
    }
  }
  if (analysis == Analysis::TwoWavePeak) return;
  if (!(fit.band_lo_hz > 0.0)) throw ConfigError("fit.band_lo_hz", "must be positive");
  if (!(fit.band_lo_hz < fit.band_hi_hz)) {
    throw ConfigError("fit.band_hi_hz", "must exceed fit.band_lo_hz");
  }
  if (fit.band_hi_hz > 0.5 * rate) {
    throw ConfigError("fit.band_hi_hz", "exceeds the Nyquist frequency " +
                                            fmt::num(0.5 * rate) +
                                            " Hz of the demodulated series");
  }
  if (fit.bins_per_decade < 1) throw ConfigError("fit.bins_per_decade", "must be positive");
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  Pending pend;
  std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters;
  auto& b = cfg.bank;
  setters["name"] = [&](auto&, auto& v) { cfg.name = v; };
  setters["seed"] = [&](auto& k, auto& v) { b.field.seed = to_uint(k, v); };
  setters["sampling.rate_hz"] = [&](auto& k, auto& v) { pend.rate = to_double(k, v); };
  setters["sampling.samples"] = [&](auto& k, auto& v) { pend.samples = to_uint(k, v); };
  setters["bank.mechanism"] = [&](auto& k, auto& v) { b.mechanism = to_mechanism(k, v); };
  setters["bank.fiducial_hz"] = [&](auto& k, auto& v) {
    b.fiducial_hz.clear();
    for (const auto& item : split_list(v)) b.fiducial_hz.push_back(to_double(k, item));
    if (b.fiducial_hz.empty()) throw ConfigError(k, "needs at least one value");
  };
  setters["bank.mixing"] = [&](auto& k, auto& v) { b.mixing = to_double(k, v); };
  setters["bank.alpha"] = [&](auto& k, auto& v) { pend.alpha = to_double(k, v); };
  setters["bank.kappa"] = [&](auto& k, auto& v) { pend.kappa = to_double(k, v); };
  setters["bank.shift_lo"] = [&](auto& k, auto& v) { pend.shift_lo = to_double(k, v); };
  setters["bank.shift_hi"] = [&](auto& k, auto& v) { pend.shift_hi = to_double(k, v); };
  setters["bank.lambda_split"] = [&](auto& k, auto& v) { pend.lambda_split = to_double(k, v); };
  setters["bank.range_lo"] = [&](auto& k, auto& v) { b.field.range_lo = to_double(k, v); };
  setters["bank.range_hi"] = [&](auto& k, auto& v) { b.field.range_hi = to_double(k, v); };
  setters["bank.num_waves"] = [&](auto& k, auto& v) { pend.num_waves = to_uint(k, v); };
  setters["bank.phase"] = [&](auto& k, auto& v) {
    if (v == "zero") b.phase_mode = synth::PhaseMode::Zero;
    else if (v == "uniform_random") b.phase_mode = synth::PhaseMode::UniformRandom;
    else throw ConfigError(k, "expected zero or uniform_random, got '" + v + "'");
  };
  setters["demod.chain"] = [&](auto& k, auto& v) {
    cfg.chain.clear();
    for (const auto& item : split_list(v)) {
      try {
        auto step = demod::parse_step(item);
        if (step.kind != demod::Kind::Identity) cfg.chain.push_back(step);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k, e.what());
      }
    }
  };
  setters["fit.band_lo_hz"] = [&](auto& k, auto& v) { cfg.fit.band_lo_hz = to_double(k, v); };
  setters["fit.band_hi_hz"] = [&](auto& k, auto& v) { cfg.fit.band_hi_hz = to_double(k, v); };
  setters["fit.bins_per_decade"] = [&](auto& k, auto& v) {
    cfg.fit.bins_per_decade = static_cast<int>(to_uint(k, v));
  };
  setters["fit.window"] = [&](auto& k, auto& v) {
    if (v == "hann") cfg.fit.window = spectral::Window::Hann;
    else if (v == "rect") cfg.fit.window = spectral::Window::Rect;
    else throw ConfigError(k, "expected hann or rect, got '" + v + "'");
  };
  setters["fit.detrend"] = [&](auto& k, auto& v) {
    if (v == "subtract_mean") cfg.fit.detrend = spectral::Detrend::SubtractMean;
    else if (v == "none") cfg.fit.detrend = spectral::Detrend::None;
    else throw ConfigError(k, "expected subtract_mean or none, got '" + v + "'");
  };
  setters["expect.slope"] = [&](auto& k, auto& v) { cfg.expect.slope = to_double(k, v); };
  setters["expect.tolerance"] = [&](auto& k, auto& v) {
    cfg.expect.tolerance = to_double(k, v);
    if (cfg.expect.tolerance < 0) throw ConfigError(k, "must be nonnegative");
  };
  setters["expect.pink"] = [&](auto& k, auto& v) { cfg.expect.pink = to_bool(k, v); };
  setters["expect.positive_slope"] = [&](auto& k, auto& v) {
    cfg.expect.positive_slope = to_bool(k, v);
  };
  setters["expect.citation"] = [&](auto&, auto& v) { cfg.expect.citation = v; };

  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(source + ":" + std::to_string(lineno), "malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno), "expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, "unknown key");
    it->second(key, value);
  }

  if (pend.rate || pend.samples) {
    try {
      cfg.sampling = SamplingSpec(pend.rate.value_or(cfg.sampling.sample_rate_hz()),
                                  pend.samples.value_or(cfg.sampling.num_samples()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("sampling", e.what());
    }
  }
  if (pend.num_waves) {
    b.num_waves = *pend.num_waves;
    b.field.count = *pend.num_waves;
  }

  using synth::Mechanism;
  auto reject = [](const std::optional<double>& v, const char* key, const char* why) {
    if (v) throw ConfigError(key, why);
  };
  if (b.mechanism == Mechanism::Power) {
    if (!pend.alpha) throw ConfigError("bank.alpha", "required for the power mechanism");
    if (*pend.alpha == 0.0) throw ConfigError("bank.alpha", "must be nonzero");
    b.alpha = pend.alpha;
  } else {
    reject(pend.alpha, "bank.alpha", "only valid for the power mechanism");
  }
  if (b.mechanism == Mechanism::Resonance) {
    analytic::ResonanceParams r;
    r.omega0 = b.fiducial_hz.front();
    if (pend.kappa) r.kappa = *pend.kappa;
    if (!(r.kappa > 0.0)) throw ConfigError("bank.kappa", "must be positive");
    b.resonance = r;
  } else {
    reject(pend.kappa, "bank.kappa", "only valid for the resonance mechanism");
  }
  if (b.mechanism == Mechanism::IrCascade) {
    synth::ShiftRange s;
    if (pend.shift_lo) s.lo = *pend.shift_lo;
    if (pend.shift_hi) s.hi = *pend.shift_hi;
    b.cascade = s;
  } else {
    reject(pend.shift_lo, "bank.shift_lo", "only valid for the ir_cascade mechanism");
    reject(pend.shift_hi, "bank.shift_hi", "only valid for the ir_cascade mechanism");
  }
  if (b.mechanism == Mechanism::TwoWave) {
    b.lambda_split = pend.lambda_split.value_or(0.5);
    b.num_waves = 2;
    b.field.count = 2;
    cfg.analysis = Analysis::TwoWavePeak;
  } else {
    reject(pend.lambda_split, "bank.lambda_split", "only valid for the two_wave mechanism");
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in, path);
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream o;
  const auto& b = cfg.bank;
  o << "name = " << cfg.name << '\n';
  o << "seed = " << b.field.seed << '\n';
  o << "sampling.rate_hz = " << fmt::num(cfg.sampling.sample_rate_hz()) << '\n';
  o << "sampling.samples = " << cfg.sampling.num_samples() << '\n';
  o << "bank.mechanism = " << synth::to_string(b.mechanism) << '\n';
  o << "bank.fiducial_hz = ";
  for (std::size_t i = 0; i < b.fiducial_hz.size(); ++i) {
    o << (i ? ", " : "") << fmt::num(b.fiducial_hz[i]);
  }
  o << '\n';
  o << "bank.mixing = " << fmt::num(b.mixing) << '\n';
  if (b.alpha) o << "bank.alpha = " << fmt::num(*b.alpha) << '\n';
  if (b.resonance) o << "bank.kappa = " << fmt::num(b.resonance->kappa) << '\n';
  if (b.cascade) {
    o << "bank.shift_lo = " << fmt::num(b.cascade->lo) << '\n';
    o << "bank.shift_hi = " << fmt::num(b.cascade->hi) << '\n';
  }
  if (b.lambda_split) o << "bank.lambda_split = " << fmt::num(*b.lambda_split) << '\n';
  o << "bank.range_lo = " << fmt::num(b.field.range_lo) << '\n';
  o << "bank.range_hi = " << fmt::num(b.field.range_hi) << '\n';
  o << "bank.num_waves = " << b.num_waves << '\n';
  o << "bank.phase = " << synth::to_string(b.phase_mode) << '\n';
  o << "demod.chain = ";
  if (cfg.chain.empty()) o << "identity";
  for (std::size_t i = 0; i < cfg.chain.size(); ++i) {
    o << (i ? ", " : "") << demod::describe(cfg.chain[i]);
  }
  o << '\n';
  o << "fit.band_lo_hz = " << fmt::num(cfg.fit.band_lo_hz) << '\n';
  o << "fit.band_hi_hz = " << fmt::num(cfg.fit.band_hi_hz) << '\n';
  o << "fit.bins_per_decade = " << cfg.fit.bins_per_decade << '\n';
  o << "fit.window = " << spectral::to_string(cfg.fit.window) << '\n';
  o << "fit.detrend = " << spectral::to_string(cfg.fit.detrend) << '\n';
  const auto& e = cfg.expect;
  if (e.slope) {
    o << "expect.slope = " << fmt::num(*e.slope) << '\n';
    o << "expect.tolerance = " << fmt::num(e.tolerance) << '\n';
  }
  if (e.pink) o << "expect.pink = " << (*e.pink ? "true" : "false") << '\n';
  if (e.positive_slope) o << "expect.positive_slope = true\n";
  if (!e.citation.empty()) o << "expect.citation = " << e.citation << '\n';
  return o.str();
}

}  // namespace beatlab
