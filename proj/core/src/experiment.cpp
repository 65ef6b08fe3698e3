#include "beatlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "beatlab/analytic.hpp"
#include "beatlab/demod.hpp"
#include "beatlab/presets.hpp"
#include "beatlab/synth.hpp"
#include "format.hpp"

namespace beatlab {

namespace fs = std::filesystem;
using fmt::num;

namespace {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.back() = hi;
  return g;
}

void judge_slope(const RunConfig& cfg, RunResult& r) {
  const auto& e = cfg.expect;
  if (e.slope && !(std::abs(r.measured - *e.slope) <= e.tolerance)) {
    r.failures.push_back("slope " + num(r.measured) + " outside " + num(*e.slope) + " +- " +
                         num(e.tolerance));
  }
  if (e.positive_slope && !(r.measured > 0.0)) {
    r.failures.push_back("slope " + num(r.measured) + " is not positive");
  }
  if (e.pink && r.verdict && r.verdict->pink != *e.pink) {
    r.failures.push_back(std::string("verdict ") + (r.verdict->pink ? "pink" : "not pink") +
                         ", expected " + (*e.pink ? "pink" : "not pink") + " (" +
                         r.verdict->rationale + ")");
  }
}

std::string column_label(const analytic::ExpSyncParams& p) {
  return "q[omega1=" + num(p.omega1) + "]";
}

std::string column_label(const analytic::PowerSyncParams& p) {
  return "q[alpha=" + num(p.alpha) + "]";
}

// Curve of Q(delta), one column per parameter set; the slope is fitted on the
// first curve over the fit band.
template <class Q, class Params>
void beat_curve(const RunConfig& cfg, const std::vector<Params>& sets, Q&& q,
                RunOutput& out) {
  const auto grid = log_grid(cfg.curve_lo, cfg.curve_hi, 241);
  out.curve_columns = {"delta"};
  for (const auto& s : sets) out.curve_columns.push_back(column_label(s));
  Psd first;
  for (double d : grid) {
    std::vector<double> row{d};
    for (const auto& s : sets) row.push_back(q(d, s));
    first.freqs_hz.push_back(d);
    first.power.push_back(row[1]);
    out.curve_rows.push_back(std::move(row));
  }
  first.convention = "beat-curve";
  // Dense sampling within the band for the fit itself.
  Psd band;
  band.convention = "beat-curve";
  for (double d : log_grid(cfg.fit.band_lo_hz, cfg.fit.band_hi_hz, 161)) {
    band.freqs_hz.push_back(d);
    band.power.push_back(q(d, sets.front()));
  }
  auto fit = spectral::fit_slope(band, cfg.fit);
  out.result.fit = fit;
  out.result.measured = fit.slope;
  out.psd = std::move(first);
  out.binned = spectral::log_bin(band, cfg.fit.bins_per_decade, cfg.fit.band_lo_hz,
                                 cfg.fit.band_hi_hz);
}

void run_inflection(const RunConfig& cfg, RunOutput& out) {
  const auto& rp = cfg.resonance;
  const auto approx = analytic::exp_approx_at_inflection(rp);
  const double top = rp.peak_value();
  out.curve_columns = {"t", "omega", "approx"};
  for (double t : log_grid(1e-4 * top, top, 401)) {
    out.curve_rows.push_back({t, analytic::resonance_inverse(t, rp), approx(t)});
  }
  double worst = 0.0;
  const std::size_t n = 2001;
  const double hi = 0.9 * top;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = approx.t_star + (hi - approx.t_star) * static_cast<double>(i) / (n - 1);
    const double lw = std::log(analytic::resonance_inverse(t, rp));
    worst = std::max(worst, std::abs(std::log(approx(t)) - lw) / std::abs(lw));
  }
  out.result.measured = worst;
  out.result.measured_kind = "max_deviation";
  out.result.failures.clear();
  if (cfg.expect.max_deviation && !(worst <= *cfg.expect.max_deviation)) {
    out.result.failures.push_back("max relative deviation " + num(worst) + " exceeds " +
                                  num(*cfg.expect.max_deviation));
  }
  out.curve_comment = "# t_star = " + num(approx.t_star) + ", A = " + num(approx.a) +
                      ", B = " + num(approx.b) + "\n";
}

void run_two_wave(const RunConfig& cfg, RunOutput& out) {
  const auto x = synth::synthesize(cfg.bank, cfg.sampling);
  const auto y = demod::apply_chain(cfg.chain, x);
  out.psd = spectral::periodogram(y, cfg.fit.window, cfg.fit.detrend);
  const double carrier = cfg.bank.fiducial_hz.front() - *cfg.bank.lambda_split;
  std::size_t best = 0;
  for (std::size_t k = 0; k < out.psd.size() && out.psd.freqs_hz[k] < carrier; ++k) {
    if (out.psd.power[k] > out.psd.power[best]) best = k;
  }
  out.result.measured = out.psd.freqs_hz[best];
  out.result.measured_kind = "peak_hz";
  if (cfg.expect.peak_hz) {
    const double bin = y.spec().sample_rate_hz() / static_cast<double>(y.size());
    if (!(std::abs(out.result.measured - *cfg.expect.peak_hz) <= bin * (1.0 + 1e-9))) {
      out.result.failures.push_back("peak at " + num(out.result.measured) + " Hz, expected " +
                                    num(*cfg.expect.peak_hz) + " Hz +- one bin");
    }
  }
  out.series = y;
}

void run_pipeline(const RunConfig& cfg, RunOutput& out) {
  const auto x = synth::synthesize(cfg.bank, cfg.sampling);
  auto y = demod::apply_chain(cfg.chain, x);
  cfg.fit.validate(y.spec().nyquist_hz());
  out.psd = spectral::periodogram(y, cfg.fit.window, cfg.fit.detrend);
  out.binned = spectral::log_bin(out.psd, cfg.fit.bins_per_decade, cfg.fit.band_lo_hz,
                                 cfg.fit.band_hi_hz);
  const auto fit = spectral::fit_slope(out.psd, cfg.fit);
  out.result.fit = fit;
  out.result.verdict = spectral::pink_verdict(fit);
  out.result.measured = fit.slope;
  judge_slope(cfg, out.result);
  out.series = std::move(y);
}

// Header comment shared by every CSV artifact.
std::string header_comment(const RunConfig& cfg) {
  std::ostringstream o;
  o << "# beatlab " << cfg.name << ": " << cfg.description << '\n';
  o << "# analysis = " << to_string(cfg.analysis) << '\n';
  std::istringstream lines(format_config(cfg));
  for (std::string l; std::getline(lines, l);) o << "# " << l << '\n';
  for (const auto& n : cfg.notes) o << "# note: " << n << '\n';
  return o.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

void append_row(std::string& s, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    if (!first) s += ',';
    s += num(v);
    first = false;
  }
  s += '\n';
}

std::string psd_csv(const std::string& header, const Psd& p) {
  std::string s = header + "# convention = " + p.convention + "\nfreq_hz,power\n";
  for (std::size_t i = 0; i < p.size(); ++i) append_row(s, {p.freqs_hz[i], p.power[i]});
  return s;
}

nlohmann::json fit_json(const RunConfig& cfg, const RunResult& r) {
  using nlohmann::json;
  json j;
  j["comment"] = header_comment(cfg);
  j["preset"] = cfg.name;
  j["description"] = cfg.description;
  j["analysis"] = to_string(cfg.analysis);
  j["seed"] = r.seed;
  j["parameters"] = format_config(cfg);
  j["notes"] = cfg.notes;
  j["measured"] = {{"kind", r.measured_kind}, {"value", r.measured}};
  if (r.fit) {
    const auto& f = *r.fit;
    j["fit"] = {{"slope", f.slope},           {"intercept", f.intercept},
                {"r_squared", f.r_squared},   {"slope_stderr", f.slope_stderr},
                {"band_lo_hz", f.band_lo_hz}, {"band_hi_hz", f.band_hi_hz},
                {"decades", f.decades},       {"points_used", f.points_used},
                {"bins_per_decade", cfg.fit.bins_per_decade},
                {"window", spectral::to_string(cfg.fit.window)},
                {"detrend", spectral::to_string(cfg.fit.detrend)}};
  }
  if (r.verdict) {
    j["verdict"] = {{"pink", r.verdict->pink},
                    {"failed", r.verdict->failed},
                    {"rationale", r.verdict->rationale}};
  }
  json e = json::object();
  const auto& x = cfg.expect;
  if (x.slope) {
    e["slope"] = *x.slope;
    e["tolerance"] = x.tolerance;
  }
  if (x.pink) e["pink"] = *x.pink;
  if (x.positive_slope) e["positive_slope"] = true;
  if (x.max_deviation) e["max_deviation"] = *x.max_deviation;
  if (x.peak_hz) e["peak_hz"] = *x.peak_hz;
  e["citation"] = x.citation;
  j["expected"] = e;
  j["pass"] = r.passed;
  j["failures"] = r.failures;
  return j;
}

}  // namespace

RunOutput execute(const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  out.result.name = cfg.name;
  out.result.seed = cfg.seed();
  out.result.analysis = cfg.analysis;
  switch (cfg.analysis) {
    case Analysis::Pipeline: run_pipeline(cfg, out); break;
    case Analysis::TwoWavePeak: run_two_wave(cfg, out); break;
    case Analysis::Inflection: run_inflection(cfg, out); break;
    case Analysis::ExpBeatCurve:
      beat_curve(cfg, cfg.exp_curves,
                 [](double d, const analytic::ExpSyncParams& p) { return analytic::q_exp(d, p); },
                 out);
      judge_slope(cfg, out.result);
      break;
    case Analysis::PowBeatCurve:
      beat_curve(cfg, cfg.pow_curves,
                 [](double d, const analytic::PowerSyncParams& p) { return analytic::q_pow(d, p); },
                 out);
      judge_slope(cfg, out.result);
      break;
  }
  out.result.has_expectation = !cfg.expect.empty();
  out.result.passed = out.result.failures.empty();
  out.result.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void write_artifacts(const fs::path& dir, const RunConfig& cfg, const RunOutput& out) {
  fs::create_directories(dir);
  const std::string header = header_comment(cfg);
  if (out.series) {
    const auto& x = *out.series;
    std::string s = header + "t,value\n";
    s.reserve(s.size() + x.size() * 24);
    for (std::size_t i = 0; i < x.size(); ++i) append_row(s, {x.spec().time_at(i), x[i]});
    write_atomic(dir / "series.csv", s);
  }
  if (out.psd.size() > 0 && cfg.analysis != Analysis::ExpBeatCurve &&
      cfg.analysis != Analysis::PowBeatCurve) {
    write_atomic(dir / "psd.csv", psd_csv(header, out.psd));
  }
  if (out.binned.size() > 0) write_atomic(dir / "psd_binned.csv", psd_csv(header, out.binned));
  if (!out.curve_rows.empty()) {
    std::string s = header + out.curve_comment;
    for (std::size_t i = 0; i < out.curve_columns.size(); ++i) {
      s += (i ? "," : "") + out.curve_columns[i];
    }
    s += '\n';
    for (const auto& row : out.curve_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ',';
        s += num(row[i]);
      }
      s += '\n';
    }
    write_atomic(dir / "curve.csv", s);
  }
  write_atomic(dir / "fit.json", fit_json(cfg, out.result).dump(2) + "\n");
}

RunResult run_preset(const std::string& name, std::optional<std::uint64_t> seed,
                     const fs::path& out_dir) {
  const RunConfig cfg = make_preset(name, seed.value_or(kCanonicalSeed));
  const RunOutput out = execute(cfg);
  write_artifacts(out_dir / name, cfg, out);
  return out.result;
}

RunResult custom_run(const std::string& config_path, const fs::path& out_dir) {
  const RunConfig cfg = load_config_file(config_path);
  const RunOutput out = execute(cfg);
  write_artifacts(out_dir / cfg.name, cfg, out);
  return out.result;
}

std::string summary_csv(const std::vector<RunResult>& results) {
  std::string s = "preset,analysis,seed,measured_kind,measured,expected,tolerance,verdict,pass\n";
  for (const auto& r : results) {
    const RunConfig cfg = make_preset(r.name, r.seed);
    const auto& e = cfg.expect;
    std::string expected, tol;
    if (e.slope) {
      expected = num(*e.slope);
      tol = num(e.tolerance);
    } else if (e.max_deviation) {
      expected = "<=" + num(*e.max_deviation);
    } else if (e.peak_hz) {
      expected = num(*e.peak_hz);
      tol = "1bin";
    } else if (e.positive_slope) {
      expected = ">0";
    }
    if (e.pink) expected += std::string(expected.empty() ? "" : ";") + (*e.pink ? "pink" : "not_pink");
    const std::string verdict = r.verdict ? (r.verdict->pink ? "pink" : "not_pink") : "";
    s += r.name + "," + to_string(r.analysis) + "," + std::to_string(r.seed) + "," +
         r.measured_kind + "," + num(r.measured) + "," + expected + "," + tol + "," + verdict +
         "," + (r.passed ? "pass" : "fail") + "\n";
  }
  return s;
}

std::vector<RunResult> run_all(const fs::path& out_dir) {
  std::vector<RunResult> results;
  for (const auto& name : preset_names()) results.push_back(run_preset(name, {}, out_dir));
  fs::create_directories(out_dir);
  write_atomic(out_dir / "summary.csv", summary_csv(results));
  std::string timing = "preset,runtime_s\n";
  for (const auto& r : results) timing += r.name + "," + num(r.runtime_s) + "\n";
  write_atomic(out_dir / "timing.csv", timing);
  return results;
}

fs::path default_out_dir(const fs::path& fallback) {
  const char* env = std::getenv("BEATLAB_OUT");
  if (env != nullptr && *env != '\0') return fs::path(env);
  return fallback;
}

}  // namespace beatlab
