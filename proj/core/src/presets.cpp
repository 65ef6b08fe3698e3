#include "beatlab/presets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace beatlab {

namespace {

using demod::DemodSpec;
using demod::Kind;

// Shared grid for the 10 Hz presets: T = 4000 s resolves four decades of
// beats below the 2 Hz beat edge of the fiducial bank.
constexpr double kBaseRate = 100.0;
constexpr std::size_t kBaseSamples = 400000;

// 440 Hz presets.
constexpr double kAudioRate = 4096.0;
constexpr std::size_t kAudioSamples = std::size_t{1} << 20;

DemodSpec step(Kind k) { return DemodSpec{k}; }

DemodSpec segments(Kind k, std::size_t n) {
  DemodSpec s{k};
  s.segments = n;
  return s;
}

RunConfig fiducial_exponential(std::uint64_t seed) {
  RunConfig c;
  c.sampling = SamplingSpec(kBaseRate, kBaseSamples);
  c.bank.mechanism = synth::Mechanism::Exponential;
  c.bank.fiducial_hz = {10.0};
  c.bank.mixing = 0.2;
  c.bank.field = RandomField{seed, 0.0, 30.0, 1000};
  c.bank.num_waves = 1000;
  c.chain = {step(Kind::Square)};
  c.fit.band_lo_hz = 4.0 / c.sampling.duration_s();
  c.fit.band_hi_hz = 1.0;
  c.notes.push_back("record 4000 s at 100 Hz; band [4/T, half the 2 Hz beat edge]");
  return c;
}

void set_slope(RunConfig& c, double slope, double tol, bool pink, std::string citation) {
  c.expect.slope = slope;
  c.expect.tolerance = tol;
  if (pink) c.expect.pink = true;
  c.expect.citation = std::move(citation);
}

void set_bank_size(RunConfig& c, std::size_t n) {
  c.bank.num_waves = n;
  c.bank.field.count = n;
}

using Builder = std::function<RunConfig(std::uint64_t)>;

const std::vector<std::pair<std::string, Builder>>& table() {
  static const std::vector<std::pair<std::string, Builder>> t = {
      {"fig1",
       [](std::uint64_t seed) {
         RunConfig c;
         c.set_seed(seed);
         c.analysis = Analysis::ExpBeatCurve;
         c.description = "beat distribution Q for the exponential approach";
         c.exp_curves = {analytic::ExpSyncParams{1.0, 1.0, 1e-4, 1e5},
                         analytic::ExpSyncParams{1.0, 1.0, 1e-6, 1e5}};
         c.curve_lo = 1e-3;
         c.curve_hi = 1e4;
         // Slope is read where omega1 << delta << omega2 for the first curve.
         c.fit.band_lo_hz = 10.0;
         c.fit.band_hi_hz = 1000.0;
         c.expect.slope = -1.0;
         c.expect.tolerance = 0.1;
         c.expect.citation = "beat distribution close to 1/delta with a slowly varying log factor";
         c.notes.push_back("slope measured on the omega1=1e-4 curve over delta in [10, 1000]");
         return c;
       }},
      {"fig2",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared exponential bank, zero phases";
         set_slope(c, -1.0, 0.2, true, "pink index -1 over four decades, run spread about 0.1");
         return c;
       }},
      {"fig3",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared exponential bank, uniform random phases";
         c.bank.phase_mode = synth::PhaseMode::UniformRandom;
         set_slope(c, -0.7, 0.2, true, "random phases lower the index to about -0.7");
         return c;
       }},
      {"fig4",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "raw (unsquared) exponential bank";
         c.chain.clear();
         c.expect.pink = false;
         c.expect.citation = "no pink noise in the raw signal";
         return c;
       }},
      {"fig5",
       [](std::uint64_t seed) {
         RunConfig c;
         c.set_seed(seed);
         c.analysis = Analysis::PowBeatCurve;
         c.description = "beat distribution Q for the power approach (c = 1, beta = 1.2 and 4/3)";
         // c = p / alpha = 1.
         c.pow_curves = {analytic::PowerSyncParams{3.0, 3.0, 1e-4, 1e5},
                         analytic::PowerSyncParams{5.0, 5.0, 1e-4, 1e5}};
         c.curve_lo = 1e-3;
         c.curve_hi = 1e4;
         c.fit.band_lo_hz = 10.0;
         c.fit.band_hi_hz = 1000.0;
         c.expect.slope = -1.0 - 2.0 / 3.0;
         c.expect.tolerance = 0.15;
         c.expect.citation = "small-delta asymptote delta^(-1-2/alpha), alpha = 3";
         c.notes.push_back("slope measured on the alpha=3 curve over delta in [10, 1000]");
         return c;
       }},
      {"fig6",
       [](std::uint64_t seed) {
         RunConfig c;
         c.description = "squared power-law bank, alpha = 3";
         c.sampling = SamplingSpec(kAudioRate, kAudioSamples);
         c.bank.mechanism = synth::Mechanism::Power;
         c.bank.fiducial_hz = {440.0};
         c.bank.mixing = 0.3;
         c.bank.alpha = 3.0;
         c.bank.field = RandomField{seed, 0.0, 20.0, 200};
         c.bank.num_waves = 200;
         c.fit.band_lo_hz = 0.1;
         c.fit.band_hi_hz = 10.0;
         set_slope(c, -1.3, 0.25, false, "pink index -1.3");
         c.notes.push_back("4096 Hz grid, 2^20 samples; draws floored at 1e-3 and alias-guarded");
         return c;
       }},
      {"fig7",
       [](std::uint64_t seed) {
         RunConfig c;
         c.description = "squared power-law bank, alpha = -3";
         c.sampling = SamplingSpec(kAudioRate, kAudioSamples);
         c.bank.mechanism = synth::Mechanism::Power;
         c.bank.fiducial_hz = {440.0};
         c.bank.mixing = 0.01;
         c.bank.alpha = -3.0;
         c.bank.field = RandomField{seed, 0.0, 1.0, 200};
         c.bank.num_waves = 200;
         // Bank spans 440..444.4 Hz; stay at or below half that beat edge.
         c.fit.band_lo_hz = 0.02;
         c.fit.band_hi_hz = 2.0;
         set_slope(c, -1.0, 0.25, false, "pink index -1 over three decades");
         c.notes.push_back("4096 Hz grid, 2^20 samples; band kept below half the 4.4 Hz beat edge");
         return c;
       }},
      {"fig8",
       [](std::uint64_t seed) {
         RunConfig c;
         c.set_seed(seed);
         c.analysis = Analysis::Inflection;
         c.description = "tangent exponential to the inverted resonance curve at its inflection";
         c.resonance = analytic::ResonanceParams{10.0, 0.1, 1.0};
         c.expect.max_deviation = 0.05;
         c.expect.citation = "exponential tracks the inverted curve in the large-t range";
         c.notes.push_back("deviation = |ln approx - ln omega| / |ln omega| over [t*, 0.9 * 4/kappa^2]");
         return c;
       }},
      {"fig9",
       [](std::uint64_t seed) {
         RunConfig c;
         c.description = "squared resonance bank";
         c.sampling = SamplingSpec(kBaseRate, kBaseSamples);
         c.bank.mechanism = synth::Mechanism::Resonance;
         c.bank.fiducial_hz = {10.0};
         c.bank.resonance = analytic::ResonanceParams{10.0, 0.1, 1.0};
         c.bank.field = RandomField{seed, 0.0, 10.0, 100};
         c.bank.num_waves = 100;
         c.fit.band_lo_hz = 0.03;
         c.fit.band_hi_hz = 1.0;
         set_slope(c, -1.2, 0.25, false, "approximate power law of index -1.2");
         c.notes.push_back("band starts at 0.03 Hz; 100 lines leave the spectrum flat below it");
         return c;
       }},
      {"case1",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "fiducial: squared exponential bank";
         set_slope(c, -1.0, 0.25, true, "fiducial squared signal, slope -1.0");
         return c;
       }},
      {"case2",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal, values below the mean zeroed";
         c.chain.push_back(step(Kind::ThresholdKeepAboveMean));
         set_slope(c, -1.0, 0.25, true, "threshold on the square, slope -1.0");
         return c;
       }},
      {"case3",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal, on-off threshold at the mean";
         c.chain.push_back(step(Kind::BinaryAboveMean));
         set_slope(c, -0.94, 0.25, true, "on-off threshold, slope -0.94");
         return c;
       }},
      {"case4",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal, inverse on-off threshold at the mean";
         c.chain.push_back(step(Kind::BinaryBelowMean));
         set_slope(c, -0.94, 0.25, true, "inverse on-off threshold, slope -0.94");
         return c;
       }},
      {"case5",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "raw signal, values below the mean zeroed";
         c.chain = {step(Kind::ThresholdRawAboveMean)};
         set_slope(c, -0.98, 0.25, true, "threshold on the raw signal, slope -0.98");
         return c;
       }},
      {"case6",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "raw signal, half-wave rectified";
         c.chain = {step(Kind::HalfWaveRectify)};
         set_slope(c, -1.2, 0.25, true, "rectification, slope -1.2");
         return c;
       }},
      {"case7",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "segment RMS of the raw signal";
         c.chain = {segments(Kind::SegmentQuadraticMean, 40000)};
         set_slope(c, -1.1, 0.25, true, "quadratic average per segment, slope -1.1");
         c.notes.push_back("40000 segments of 0.1 s (same segment length as 1e3 segments of 1e4 samples)");
         return c;
       }},
      {"case8",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "segment mean of the raw signal";
         c.chain = {segments(Kind::SegmentMean, 40000)};
         c.expect.positive_slope = true;
         c.expect.pink = false;
         c.expect.citation = "simple average per segment: no pink noise, positive index about +0.8";
         c.notes.push_back("40000 segments of 0.1 s (same segment length as 1e3 segments of 1e4 samples)");
         return c;
       }},
      {"case9",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal decimated by 2";
         DemodSpec d{Kind::Decimate};
         d.factor = 2;
         c.chain.push_back(d);
         set_slope(c, -1.1, 0.25, true, "half the sample points, slope -1.1");
         return c;
       }},
      {"case10",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal from only 10 waves";
         set_bank_size(c, 10);
         c.expect.pink = false;
         c.expect.citation = "10 waves: no pink noise";
         return c;
       }},
      {"case11",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal from 1e4 waves";
         set_bank_size(c, 10000);
         set_slope(c, -0.94, 0.25, true, "1e4 waves, slope -0.94");
         return c;
       }},
      {"case12",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal, record ten times longer";
         c.sampling = SamplingSpec(kBaseRate, 10 * kBaseSamples);
         c.fit.band_lo_hz = 4.0 / c.sampling.duration_s();
         set_slope(c, -1.0, 0.25, true, "ten times longer record, slope -1.0 over one more decade");
         c.notes.push_back("record 40000 s; band starts a decade lower at 4/T");
         return c;
       }},
      {"case13",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared signal, five random fiducial frequencies";
         c.bank.fiducial_hz = draw_fiducials(seed, 5, 20.0);
         set_slope(c, -1.5, 0.25, true, "five fiducials drawn in [0, 20], slope -1.5");
         c.notes.push_back("waves split into 5 contiguous blocks of 200, one per fiducial");
         return c;
       }},
      {"twowave",
       [](std::uint64_t seed) {
         RunConfig c;
         c.analysis = Analysis::TwoWavePeak;
         c.description = "two-wave beat: squared signal peaks at twice the split";
         c.sampling = SamplingSpec(kBaseRate, 10000);
         c.bank.mechanism = synth::Mechanism::TwoWave;
         c.bank.fiducial_hz = {10.0};
         c.bank.lambda_split = 0.5;
         c.bank.field = RandomField{seed, 0.0, 0.0, 2};
         c.bank.num_waves = 2;
         c.fit.window = spectral::Window::Rect;
         c.expect.peak_hz = 1.0;
         c.expect.citation = "beats appear around twice the split frequency";
         return c;
       }},
      {"ircascade",
       [](std::uint64_t seed) {
         auto c = fiducial_exponential(seed);
         c.description = "squared IR-cascade bank, shifts log-uniform on [1e-3, 2]";
         c.bank.mechanism = synth::Mechanism::IrCascade;
         c.bank.mixing = 0.0;
         c.bank.cascade = synth::ShiftRange{1e-3, 2.0};
         c.bank.field.range_lo = 0.0;
         c.bank.field.range_hi = 1.0;
         c.expect.pink = true;
         c.expect.citation = "1/omega emission gives the same beat spectrum as the exponential approach";
         return c;
       }},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, _] : table()) n.push_back(name);
    return n;
  }();
  return names;
}

bool is_preset(const std::string& name) {
  const auto& n = preset_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

RunConfig make_preset(const std::string& name, std::uint64_t seed) {
  for (const auto& [n, build] : table()) {
    if (n == name) {
      RunConfig c = build(seed);
      c.name = name;
      c.set_seed(seed);
      c.validate();
      return c;
    }
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<double> draw_fiducials(std::uint64_t seed, std::size_t count, double hi) {
  // Golden-ratio offset keeps this stream apart from the bank's own draws.
  Rng rng(seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<double> out(count);
  for (auto& f : out) f = hi * (1.0 - rng.uniform01());
  return out;
}

}  // namespace beatlab
