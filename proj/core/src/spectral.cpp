#include "beatlab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace beatlab::spectral {

namespace {

// FFTW's planner is not reentrant; execution of a plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

// |X_k|^2 for k = 0..n/2 of a real input.
std::vector<double> power_spectrum(const std::vector<double>& input) {
  const std::size_t n = input.size();
  const std::size_t bins = n / 2 + 1;
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  if (!in || !out) throw std::bad_alloc();

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalError("fftw: failed to create plan");
  std::copy(input.begin(), input.end(), in.get());
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  std::vector<double> mag2(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = out.get()[k][0];
    const double im = out.get()[k][1];
    mag2[k] = re * re + im * im;
  }
  return mag2;
}

std::string convention_tag(Window w, Detrend d) {
  return std::string("onesided-density;window=") + to_string(w) + ";detrend=" + to_string(d);
}

}  // namespace

const char* to_string(Window w) noexcept { return w == Window::Rect ? "rect" : "hann"; }

const char* to_string(Detrend d) noexcept {
  return d == Detrend::SubtractMean ? "subtract_mean" : "none";
}

void FitConfig::validate(double nyquist_hz) const {
  require_finite(band_lo_hz, "band_lo_hz");
  require_finite(band_hi_hz, "band_hi_hz");
  if (!(band_lo_hz > 0.0)) throw std::invalid_argument("band_lo_hz must be positive");
  if (!(band_lo_hz < band_hi_hz)) throw std::invalid_argument("band_lo_hz must be below band_hi_hz");
  if (band_hi_hz > nyquist_hz) {
    throw std::invalid_argument("band_hi_hz " + std::to_string(band_hi_hz) +
                                " exceeds Nyquist " + std::to_string(nyquist_hz));
  }
  if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be positive");
}

Psd periodogram(const TimeSeries& x, Window window, Detrend detrend) {
  const std::size_t n = x.size();
  if (n < 8) throw std::invalid_argument("periodogram needs at least 8 samples");
  const double fs = x.spec().sample_rate_hz();
  const double mean = detrend == Detrend::SubtractMean ? x.mean() : 0.0;

  std::vector<double> buf(x.samples().begin(), x.samples().end());
  double wpower = 1.0;
  if (window == Window::Hann) {
    // Periodic Hann, w[k] = 0.5 (1 - cos(2 pi k / n)).
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double w =
          0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / n));
      buf[k] = (buf[k] - mean) * w;
      acc += w * w;
    }
    wpower = acc / static_cast<double>(n);
  } else {
    for (auto& v : buf) v -= mean;
  }

  const auto mag2 = power_spectrum(buf);
  const double scale = 2.0 / (fs * static_cast<double>(n) * wpower);
  Psd psd;
  psd.convention = convention_tag(window, detrend);
  const std::size_t half = n / 2;
  psd.freqs_hz.resize(half);
  psd.power.resize(half);
  for (std::size_t k = 1; k <= half; ++k) {
    psd.freqs_hz[k - 1] = static_cast<double>(k) * fs / static_cast<double>(n);
    psd.power[k - 1] = scale * mag2[k];
  }
  return psd;
}

Psd log_bin(const Psd& psd, int bins_per_decade, double band_lo_hz, double band_hi_hz) {
  validate(psd);
  if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be positive");
  require_finite(band_lo_hz, "band_lo_hz");
  require_finite(band_hi_hz, "band_hi_hz");
  if (!(band_lo_hz > 0.0 && band_lo_hz < band_hi_hz)) {
    throw std::invalid_argument("log_bin: band must satisfy 0 < lo < hi");
  }
  if (psd.size() == 0 || band_hi_hz < psd.freqs_hz.front() ||
      band_lo_hz > psd.freqs_hz.back()) {
    throw std::invalid_argument("log_bin: band does not overlap the PSD");
  }

  const double width = 1.0 / bins_per_decade;
  const double span = std::log10(band_hi_hz / band_lo_hz);
  // Edges lo * 10^{j width}; a final sliver under 1e-9 decades is merged.
  const int nbins = std::max(1, static_cast<int>(std::ceil(span / width - 1e-9)));
  auto bin_of = [&](double f) {
    const int j = static_cast<int>(std::floor(std::log10(f / band_lo_hz) / width));
    return std::min(j, nbins - 1);
  };

  std::vector<double> log_f_sum(nbins, 0.0), p_sum(nbins, 0.0);
  std::vector<std::size_t> count(nbins, 0);
  for (std::size_t i = 0; i < psd.size(); ++i) {
    const double f = psd.freqs_hz[i];
    if (f < band_lo_hz || f > band_hi_hz) continue;
    const int j = bin_of(f);
    log_f_sum[j] += std::log(f);
    p_sum[j] += psd.power[i];
    ++count[j];
  }

  Psd out;
  out.convention = psd.convention + ";logbin=" + std::to_string(bins_per_decade);
  for (int j = 0; j < nbins; ++j) {
    if (count[j] == 0) continue;
    const double c = static_cast<double>(count[j]);
    out.freqs_hz.push_back(std::exp(log_f_sum[j] / c));
    out.power.push_back(p_sum[j] / c);
  }
  if (out.size() < 2) {
    throw std::invalid_argument("log_bin: fewer than 2 populated bins in band");
  }
  return out;
}

SlopeFit fit_slope(const Psd& psd, const FitConfig& cfg) {
  if (!(cfg.band_lo_hz > 0.0 && cfg.band_lo_hz < cfg.band_hi_hz)) {
    throw std::invalid_argument("fit_slope: band must satisfy 0 < lo < hi");
  }
  const Psd binned = log_bin(psd, cfg.bins_per_decade, cfg.band_lo_hz, cfg.band_hi_hz);
  const std::size_t m = binned.size();
  if (m < 5) {
    throw std::invalid_argument("fit_slope: only " + std::to_string(m) +
                                " binned points in band, need 5");
  }
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(binned.power[i] > 0.0)) {
      throw std::invalid_argument("fit_slope: zero power in band at " +
                                  std::to_string(binned.freqs_hz[i]) + " Hz");
    }
    lx[i] = std::log10(binned.freqs_hz[i]);
    ly[i] = std::log10(binned.power[i]);
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  fit.slope_stderr = m > 2 ? std::sqrt(sse / static_cast<double>(m - 2) / sxx) : 0.0;
  fit.band_lo_hz = cfg.band_lo_hz;
  fit.band_hi_hz = cfg.band_hi_hz;
  fit.decades = std::log10(cfg.band_hi_hz / cfg.band_lo_hz);
  fit.points_used = static_cast<int>(m);
  return fit;
}

Verdict pink_verdict(const SlopeFit& fit) {
  Verdict v;
  std::ostringstream why;
  if (!(fit.slope >= kPinkSlopeMin && fit.slope <= kPinkSlopeMax)) {
    v.failed.push_back("slope");
    why << "slope " << fit.slope << " outside [-1.5, -0.5]; ";
  }
  if (!(fit.decades >= kPinkMinDecades)) {
    v.failed.push_back("decades");
    why << "span " << fit.decades << " decades below 2; ";
  }
  if (!(fit.r_squared >= kPinkMinRSquared)) {
    v.failed.push_back("r_squared");
    why << "R^2 " << fit.r_squared << " below 0.8; ";
  }
  v.pink = v.failed.empty();
  v.rationale = v.pink ? "slope, span and fit quality all within pink-noise limits" : why.str();
  if (!v.pink) v.rationale.resize(v.rationale.size() - 2);
  return v;
}

}  // namespace beatlab::spectral
