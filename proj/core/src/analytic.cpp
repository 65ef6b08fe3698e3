#include "beatlab/analytic.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>
#include <stdexcept>
#include <string>

#include "beatlab/core.hpp"

namespace beatlab::analytic {

namespace {

struct Segment {
  double a, b, value, error;
};

constexpr int kMaxSplits = 20000;

// 15-point Kronrod rule with the embedded 7-point Gauss rule on [a, b]; the
// error estimate is the QUADPACK one, which is far less pessimistic than the
// raw |K - G| difference once the rule has converged.
Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  static const auto& xk = gauss_kronrod<double, 15>::abscissa();
  static const auto& wk = gauss_kronrod<double, 15>::weights();
  static const auto& xg = gauss<double, 7>::abscissa();
  static const auto& wg = gauss<double, 7>::weights();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, 15> fv{};
  std::array<double, 15> wkv{};
  double res_k = 0.0, res_g = 0.0, res_abs = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < xk.size(); ++i) {
    double wgi = 0.0;
    for (std::size_t j = 0; j < xg.size(); ++j) {
      if (std::abs(xg[j] - xk[i]) < 1e-14) wgi = wg[j];
    }
    const int copies = xk[i] == 0.0 ? 1 : 2;
    for (int s = 0; s < copies; ++s) {
      const double x = c + (s == 0 ? h : -h) * xk[i];
      const double y = f(x);
      if (!std::isfinite(y)) {
        throw NumericalError("integrate: integrand is not finite at " + std::to_string(x));
      }
      fv[m] = y;
      wkv[m] = wk[i];
      ++m;
      res_k += wk[i] * y;
      res_g += wgi * y;
      res_abs += wk[i] * std::abs(y);
    }
  }
  const double mean = 0.5 * res_k;
  double res_asc = 0.0;
  for (std::size_t i = 0; i < m; ++i) res_asc += wkv[i] * std::abs(fv[i] - mean);

  const double ah = std::abs(h);
  double err = std::abs((res_k - res_g) * h);
  res_asc *= ah;
  res_abs *= ah;
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return Segment{a, b, res_k * h, err};
}

void require_positive(double x, const char* what) {
  require_finite(x, what);
  if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_bounds(double omega1, double omega2) {
  require_positive(omega1, "omega1");
  require_positive(omega2, "omega2");
  if (omega1 > omega2) throw std::invalid_argument("omega1 must not exceed omega2");
}

// ln omega(t) along the upper branch and its second derivative in t.
double log_branch(double t, const ResonanceParams& rp) {
  return std::log(resonance_inverse(t, rp));
}

double log_branch_curvature(double t, const ResonanceParams& rp) {
  const double u = 4.0 / t - rp.kappa * rp.kappa;
  const double su = std::sqrt(u);
  const double omega = rp.omega0 + 0.5 * su;
  const double d1 = -1.0 / (t * t * su);
  const double d2 = 2.0 / (t * t * t * su) - 2.0 / (t * t * t * t * u * su);
  const double r = d1 / omega;
  return d2 / omega - r * r;
}

}  // namespace

void ExpSyncParams::validate() const {
  require_positive(p, "p");
  require_positive(lambda, "lambda");
  require_bounds(omega1, omega2);
}

void PowerSyncParams::validate() const {
  require_positive(p, "p");
  require_finite(alpha, "alpha");
  if (alpha == 0.0) throw std::invalid_argument("alpha must be nonzero");
  require_bounds(omega1, omega2);
}

void ResonanceParams::validate() const {
  require_positive(omega0, "omega0");
  require_positive(kappa, "kappa");
  require_positive(p, "p");
}

double p_exp(double omega, const ExpSyncParams& params) {
  params.validate();
  require_positive(omega, "omega");
  return params.p / (params.lambda * omega);
}

double q_exp(double delta, const ExpSyncParams& params) {
  params.validate();
  require_positive(delta, "delta");
  const double scale = params.p * params.p / (params.lambda * params.lambda * delta);
  return scale * (std::log1p(delta / params.omega1) - std::log1p(delta / params.omega2));
}

double p_pow(double omega, const PowerSyncParams& params) {
  params.validate();
  require_positive(omega, "omega");
  return std::abs(params.c()) * std::pow(omega, -params.beta());
}

double q_pow(double delta, const PowerSyncParams& params) {
  params.validate();
  const double c = std::abs(params.c());
  const double beta = params.beta();
  return beat_quadrature_oracle([c, beta](double w) { return c * std::pow(w, -beta); },
                                delta, params.omega1, params.omega2);
}

double resonance_curve(double omega, const ResonanceParams& params) {
  params.validate();
  require_finite(omega, "omega");
  const double half = 0.5 * params.kappa;
  const double x = omega - params.omega0;
  return 1.0 / (half * half + x * x);
}

double resonance_inverse(double t, const ResonanceParams& params) {
  params.validate();
  require_finite(t, "t");
  const double top = params.peak_value();
  if (!(t > 0.0) || t > top) {
    throw std::domain_error("resonance_inverse: t=" + std::to_string(t) +
                            " outside (0, 4/kappa^2]");
  }
  const double radicand = -t * (params.kappa * params.kappa * t - 4.0);
  return std::sqrt(std::max(radicand, 0.0)) / (2.0 * t) + params.omega0;
}

double p_resonance(double omega, const ResonanceParams& params) {
  params.validate();
  require_finite(omega, "omega");
  const double x = omega - params.omega0;
  const double d = params.kappa * params.kappa + 4.0 * x * x;
  return 32.0 * params.p * x / (d * d);
}

double InflectionApprox::operator()(double t) const { return a * std::exp(-b * t); }

InflectionApprox exp_approx_at_inflection(const ResonanceParams& params) {
  params.validate();
  const double top = params.peak_value();
  const double lo = params.t_min();
  const double hi = top * (1.0 - 1e-9);

  constexpr int kGrid = 4000;
  const double step = std::log(hi / lo) / (kGrid - 1);
  double prev_t = lo;
  double prev_v = log_branch_curvature(lo, params);
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    const double t = (i == kGrid - 1) ? hi : lo * std::exp(step * i);
    const double v = log_branch_curvature(t, params);
    if (std::signbit(v) != std::signbit(prev_v)) {
      bracket_lo = prev_t;
      bracket_hi = t;
      break;
    }
    prev_t = t;
    prev_v = v;
  }
  if (bracket_hi == 0.0) {
    throw NumericalError("exp_approx_at_inflection: no curvature sign change in (0, 4/kappa^2)");
  }

  const bool lo_sign = std::signbit(log_branch_curvature(bracket_lo, params));
  while (bracket_hi - bracket_lo > 1e-9 * bracket_lo) {
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    if (std::signbit(log_branch_curvature(mid, params)) == lo_sign) {
      bracket_lo = mid;
    } else {
      bracket_hi = mid;
    }
  }
  const double t_star = 0.5 * (bracket_lo + bracket_hi);

  const double h = 1e-6 * t_star;
  const double slope =
      (log_branch(t_star + h, params) - log_branch(t_star - h, params)) / (2.0 * h);
  InflectionApprox out;
  out.t_star = t_star;
  out.b = -slope;
  out.a = resonance_inverse(t_star, params) * std::exp(out.b * t_star);
  return out;
}

Integral integrate(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol) {
  require_finite(lo, "lo");
  require_finite(hi, "hi");
  if (lo > hi) throw std::invalid_argument("integrate: lo must not exceed hi");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate: rel_tol must be positive");
  Integral out;
  if (lo == hi) return out;

  // Initial panels: log-spaced over wide positive ranges, else uniform.
  const bool log_panels = lo > 0.0 && hi / lo > 10.0;
  const int panels = log_panels ? static_cast<int>(std::ceil(4.0 * std::log10(hi / lo))) : 4;
  std::vector<Segment> heap;
  double a = lo;
  for (int k = 1; k <= panels; ++k) {
    double b = hi;
    if (k < panels) {
      b = log_panels ? lo * std::pow(hi / lo, static_cast<double>(k) / panels)
                     : lo + (hi - lo) * static_cast<double>(k) / panels;
    }
    heap.push_back(kronrod15(f, a, b));
    a = b;
  }
  const auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::make_heap(heap.begin(), heap.end(), worse);

  auto totals = [&] {
    Integral t;
    for (const auto& seg : heap) {
      t.value += seg.value;
      t.error += seg.error;
    }
    return t;
  };
  out = totals();
  int splits = 0;
  while (out.error > rel_tol * std::abs(out.value) + 1e-300) {
    if (++splits > kMaxSplits) {
      throw NumericalError("integrate: no convergence after " + std::to_string(kMaxSplits) +
                           " subdivisions (value " + std::to_string(out.value) + ", error " +
                           std::to_string(out.error) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalError("integrate: interval collapsed near " + std::to_string(mid));
    }
    for (const Segment& half : {kronrod15(f, worst.a, mid), kronrod15(f, mid, worst.b)}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end(), worse);
    }
    out = totals();
  }
  return out;
}

double beat_quadrature_oracle(const std::function<double(double)>& density, double delta,
                              double lo, double hi) {
  require_positive(delta, "delta");
  require_finite(lo, "lo");
  require_finite(hi, "hi");
  if (lo > hi) throw std::invalid_argument("beat_quadrature_oracle: lo must not exceed hi");
  if (lo == hi) return 0.0;
  return integrate([&](double w) { return density(w + delta) * density(w); }, lo, hi, 1e-8)
      .value;
}

}  // namespace beatlab::analytic
