#pragma once

#include <functional>

#include "beatlab/core.hpp"

namespace beatlab::analytic {

// Exponential approach omega = e^{-lambda t} with constant time density p.
// omega1 == omega2 is accepted and describes an empty integration domain.
struct ExpSyncParams {
  double p = 1.0;
  double lambda = 1.0;
  double omega1 = 1e-4;
  double omega2 = 1e5;

  void validate() const;
};

// Power approach omega = t^{-alpha}; P(omega) = c omega^{-beta} with
// c = p / alpha and beta = 1 + 1 / alpha.
//
// For alpha < 0 the literal prefactor c is negative, which would make P a
// negative density. density() uses |c| instead and sign_flipped() reports
// that the convention was applied.
struct PowerSyncParams {
  double p = 1.0;
  double alpha = 3.0;
  double omega1 = 1e-4;
  double omega2 = 1e5;

  void validate() const;
  double c() const noexcept { return p / alpha; }
  double beta() const noexcept { return 1.0 + 1.0 / alpha; }
  bool sign_flipped() const noexcept { return alpha < 0.0; }
};

// Lorentzian resonance with peak at omega0 (Hz) and full width kappa.
struct ResonanceParams {
  double omega0 = 10.0;
  double kappa = 0.1;
  double p = 1.0;

  void validate() const;
  // Peak height of resonance_curve, 4 / kappa^2; also the top of the
  // domain of resonance_inverse.
  double peak_value() const noexcept { return 4.0 / (kappa * kappa); }
  // Smallest t consumers should pass to resonance_inverse.
  double t_min() const noexcept { return 1e-12 * peak_value(); }
};

// Frequency density of the exponential approach, p / (lambda omega).
double p_exp(double omega, const ExpSyncParams& params);

// Closed-form beat-frequency density
//   Q(delta) = p^2 / (lambda^2 delta) ln[omega2 (omega1 + delta) / (omega1 (omega2 + delta))].
double q_exp(double delta, const ExpSyncParams& params);

// |c| omega^{-beta}.
double p_pow(double omega, const PowerSyncParams& params);

// Beat-frequency density of the power approach by adaptive quadrature of
// int_{omega1}^{omega2} P(omega + delta) P(omega) d omega.
double q_pow(double delta, const PowerSyncParams& params);

// R[omega] = 1 / ((kappa/2)^2 + (omega - omega0)^2).
double resonance_curve(double omega, const ResonanceParams& params);

// Upper branch of the inverse of resonance_curve. Defined for
// 0 < t <= 4/kappa^2; throws std::domain_error outside that interval.
double resonance_inverse(double t, const ResonanceParams& params);

// Frequency density p |d omega / dt|^{-1} along the upper branch:
//   32 p (omega - omega0) / (kappa^2 + 4 (omega - omega0)^2)^2.
double p_resonance(double omega, const ResonanceParams& params);

// Exponential omega ~ A e^{-B t} tangent to ln(resonance_inverse(t)) at the
// inflection point t_star of the log-linear curve.
struct InflectionApprox {
  double a = 0.0;
  double b = 0.0;
  double t_star = 0.0;

  double operator()(double t) const;
};

// Locates the sign change of d^2/dt^2 ln(resonance_inverse(t)) by scanning a
// log-spaced grid on (t_min, 4/kappa^2) and bisecting to 1e-9 relative in t.
// Throws beatlab::NumericalError if no sign change exists.
InflectionApprox exp_approx_at_inflection(const ResonanceParams& params);

// Result of an adaptive quadrature.
struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi]. The domain is
// first cut into panels (log-spaced when lo > 0 and the interval spans more
// than a decade); the panel with the largest error estimate is then bisected
// until the summed estimate is at most rel_tol * |value| + 1e-300. Throws
// beatlab::NumericalError if that takes more than 20000 bisections or the
// integrand returns a non-finite value.
Integral integrate(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol = 1e-8);

// int_{lo}^{hi} P(omega + delta) P(omega) d omega with relative tolerance 1e-8.
// lo == hi yields 0.
double beat_quadrature_oracle(const std::function<double(double)>& density, double delta,
                              double lo, double hi);

}  // namespace beatlab::analytic
