#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "oudesign/types.hpp"

// Scalar information kernels of the complex OU model and the 2x2
// rotation-damping block algebra.  Everything here is written in terms of
// q = exp(-lambda x): the hyperbolic forms overflow once lambda*x
// exceeds ~350, the q-forms never do.

namespace oudesign {

// e^{A tau} = e^{-lambda tau} [cos(omega tau), -sin(omega tau);
//                              sin(omega tau),  cos(omega tau)].
// Equals the correlation block R(tau) of the normalized process.
inline Eigen::Matrix2d rotation_block(const OUParams& p, double tau) {
  detail::require(std::isfinite(tau) && tau >= 0.0,
                  "rotation_block: tau must be finite and >= 0");
  const double e = std::exp(-p.lambda * tau);
  const double c = std::cos(p.omega * tau);
  const double s = std::sin(p.omega * tau);
  Eigen::Matrix2d m;
  m << e * c, -e * s, e * s, e * c;
  return m;
}

// Per-spacing trend information increment
//   g(x) = (1 - 2 q cos(omega x) + q^2) / (1 - q^2),   g(0) := 0.
// The numerator is evaluated as (1-q)^2 + 4 q sin^2(omega x / 2), which is
// exact-signed and cancellation-free near x = 0.
inline double g_func(const OUParams& p, double x) {
  detail::require(std::isfinite(x) && x >= 0.0, "g_func: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double q = std::exp(-p.lambda * x);
  const double one_minus_q = -std::expm1(-p.lambda * x);
  const double sh = std::sin(0.5 * p.omega * x);
  const double num = one_minus_q * one_minus_q + 4.0 * q * sh * sh;
  return num / (one_minus_q * (1.0 + q));
}

// phi(x) = x^2 e^{-lambda x} cosh(lambda x) / sinh^2(lambda x)
//        = 2 x^2 q^2 (1 + q^2) / (1 - q^2)^2,   phi(0) := 1/lambda^2.
inline double phi_func(const OUParams& p, double x) {
  detail::require(std::isfinite(x) && x >= 0.0, "phi_func: x must be >= 0");
  if (x == 0.0) return 1.0 / (p.lambda * p.lambda);
  const double q = std::exp(-p.lambda * x);
  const double em = -std::expm1(-2.0 * p.lambda * x);  // 1 - q^2
  return 2.0 * x * x * q * q * (1.0 + q * q) / (em * em);
}

// psi(x) = x^2 e^{-lambda x} / sinh(lambda x)
//        = 2 x^2 q^2 / (1 - q^2),   psi(0) := 0.
inline double psi_func(const OUParams& p, double x) {
  detail::require(std::isfinite(x) && x >= 0.0, "psi_func: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double q = std::exp(-p.lambda * x);
  const double em = -std::expm1(-2.0 * p.lambda * x);
  return 2.0 * x * x * q * q / em;
}

// r(x) = lambda cosh(lambda x) cos(omega x)
//      + omega sinh(lambda x) sin(omega x) - lambda.
// g'(x) = r(x) / sinh^2(lambda x); the critical points of g are the roots
// of r.  Literal form; overflows for lambda*x beyond ~709 (use r_scaled
// for root bracketing).
inline double r_func(const OUParams& p, double x) {
  detail::require(std::isfinite(x) && x > 0.0, "r_func: x must be > 0");
  const double lx = p.lambda * x;
  return p.lambda * std::cosh(lx) * std::cos(p.omega * x) +
         p.omega * std::sinh(lx) * std::sin(p.omega * x) - p.lambda;
}

// 2 e^{-lambda x} r(x): same sign and roots as r, finite for all x > 0.
inline double r_func_scaled(const OUParams& p, double x) {
  const double q = std::exp(-p.lambda * x);
  const double q2 = q * q;
  return p.lambda * (1.0 + q2) * std::cos(p.omega * x) +
         p.omega * (1.0 - q2) * std::sin(p.omega * x) - 2.0 * p.lambda * q;
}

// At a root x0 of r:  g''(x0) = (lambda^2 + omega^2) cos(omega x0) /
// sinh(lambda x0).  Classifies the critical point (max iff negative).
inline double g_second_deriv_critical(const OUParams& p, double x0) {
  detail::require(std::isfinite(x0) && x0 > 0.0,
                  "g_second_deriv_critical: x0 must be > 0");
  return (p.lambda * p.lambda + p.omega * p.omega) * std::cos(p.omega * x0) /
         std::sinh(p.lambda * x0);
}

// (1 + q)/(1 - q): majorizes g (replace cos by -1), strictly decreasing,
// tends to 1.  Used as the global-scan stopping envelope.
inline double g_envelope(const OUParams& p, double x) {
  const double q = std::exp(-p.lambda * x);
  return (1.0 + q) / (-std::expm1(-p.lambda * x));
}

// phi'(x) = 4 x q^2 (1 - lambda x - 3 lambda x q^2 - q^4) / (1 - q^2)^3,
// strictly negative for x > 0.
inline double phi_deriv(const OUParams& p, double x) {
  detail::require(std::isfinite(x) && x > 0.0, "phi_deriv: x must be > 0");
  const double q2 = std::exp(-2.0 * p.lambda * x);
  const double em = -std::expm1(-2.0 * p.lambda * x);
  const double lx = p.lambda * x;
  return 4.0 * x * q2 * (1.0 - lx - 3.0 * lx * q2 - q2 * q2) / (em * em * em);
}

// psi'(x) = 4 x q^2 (1 - lambda x - q^2) / (1 - q^2)^2; vanishes exactly
// where 1 - lambda x - e^{-2 lambda x} = 0.
inline double psi_deriv(const OUParams& p, double x) {
  detail::require(std::isfinite(x) && x > 0.0, "psi_deriv: x must be > 0");
  const double q2 = std::exp(-2.0 * p.lambda * x);
  const double em = -std::expm1(-2.0 * p.lambda * x);
  const double lx = p.lambda * x;
  return 4.0 * x * q2 * (1.0 - lx - q2) / (em * em);
}

// kappa(x) = (1 - x + (x-2) e^{-2x} + e^{-4x}) / (x - 1 + 3x e^{-2x} + e^{-4x})
// in the lambda = 1 scaling.  Strictly decreasing from 1 (x -> 0+) to -1
// (x -> inf); both numerator and denominator are O(x^2) near 0, so the
// direct evaluation is accurate for x down to ~1e-5.
inline double kappa_func(double x) {
  detail::require(std::isfinite(x) && x > 0.0, "kappa_func: x must be > 0");
  const double e2 = std::exp(-2.0 * x);
  const double e4 = e2 * e2;
  return (1.0 - x + (x - 2.0) * e2 + e4) / (x - 1.0 + 3.0 * x * e2 + e4);
}

}  // namespace oudesign
