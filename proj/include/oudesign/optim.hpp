#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "oudesign/types.hpp"

// Scalar root bracketing / line search and a small Nelder-Mead simplex.
// All routines are deterministic.

namespace oudesign::num {

struct RootResult {
  double x = std::numeric_limits<double>::quiet_NaN();
  double fx = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool converged = false;
};

// Brent's method on a sign-changing bracket [a, b].
template <class F>
RootResult brent_root(F&& f, double a, double b, double xtol = 1e-14,
                      int maxit = 200) {
  RootResult res;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {a, fa, 0, true};
  if (fb == 0.0) return {b, fb, 0, true};
  detail::require(fa * fb < 0.0, "brent_root: endpoints must bracket a root");

  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < maxit; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() *
                           std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) {
      res = {b, fb, it, true};
      return res;
    }
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;  // bisection
    } else {
      double s = fb / fa, p, qq;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        qq = 1.0 - s;
      } else {  // inverse quadratic
        const double q = fa / fc, r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        qq = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) qq = -qq; else p = -p;
      if (2.0 * p < std::min(3.0 * m * qq - std::abs(tol * qq),
                             std::abs(e * qq))) {
        e = d;
        d = p / qq;
      } else {
        d = e = m;
      }
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = e = b - a;
    }
    res.iterations = it + 1;
  }
  res.x = b;
  res.fx = fb;
  return res;
}

struct LineResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Golden-section maximization on [a, b] for a unimodal objective.
template <class F>
LineResult golden_max(F&& f, double a, double b, double xtol = 1e-12,
                      int maxit = 300) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int it = 0;
  while (b - a > xtol * (1.0 + std::abs(a) + std::abs(b)) && it < maxit) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
    ++it;
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm), it};
}

struct SimplexResult {
  Eigen::VectorXd x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead minimization with standard reflection/expansion/contraction
// coefficients.  Stops when both the objective spread and the simplex
// diameter fall under tolerance.
SimplexResult nelder_mead_min(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x0, double step, double ftol = 1e-13,
    double xtol = 1e-10, int maxit = 20000);

}  // namespace oudesign::num
