#include "oudesign/efficiency.hpp"

#include <cmath>

#include "oudesign/kernel.hpp"
#include "oudesign/parallel.hpp"
#include "oudesign/solver.hpp"

namespace oudesign {

double efficiency_ratio(double d, double lam, double om, int n) {
  detail::require(std::isfinite(d) && d > 0.0,
                  "efficiency_ratio: d must be > 0");
  detail::require(n >= 2, "efficiency_ratio: n must be >= 2");
  const double m = static_cast<double>(n - 1);
  const double num = 1.0 + m * g_func(OUParams(1.0, 1.0), d);
  const double den = 1.0 + m * g_func(OUParams(lam, om), d);
  return (num / den) * (num / den);
}

namespace {

EfficiencyGrid surface_impl(EfficiencyAxis axis, std::span<const double> d_grid,
                            std::span<const double> param_grid, int n,
                            bool parallel) {
  detail::require(!d_grid.empty() && !param_grid.empty(),
                  "efficiency_surface: grids must be nonempty");
  for (std::size_t i = 0; i + 1 < d_grid.size(); ++i)
    detail::require(d_grid[i] < d_grid[i + 1],
                    "efficiency_surface: d grid must be strictly increasing");
  for (std::size_t i = 0; i + 1 < param_grid.size(); ++i)
    detail::require(param_grid[i] < param_grid[i + 1],
                    "efficiency_surface: parameter grid must be strictly "
                    "increasing");
  for (double d : d_grid)
    detail::require(d > 0.0, "efficiency_surface: d values must be > 0");
  if (axis == EfficiencyAxis::Lambda)
    for (double v : param_grid)
      detail::require(v > 0.0, "efficiency_surface: lambda values must be > 0");

  EfficiencyGrid grid;
  grid.axis = axis;
  grid.d_values.assign(d_grid.begin(), d_grid.end());
  grid.param_values.assign(param_grid.begin(), param_grid.end());
  grid.n = n;
  grid.r.resize(static_cast<Eigen::Index>(d_grid.size()),
                static_cast<Eigen::Index>(param_grid.size()));

  const int rows = static_cast<int>(d_grid.size());
  const int cols = static_cast<int>(param_grid.size());
  const int threads = par::thread_cap();

#pragma omp parallel for collapse(2) schedule(static) num_threads(threads) \
    if (parallel)
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double lam = axis == EfficiencyAxis::Lambda ? param_grid[j] : 1.0;
      const double om = axis == EfficiencyAxis::Omega ? param_grid[j] : 1.0;
      grid.r(i, j) = efficiency_ratio(d_grid[i], lam, om, n);
    }
  }
  return grid;
}

}  // namespace

EfficiencyGrid efficiency_surface(EfficiencyAxis axis,
                                  std::span<const double> d_grid,
                                  std::span<const double> param_grid, int n) {
  return surface_impl(axis, d_grid, param_grid, n, true);
}

EfficiencyGrid efficiency_surface_serial(EfficiencyAxis axis,
                                         std::span<const double> d_grid,
                                         std::span<const double> param_grid,
                                         int n) {
  return surface_impl(axis, d_grid, param_grid, n, false);
}

namespace {

// lambda^2 coefficient of R(d*, lambda, 1; n) by Richardson in lambda:
// R/l^2 = c + e*l + O(l^2), so 2*(R(l)/l^2) - R(2l)/(2l)^2 = c + O(l^2).
double lambda_quadratic_coeff(double d_star, int n) {
  const double l1 = 1e-3;
  const double c1 = efficiency_ratio(d_star, l1, 1.0, n) / (l1 * l1);
  const double c2 = efficiency_ratio(d_star, 2.0 * l1, 1.0, n) / (4.0 * l1 * l1);
  return 2.0 * c1 - c2;
}

struct OmegaFit {
  double intercept;
  double slope;
};

// R(d*, 1, omega; n) = a - b omega^2 + O(omega^4); slope by Richardson on
// the difference quotient, intercept at omega = 0 directly.
OmegaFit omega_quadratic_fit(double d_star, int n) {
  const double w1 = 0.02;
  const double r0 = efficiency_ratio(d_star, 1.0, 0.0, n);
  const double s1 = (r0 - efficiency_ratio(d_star, 1.0, w1, n)) / (w1 * w1);
  const double s2 =
      (r0 - efficiency_ratio(d_star, 1.0, 2.0 * w1, n)) / (4.0 * w1 * w1);
  return {r0, (4.0 * s1 - s2) / 3.0};
}

}  // namespace

TaylorLimitReport taylor_limit_checks(int n_max) {
  detail::require(n_max >= 100, "taylor_limit_checks: n_max must be >= 100");

  TaylorLimitReport rep;
  rep.n_max = n_max;
  rep.d_star = optimal_trend_spacing(OUParams(1.0, 1.0)).spacing();

  // Richardson in n: the coefficient approaches its limit like 1/n.
  const double c_half = lambda_quadratic_coeff(rep.d_star, n_max / 2);
  const double c_full = lambda_quadratic_coeff(rep.d_star, n_max);
  rep.lambda_limit_constant = 2.0 * c_full - c_half;

  const OmegaFit at10 = omega_quadratic_fit(rep.d_star, rep.omega_eval_n);
  rep.omega_intercept = at10.intercept;
  rep.omega_slope = at10.slope;

  const OmegaFit f_half = omega_quadratic_fit(rep.d_star, n_max / 2);
  const OmegaFit f_full = omega_quadratic_fit(rep.d_star, n_max);
  rep.omega_intercept_limit = 2.0 * f_full.intercept - f_half.intercept;
  rep.omega_slope_limit = 2.0 * f_full.slope - f_half.slope;

  rep.lambda_rel_err =
      std::abs(rep.lambda_limit_constant - rep.reference_lambda_constant) /
      rep.reference_lambda_constant;
  rep.intercept_rel_err =
      std::abs(rep.omega_intercept - rep.reference_omega_intercept) /
      rep.reference_omega_intercept;
  rep.slope_rel_err = std::abs(rep.omega_slope - rep.reference_omega_slope) /
                      rep.reference_omega_slope;
  return rep;
}

}  // namespace oudesign
