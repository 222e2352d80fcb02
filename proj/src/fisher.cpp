#include "oudesign/fisher.hpp"

#include <cmath>

#include "oudesign/covariance.hpp"
#include "oudesign/kernel.hpp"

namespace oudesign {

double trend_info_general(const OUParams& p, const Design& dz,
                          const TrendSpec& trend) {
  p.require_normalized();
  const auto& t = dz.times();
  const auto& d = dz.spacings();
  const int n = dz.size();

  const double f1n = trend.f1(t[static_cast<std::size_t>(n - 1)]);
  const double f2n = trend.f2(t[static_cast<std::size_t>(n - 1)]);
  double q = f1n * f1n + f2n * f2n;

  for (int j = 0; j + 1 < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double a1 = trend.f1(t[ju]), a2 = trend.f2(t[ju]);
    const double b1 = trend.f1(t[ju + 1]), b2 = trend.f2(t[ju + 1]);
    const double e1 = std::exp(-p.lambda * d[ju]);
    const double e2 = e1 * e1;
    const double denom = -std::expm1(-2.0 * p.lambda * d[ju]);
    const double cross = (a1 * b2 - a2 * b1) * std::sin(p.omega * d[ju]) -
                         (a1 * b1 + a2 * b2) * std::cos(p.omega * d[ju]);
    q += (a1 * a1 + a2 * a2 + e2 * (b1 * b1 + b2 * b2) + 2.0 * e1 * cross) /
         denom;
  }
  return q;
}

CovInfo cov_info(const OUParams& p, const Design& dz) {
  p.require_normalized();
  CovInfo out;
  out.omega_zero = (p.omega == 0.0);
  for (double d : dz.spacings()) {
    out.i_lambda += phi_func(p, d);
    out.i_omega += psi_func(p, d);
  }
  return out;
}

FisherBlocks fisher_blocks(const OUParams& p, const Design& dz,
                           const TrendSpec& trend) {
  const CovInfo c = cov_info(p, dz);
  FisherBlocks fb;
  fb.q_n = trend_info_general(p, dz, trend);
  fb.i_lambda = c.i_lambda;
  fb.i_omega = c.i_omega;
  fb.cross = c.cross;
  fb.omega_zero = c.omega_zero;
  return fb;
}

Eigen::Matrix4d full_fim(const OUParams& p, const Design& dz,
                         const TrendSpec& trend) {
  const FisherBlocks fb = fisher_blocks(p, dz, trend);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = fb.q_n;
  m(1, 1) = fb.q_n;
  m(2, 2) = fb.i_lambda;
  m(3, 3) = fb.i_omega;
  return m;
}

Eigen::MatrixXd trend_basis_matrix(const Design& dz, const TrendSpec& trend) {
  const auto& t = dz.times();
  Eigen::MatrixXd h(2, 2 * dz.size());
  for (int j = 0; j < dz.size(); ++j) {
    const double f1 = trend.f1(t[static_cast<std::size_t>(j)]);
    const double f2 = trend.f2(t[static_cast<std::size_t>(j)]);
    h(0, 2 * j) = f1;
    h(0, 2 * j + 1) = f2;
    h(1, 2 * j) = -f2;
    h(1, 2 * j + 1) = f1;
  }
  return h;
}

Eigen::Matrix2d oracle_trend_fim(const OUParams& p, const Design& dz,
                                 const TrendSpec& trend) {
  const Eigen::MatrixXd c = covariance_matrix(p, dz);
  const Eigen::MatrixXd h = trend_basis_matrix(dz, trend);
  const Eigen::MatrixXd cinv_ht = c.ldlt().solve(h.transpose());
  return h * cinv_ht;
}

Eigen::Matrix2d oracle_cov_fim(const OUParams& p, const Design& dz) {
  const Eigen::MatrixXd c = covariance_matrix(p, dz);
  const auto solver = c.ldlt();
  const Eigen::MatrixXd sl = solver.solve(covariance_deriv_lambda(p, dz));
  const Eigen::MatrixXd so = solver.solve(covariance_deriv_omega(p, dz));
  Eigen::Matrix2d out;
  out(0, 0) = 0.5 * (sl * sl).trace();
  out(1, 1) = 0.5 * (so * so).trace();
  out(0, 1) = out(1, 0) = 0.5 * (sl * so).trace();
  return out;
}

}  // namespace oudesign
