#include "oudesign/covariance.hpp"

#include <cmath>

#include "oudesign/kernel.hpp"

namespace oudesign {

namespace {

void check_dense_size(const Design& dz, int dense_cap) {
  detail::require(dz.size() <= dense_cap,
                  "dense covariance path: design exceeds the dense-size cap (" +
                      std::to_string(dense_cap) + " observation pairs)");
}

// Fills the symmetric block structure from a generator of the upper block
// (j < k) and a fixed diagonal block.
template <class UpperBlock>
Eigen::MatrixXd assemble_blocks(const Design& dz, const Eigen::Matrix2d& diag,
                                UpperBlock upper) {
  const int n = dz.size();
  const auto& t = dz.times();
  Eigen::MatrixXd m(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    m.block<2, 2>(2 * j, 2 * j) = diag;
    for (int k = j + 1; k < n; ++k) {
      const Eigen::Matrix2d b = upper(t[k] - t[j]);
      m.block<2, 2>(2 * j, 2 * k) = b;
      m.block<2, 2>(2 * k, 2 * j) = b.transpose();
    }
  }
  return m;
}

}  // namespace

Eigen::MatrixXd covariance_matrix(const OUParams& p, const Design& dz,
                                  int dense_cap) {
  p.require_normalized();
  check_dense_size(dz, dense_cap);
  return assemble_blocks(dz, Eigen::Matrix2d::Identity(),
                         [&](double tau) { return rotation_block(p, tau); });
}

Eigen::MatrixXd covariance_inverse_closed(const OUParams& p, const Design& dz) {
  p.require_normalized();
  const int n = dz.size();
  const auto& d = dz.spacings();

  // u_k = 1/(1 - q_k^2) with q_k = e^{-lambda d_k}
  std::vector<double> u(d.size()), q2(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    q2[k] = std::exp(-2.0 * p.lambda * d[k]);
    const double em = -std::expm1(-2.0 * p.lambda * d[k]);
    detail::require(em > 0.0, "covariance_inverse_closed: zero spacing");
    u[k] = 1.0 / em;
  }

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    double v;
    if (j == 0)
      v = u[0];
    else if (j == n - 1)
      v = u[static_cast<std::size_t>(n - 2)];
    else
      v = u[static_cast<std::size_t>(j)] +
          q2[static_cast<std::size_t>(j - 1)] * u[static_cast<std::size_t>(j - 1)];
    m.block<2, 2>(2 * j, 2 * j) = v * Eigen::Matrix2d::Identity();
  }
  for (int k = 0; k + 1 < n; ++k) {
    const Eigen::Matrix2d b =
        -u[static_cast<std::size_t>(k)] *
        rotation_block(p, d[static_cast<std::size_t>(k)]);
    m.block<2, 2>(2 * k, 2 * (k + 1)) = b;
    m.block<2, 2>(2 * (k + 1), 2 * k) = b.transpose();
  }
  return m;
}

Eigen::MatrixXd covariance_deriv_lambda(const OUParams& p, const Design& dz,
                                        int dense_cap) {
  p.require_normalized();
  check_dense_size(dz, dense_cap);
  return assemble_blocks(dz, Eigen::Matrix2d::Zero(), [&](double tau) {
    return Eigen::Matrix2d(-tau * rotation_block(p, tau));
  });
}

Eigen::MatrixXd covariance_deriv_omega(const OUParams& p, const Design& dz,
                                       int dense_cap) {
  p.require_normalized();
  check_dense_size(dz, dense_cap);
  return assemble_blocks(dz, Eigen::Matrix2d::Zero(), [&](double tau) {
    const double e = std::exp(-p.lambda * tau);
    const double c = std::cos(p.omega * tau);
    const double s = std::sin(p.omega * tau);
    Eigen::Matrix2d b;
    b << -s, -c, c, -s;
    return Eigen::Matrix2d(tau * e * b);
  });
}

}  // namespace oudesign
