#pragma once

#include <Eigen/Dense>

#include "oudesign/types.hpp"

namespace oudesign {

// Information on the covariance pair (lambda, omega); the cross term is
// identically zero and omega never enters the entries.
struct CovInfo {
  double i_lambda = 0.0;
  double i_omega = 0.0;
  double cross = 0.0;      // exactly 0 by construction
  bool omega_zero = false; // flagged when evaluated at omega == 0
};

// The assembled information: trend block q_n * I_2, covariance block
// diag(i_lambda, i_omega), off-diagonal 2x2 zero blocks.
struct FisherBlocks {
  double q_n = 0.0;
  double i_lambda = 0.0;
  double i_omega = 0.0;
  double cross = 0.0;
  bool omega_zero = false;

  // det of the 4x4: q_n^2 * i_lambda * i_omega.
  double det() const { return q_n * q_n * i_lambda * i_omega; }
};

// Scalar Q(n) such that the trend information matrix equals Q(n) I_2.
// General trend basis:
//   Q(n) = f1^2(t_n) + f2^2(t_n)
//        + sum_j (1 - e^{-2 lambda d_j})^{-1} [ f1^2(t_j) + f2^2(t_j)
//          + e^{-2 lambda d_j} (f1^2(t_{j+1}) + f2^2(t_{j+1}))
//          + 2 e^{-lambda d_j} ( (f1(t_j) f2(t_{j+1}) - f2(t_j) f1(t_{j+1})) sin(omega d_j)
//                              - (f1(t_j) f1(t_{j+1}) + f2(t_j) f2(t_{j+1})) cos(omega d_j) ) ].
// For the constant trend this reduces exactly to 1 + sum g(d_j).
double trend_info_general(const OUParams& p, const Design& dz,
                          const TrendSpec& trend);

// i_lambda = sum phi(d_j), i_omega = sum psi(d_j), cross = 0.
CovInfo cov_info(const OUParams& p, const Design& dz);

FisherBlocks fisher_blocks(const OUParams& p, const Design& dz,
                           const TrendSpec& trend);

// Block-diagonal 4x4 [Q I_2, 0; 0, diag(i_lambda, i_omega)] on
// (m1, m2, lambda, omega).
Eigen::Matrix4d full_fim(const OUParams& p, const Design& dz,
                         const TrendSpec& trend);

// 2 x 2n regression matrix H(n): column pair j holds
//   [ f1(t_j)  f2(t_j) ]
//   [ -f2(t_j) f1(t_j) ]
// so that the stacked mean is H^T (m1, m2)^T.
Eigen::MatrixXd trend_basis_matrix(const Design& dz, const TrendSpec& trend);

// Dense verification path: H(n) C(n)^{-1} H(n)^T evaluated literally.
// Independent of every closed form above.
Eigen::Matrix2d oracle_trend_fim(const OUParams& p, const Design& dz,
                                 const TrendSpec& trend);

// Dense verification path for the covariance block:
//   (1/2) tr{ C^{-1} dC/da C^{-1} dC/db },  a, b in {lambda, omega},
// with entrywise-analytic derivative matrices.
Eigen::Matrix2d oracle_cov_fim(const OUParams& p, const Design& dz);

}  // namespace oudesign
