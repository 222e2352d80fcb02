#pragma once

#include <Eigen/Dense>

#include "oudesign/types.hpp"

namespace oudesign {

// Largest design size admitted on the dense 2n x 2n paths.  The dense
// matrices exist to back the O(n^3) verification oracles; closed-form
// paths carry no cap.
inline constexpr int kDenseSizeCap = 2048;

// Correlation matrix C(n) of the stacked observation vector
// (Y1(t_1), Y2(t_1), ..., Y1(t_n), Y2(t_n)): block (j,k) for k >= j is
// e^{A(t_k - t_j)}, block (k,j) its transpose.  Symmetric positive
// definite.  Requires the normalized process.
Eigen::MatrixXd covariance_matrix(const OUParams& p, const Design& dz,
                                  int dense_cap = kDenseSizeCap);

// Closed-form inverse of C(n): block tridiagonal with
//   U_k = (1 - e^{-2 lambda d_k})^{-1} I_2,
//   diagonal  U_1, V_2, ..., V_{n-1}, U_{n-1},
//   V_k = U_k + e^{-2 lambda d_{k-1}} U_{k-1},
//   off-diagonal (k, k+1) = -e^{A d_k} U_k.
// No size cap; O(n) nonzero blocks.
Eigen::MatrixXd covariance_inverse_closed(const OUParams& p, const Design& dz);

// Entrywise-analytic derivative of C(n) in lambda: each off-diagonal
// block e^{A tau} differentiates to -tau e^{A tau}; diagonal blocks are
// constant.  Verification-oracle input.
Eigen::MatrixXd covariance_deriv_lambda(const OUParams& p, const Design& dz,
                                        int dense_cap = kDenseSizeCap);

// Entrywise-analytic derivative of C(n) in omega:
// d/d omega e^{-lambda tau} [c, -s; s, c] = tau e^{-lambda tau} [-s, -c; c, -s].
Eigen::MatrixXd covariance_deriv_omega(const OUParams& p, const Design& dz,
                                       int dense_cap = kDenseSizeCap);

}  // namespace oudesign
