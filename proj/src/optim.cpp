#include "oudesign/optim.hpp"

#include <numeric>
#include <vector>

namespace oudesign::num {

SimplexResult nelder_mead_min(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x0, double step, double ftol, double xtol,
    int maxit) {
  const int dim = static_cast<int>(x0.size());
  const int m = dim + 1;

  Eigen::MatrixXd v(dim, m);   // simplex vertices as columns
  Eigen::VectorXd fv(m);
  for (int i = 0; i < m; ++i) {
    v.col(i) = x0;
    if (i > 0) v(i - 1, i) += step;
    fv(i) = f(v.col(i));
  }

  std::vector<int> order(m);
  SimplexResult res;
  int it = 0;
  for (; it < maxit; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fv(a) < fv(b); });
    const int best = order.front(), worst = order.back(), second = order[m - 2];

    double diam = 0.0;
    for (int i = 1; i < m; ++i)
      diam = std::max(diam, (v.col(order[i]) - v.col(best)).norm());
    if (std::abs(fv(worst) - fv(best)) <= ftol * (1.0 + std::abs(fv(best))) &&
        diam <= xtol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < m; ++i)
      if (i != worst) centroid += v.col(i);
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd xr = 2.0 * centroid - v.col(worst);
    const double fr = f(xr);
    if (fr < fv(best)) {
      const Eigen::VectorXd xe = 3.0 * centroid - 2.0 * v.col(worst);
      const double fe = f(xe);
      v.col(worst) = fe < fr ? xe : xr;
      fv(worst) = std::min(fe, fr);
    } else if (fr < fv(second)) {
      v.col(worst) = xr;
      fv(worst) = fr;
    } else {
      const bool outside = fr < fv(worst);
      const Eigen::VectorXd xc =
          outside ? 0.5 * (centroid + xr) : 0.5 * (centroid + v.col(worst));
      const double fc = f(xc);
      if (fc < (outside ? fr : fv(worst))) {
        v.col(worst) = xc;
        fv(worst) = fc;
      } else {  // shrink toward best
        for (int i = 0; i < m; ++i) {
          if (i == best) continue;
          v.col(i) = 0.5 * (v.col(best) + v.col(i));
          fv(i) = f(v.col(i));
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i < m; ++i)
    if (fv(i) < fv(best)) best = i;
  res.x = v.col(best);
  res.fx = fv(best);
  res.iterations = it;
  return res;
}

}  // namespace oudesign::num
