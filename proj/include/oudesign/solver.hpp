#pragma once

#include <span>
#include <string>
#include <vector>

#include "oudesign/types.hpp"

namespace oudesign {

enum class Criterion { TrendD, LambdaD, OmegaD, CovJointD, AllParamsD };

const char* criterion_name(Criterion c);

enum class OptimMode { Equidistant, Free };

struct SolverDiagnostics {
  int iterations = 0;    // refinement iterations (all stages)
  int brackets = 0;      // critical points / brackets examined
  int restarts = 0;      // multistart seeds evaluated
  bool converged = true;
  bool tie_flagged = false;  // two local maxima equal within tolerance
  double residual = 0.0;     // criterion-specific critical-point residual
};

struct DesignResult {
  Criterion criterion = Criterion::TrendD;
  std::vector<double> spacings;  // one entry for single-spacing criteria
  double objective = 0.0;        // criterion value at the optimum
  bool equidistant = true;       // spread <= 1e-6 relative
  double spread = 0.0;           // (max - min) / mean of spacings
  SolverDiagnostics diagnostics;

  double spacing() const { return spacings.front(); }
};

// Structured non-existence: information on lambda alone is maximized as
// spacings collapse, so no admissible design attains the supremum
// (n-1)/lambda^2.
struct LambdaDesignReport {
  int n = 0;
  double supremum = 0.0;
  bool attained = false;  // never
  std::string explanation;
};

// Principal branch of w e^w = z for z > -1/e; Halley iteration from a
// piecewise initial guess, |w e^w - z| residual below 1e-14 relative.
double lambert_w0(double z);

// Global maximizer d* of g over (0, inf) for omega != 0: enumerate the
// roots of r on windows of width pi/|omega|, classify by the sign of g''
// at critical points, stop once the envelope (1+q)/(1-q) drops below the
// incumbent maximum.  Throws FrequencyZeroError for omega == 0 (trend
// information then increases with distance without a finite optimum).
DesignResult optimal_trend_spacing(const OUParams& p);

// d_lambda = (W0(-2 e^{-2})/2 + 1) / lambda, the unique maximizer of psi;
// the returned result satisfies |1 - lambda d - e^{-2 lambda d}| < 1e-12.
DesignResult optimal_omega_spacing(const OUParams& p);

// d0 / lambda where d0 solves 1 - d - 2 d e^{-2d} - e^{-4d} = 0 on (0, 2);
// maximizes the product (sum phi)(sum psi) over equidistant designs.
DesignResult optimal_cov_joint_spacing(const OUParams& p);

// Equidistant objective for n observations at spacing d:
//   (1 + (n-1) g(d))^2 ((n-1) phi(d)) ((n-1) psi(d)).
double all_params_objective_equidistant(const OUParams& p, int n, double d);

// Full determinant objective at arbitrary positive spacings:
//   (1 + sum g)^2 (sum phi) (sum psi).
double all_params_objective(const OUParams& p, std::span<const double> spacings);

// D-optimal spacings for all four parameters.  Equidistant mode maximizes
// the scalar map above by grid bracketing plus golden-section refinement;
// free mode runs multistart Nelder-Mead in log-spacing coordinates
// followed by cyclic coordinate polish, and reports the equidistance
// spread it found (never assumes it).
DesignResult optimize_all_params(const OUParams& p, int n, OptimMode mode);

LambdaDesignReport reject_lambda_design(const OUParams& p, int n);

}  // namespace oudesign
