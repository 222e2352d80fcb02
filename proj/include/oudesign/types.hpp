#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oudesign {

inline constexpr const char* kVersion = "0.1.0";

// Input that violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// omega = 0 requested where only omega != 0 admits a finite optimum.
class FrequencyZeroError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}
}  // namespace detail

// Parameters of the complex OU disturbance: damping lambda > 0, angular
// frequency omega, and the stationary per-coordinate variance
// sigma^2/(2 lambda).  All Fisher-information formulas assume the
// normalized process (variance scale exactly 1) and reject otherwise;
// only the simulator accepts a general scale.
struct OUParams {
  double lambda;
  double omega;
  double sigma2_over_2lambda;

  OUParams(double lambda_, double omega_, double scale = 1.0)
      : lambda(lambda_), omega(omega_), sigma2_over_2lambda(scale) {
    detail::require(std::isfinite(lambda) && lambda > 0.0,
                    "OUParams: lambda must be finite and > 0");
    detail::require(std::isfinite(omega), "OUParams: omega must be finite");
    detail::require(std::isfinite(scale) && scale > 0.0,
                    "OUParams: sigma2_over_2lambda must be finite and > 0");
  }

  bool normalized() const { return sigma2_over_2lambda == 1.0; }

  void require_normalized() const {
    detail::require(normalized(),
                    "operation requires the normalized process "
                    "(sigma2_over_2lambda == 1)");
  }
};

// Ordered observation instants 0 <= t_1 < ... < t_n with the derived
// spacings d_j = t_{j+1} - t_j.  Spacing extraction is exact: input is
// validated strictly increasing, never re-sorted.
class Design {
 public:
  explicit Design(std::vector<double> times) : times_(std::move(times)) {
    detail::require(times_.size() >= 2, "Design: need at least two points");
    detail::require(std::isfinite(times_.front()) && times_.front() >= 0.0,
                    "Design: times must start in [0, inf)");
    spacings_.reserve(times_.size() - 1);
    for (std::size_t j = 0; j + 1 < times_.size(); ++j) {
      detail::require(std::isfinite(times_[j + 1]),
                      "Design: times must be finite");
      const double d = times_[j + 1] - times_[j];
      detail::require(d > 0.0, "Design: times must be strictly increasing");
      spacings_.push_back(d);
    }
  }

  static Design equidistant(int n, double spacing, double t0 = 0.0) {
    detail::require(n >= 2, "Design: need at least two points");
    detail::require(std::isfinite(spacing) && spacing > 0.0,
                    "Design: spacing must be finite and > 0");
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = t0 + j * spacing;
    return Design(std::move(t));
  }

  int size() const { return static_cast<int>(times_.size()); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& spacings() const { return spacings_; }

 private:
  std::vector<double> times_;
  std::vector<double> spacings_;
};

// Real trend basis pair (f1, f2); the complex trend is f = f1 + i f2.
// Evaluation must be deterministic and finite for all t >= 0.
class TrendSpec {
 public:
  using Fn = std::function<double(double)>;

  TrendSpec(Fn f1, Fn f2, std::string name = "custom")
      : f1_(std::move(f1)), f2_(std::move(f2)), name_(std::move(name)) {
    detail::require(static_cast<bool>(f1_) && static_cast<bool>(f2_),
                    "TrendSpec: both basis functions required");
  }

  // f1 = 1, f2 = 0: constant complex level.
  static TrendSpec constant() {
    return TrendSpec([](double) { return 1.0; }, [](double) { return 0.0; },
                     "constant");
  }

  // f1 = cos(2 pi t), f2 = sin(2 pi t): annual complex rotation used for
  // polar-motion (Chandler wobble) modelling.
  static TrendSpec chandler() {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return TrendSpec([](double t) { return std::cos(two_pi * t); },
                     [](double t) { return std::sin(two_pi * t); }, "chandler");
  }

  static TrendSpec by_name(const std::string& name) {
    if (name == "constant") return constant();
    if (name == "chandler") return chandler();
    throw ValidationError("TrendSpec: unknown preset '" + name + "'");
  }

  double f1(double t) const { return f1_(t); }
  double f2(double t) const { return f2_(t); }
  const std::string& name() const { return name_; }

 private:
  Fn f1_;
  Fn f2_;
  std::string name_;
};

// Complex trend coefficient m = m1 + i m2.
struct TrendParams {
  double m1 = 0.0;
  double m2 = 0.0;
};

}  // namespace oudesign
