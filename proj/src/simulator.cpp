#include "oudesign/simulator.hpp"

#include <cmath>
#include <numbers>

#include "oudesign/covariance.hpp"
#include "oudesign/kernel.hpp"
#include "oudesign/parallel.hpp"

namespace oudesign {

namespace {

// splitmix64: mixes (seed, replicate, purpose) into an independent
// 64-bit stream state.  Streams never depend on execution order.
struct SplitMix {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// xoshiro256++, seeded via splitmix64 per (seed, replicate, purpose).
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t purpose) {
    SplitMix mix{seed ^ (0xA0761D6478BD642FULL * (replicate + 1)) ^
                 (0xE7037ED1A0B428DBULL * purpose)};
    for (auto& w : state_) w = mix.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform on (0, 1]
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal pair, Box-Muller
  std::pair<double, double> next_normal_pair() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

constexpr std::uint64_t kPurposeTransition = 1;
constexpr std::uint64_t kPurposeCholesky = 2;

void add_trend(const Design& dz, const TrendSpec& trend, const TrendParams& tp,
               SamplePath& path) {
  const auto& t = dz.times();
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double f1 = trend.f1(t[j]);
    const double f2 = trend.f2(t[j]);
    path.z1[j] += tp.m1 * f1 - tp.m2 * f2;
    path.z2[j] += tp.m2 * f1 + tp.m1 * f2;
  }
}

SamplePath transition_path(const OUParams& p, const Design& dz,
                           const TrendSpec& trend, const TrendParams& tp,
                           std::uint64_t seed, std::uint64_t rep) {
  const auto& d = dz.spacings();
  const int n = dz.size();
  const double sd0 = std::sqrt(p.sigma2_over_2lambda);

  Stream rng(seed, rep, kPurposeTransition);
  SamplePath path;
  path.replicate = rep;
  path.z1.resize(static_cast<std::size_t>(n));
  path.z2.resize(static_cast<std::size_t>(n));

  auto [y1, y2] = rng.next_normal_pair();
  y1 *= sd0;
  y2 *= sd0;
  path.z1[0] = y1;
  path.z2[0] = y2;
  for (int j = 0; j + 1 < n; ++j) {
    const double dj = d[static_cast<std::size_t>(j)];
    const double e = std::exp(-p.lambda * dj);
    const double c = std::cos(p.omega * dj);
    const double s = std::sin(p.omega * dj);
    // transposed rotation: matches the block orientation of C(n)
    const double m1 = e * (c * y1 + s * y2);
    const double m2 = e * (-s * y1 + c * y2);
    const double innov_sd =
        sd0 * std::sqrt(-std::expm1(-2.0 * p.lambda * dj));
    const auto [g1, g2] = rng.next_normal_pair();
    y1 = m1 + innov_sd * g1;
    y2 = m2 + innov_sd * g2;
    path.z1[static_cast<std::size_t>(j + 1)] = y1;
    path.z2[static_cast<std::size_t>(j + 1)] = y2;
  }
  add_trend(dz, trend, tp, path);
  return path;
}

PathSet sample_impl(const OUParams& p, const Design& dz,
                    const TrendSpec& trend, const TrendParams& tp,
                    std::uint64_t reps, std::uint64_t seed, bool parallel) {
  detail::require(reps >= 1, "sample_paths: reps must be >= 1");
  PathSet out{dz, p, trend, tp, seed, {}};
  out.paths.resize(reps);
  const auto count = static_cast<std::int64_t>(reps);
  const int threads = par::thread_cap();
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
  for (std::int64_t r = 0; r < count; ++r)
    out.paths[static_cast<std::size_t>(r)] = transition_path(
        p, dz, trend, tp, seed, static_cast<std::uint64_t>(r));
  return out;
}

}  // namespace

PathSet sample_paths(const OUParams& p, const Design& dz,
                     const TrendSpec& trend, const TrendParams& tp,
                     std::uint64_t reps, std::uint64_t seed) {
  return sample_impl(p, dz, trend, tp, reps, seed, true);
}

PathSet sample_paths_serial(const OUParams& p, const Design& dz,
                            const TrendSpec& trend, const TrendParams& tp,
                            std::uint64_t reps, std::uint64_t seed) {
  return sample_impl(p, dz, trend, tp, reps, seed, false);
}

PathSet sample_paths_joint_cholesky(const OUParams& p, const Design& dz,
                                    const TrendSpec& trend,
                                    const TrendParams& tp, std::uint64_t reps,
                                    std::uint64_t seed) {
  detail::require(reps >= 1, "sample_paths_joint_cholesky: reps must be >= 1");
  // Cholesky of the normalized correlation matrix, scaled afterwards.
  OUParams normalized(p.lambda, p.omega);
  const Eigen::MatrixXd c = covariance_matrix(normalized, dz);
  const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(c).matrixL();
  const double sd0 = std::sqrt(p.sigma2_over_2lambda);
  const int n = dz.size();

  PathSet out{dz, p, trend, tp, seed, {}};
  out.paths.resize(reps);
  const auto count = static_cast<std::int64_t>(reps);
  const int threads = par::thread_cap();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t r = 0; r < count; ++r) {
    Stream rng(seed, static_cast<std::uint64_t>(r), kPurposeCholesky);
    Eigen::VectorXd xi(2 * n);
    for (int j = 0; j < n; ++j) {
      const auto [g1, g2] = rng.next_normal_pair();
      xi(2 * j) = g1;
      xi(2 * j + 1) = g2;
    }
    const Eigen::VectorXd v = sd0 * (l * xi);
    SamplePath& path = out.paths[static_cast<std::size_t>(r)];
    path.replicate = static_cast<std::uint64_t>(r);
    path.z1.resize(static_cast<std::size_t>(n));
    path.z2.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      path.z1[static_cast<std::size_t>(j)] = v(2 * j);
      path.z2[static_cast<std::size_t>(j)] = v(2 * j + 1);
    }
    add_trend(dz, trend, tp, path);
  }
  return out;
}

GlsSolver::GlsSolver(const OUParams& p, const Design& dz,
                     const TrendSpec& trend) {
  p.require_normalized();
  const Eigen::MatrixXd cinv = covariance_inverse_closed(p, dz);
  Eigen::MatrixXd h(2, 2 * dz.size());
  const auto& t = dz.times();
  for (int j = 0; j < dz.size(); ++j) {
    const double f1 = trend.f1(t[static_cast<std::size_t>(j)]);
    const double f2 = trend.f2(t[static_cast<std::size_t>(j)]);
    h(0, 2 * j) = f1;
    h(0, 2 * j + 1) = f2;
    h(1, 2 * j) = -f2;
    h(1, 2 * j + 1) = f1;
  }
  const Eigen::MatrixXd hc = h * cinv;       // 2 x 2n
  const Eigen::Matrix2d info = hc * h.transpose();
  q_n_ = 0.5 * (info(0, 0) + info(1, 1));
  solve_matrix_ = info.inverse() * hc;
}

std::pair<double, double> GlsSolver::estimate(const SamplePath& path) const {
  const auto n = path.z1.size();
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = static_cast<Eigen::Index>(2 * j);
    m1 += solve_matrix_(0, col) * path.z1[j] +
          solve_matrix_(0, col + 1) * path.z2[j];
    m2 += solve_matrix_(1, col) * path.z1[j] +
          solve_matrix_(1, col + 1) * path.z2[j];
  }
  return {m1, m2};
}

std::pair<double, double> gls_trend_estimate(const SamplePath& path,
                                             const OUParams& p,
                                             const Design& dz,
                                             const TrendSpec& trend) {
  detail::require(path.z1.size() == static_cast<std::size_t>(dz.size()) &&
                      path.z2.size() == path.z1.size(),
                  "gls_trend_estimate: path length must match the design");
  return GlsSolver(p, dz, trend).estimate(path);
}

Eigen::MatrixXd empirical_covariance(const OUParams& p, const Design& dz,
                                     const TrendSpec& trend,
                                     const TrendParams& tp, std::uint64_t reps,
                                     std::uint64_t seed) {
  detail::require(reps >= 1, "empirical_covariance: reps must be >= 1");
  const int n = dz.size();
  const int dim = 2 * n;
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (reps + kBlock - 1) / kBlock;

  std::vector<Eigen::MatrixXd> partial(
      blocks, Eigen::MatrixXd::Zero(dim, dim));
  const auto bcount = static_cast<std::int64_t>(blocks);
  const int threads = par::thread_cap();

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t b = 0; b < bcount; ++b) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd v(dim);
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
    const std::uint64_t hi = std::min(reps, lo + kBlock);
    for (std::uint64_t r = lo; r < hi; ++r) {
      const SamplePath path = transition_path(p, dz, trend, tp, seed, r);
      const auto& t = dz.times();
      for (int j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const double f1 = trend.f1(t[ju]);
        const double f2 = trend.f2(t[ju]);
        v(2 * j) = path.z1[ju] - (tp.m1 * f1 - tp.m2 * f2);
        v(2 * j + 1) = path.z2[ju] - (tp.m2 * f1 + tp.m1 * f2);
      }
      acc.selfadjointView<Eigen::Lower>().rankUpdate(v);
    }
    partial[static_cast<std::size_t>(b)] = acc;
  }

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& m : partial) sum += m;  // fixed order: deterministic
  sum = sum.selfadjointView<Eigen::Lower>();
  return sum / static_cast<double>(reps);
}

McGlsValidation mc_gls_validate(const OUParams& p, const Design& dz,
                                const TrendSpec& trend, const TrendParams& tp,
                                std::uint64_t reps, std::uint64_t seed) {
  detail::require(reps >= 2, "mc_gls_validate: reps must be >= 2");
  const GlsSolver gls(p, dz, trend);

  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (reps + kBlock - 1) / kBlock;
  std::vector<Eigen::Vector2d> psum(blocks, Eigen::Vector2d::Zero());
  std::vector<Eigen::Matrix2d> psq(blocks, Eigen::Matrix2d::Zero());
  const auto bcount = static_cast<std::int64_t>(blocks);
  const int threads = par::thread_cap();

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t b = 0; b < bcount; ++b) {
    Eigen::Vector2d s = Eigen::Vector2d::Zero();
    Eigen::Matrix2d sq = Eigen::Matrix2d::Zero();
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlock;
    const std::uint64_t hi = std::min(reps, lo + kBlock);
    for (std::uint64_t r = lo; r < hi; ++r) {
      const SamplePath path = transition_path(p, dz, trend, tp, seed, r);
      const auto [m1, m2] = gls.estimate(path);
      const Eigen::Vector2d est(m1, m2);
      s += est;
      sq += est * est.transpose();
    }
    psum[static_cast<std::size_t>(b)] = s;
    psq[static_cast<std::size_t>(b)] = sq;
  }

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d second = Eigen::Matrix2d::Zero();
  for (std::uint64_t b = 0; b < blocks; ++b) {
    mean += psum[static_cast<std::size_t>(b)];
    second += psq[static_cast<std::size_t>(b)];
  }
  const double nr = static_cast<double>(reps);
  mean /= nr;
  const Eigen::Matrix2d cov =
      second / nr - mean * mean.transpose();

  McGlsValidation out;
  out.reps = reps;
  out.seed = seed;
  out.q_n = gls.q_n();
  out.empirical = cov;
  out.mean_error = mean - Eigen::Vector2d(tp.m1, tp.m2);
  const double target = 1.0 / gls.q_n();
  Eigen::Matrix2d tgt = target * Eigen::Matrix2d::Identity();
  out.max_rel_err = ((cov - tgt).cwiseAbs() / target).maxCoeff();
  return out;
}

}  // namespace oudesign
