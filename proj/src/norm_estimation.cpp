#include "detsketch/norm_estimation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detsketch/errors.hpp"
#include "detsketch/random.hpp"

namespace detsketch {

struct NormEstimator::Kernel {
  Eigen::MatrixXd basis;  // n x (n - m), orthonormal columns spanning ker(A)
};

namespace {

double span_lp_norm(std::span<const double> x, double p) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || std::isinf(p)) return scale;
  if (p == 1.0) {
    double acc = 0.0;
    for (double v : x) acc += std::abs(v);
    return acc;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (double v : x) acc += (v / scale) * (v / scale);
    return scale * std::sqrt(acc);
  }
  for (double v : x) acc += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

// Adds weight * f_{|x|, r, i} to h_i for every i, where f is the dual
// direction of the r-norm at |x| (nonzero x).
void add_norm_gradient(std::span<const double> x, double r, double weight,
                       std::span<double> h) {
  if (std::isinf(r)) {
    double top = 0.0;
    for (double v : x) top = std::max(top, std::abs(v));
    std::size_t ties = 0;
    for (double v : x) ties += std::abs(v) == top ? 1 : 0;
    const double share = weight / static_cast<double>(ties);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) == top) h[i] += share;
    }
    return;
  }
  if (r == 1.0) {
    for (double& hi : h) hi += weight;
    return;
  }
  const double nr = span_lp_norm(x, r);
  if (r == 2.0) {
    for (std::size_t i = 0; i < x.size(); ++i) h[i] += weight * std::abs(x[i]) / nr;
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    h[i] += weight * std::pow(std::abs(x[i]) / nr, r - 1.0);
  }
}

// Returns ||x||_q + eps ||x||_p and writes the separating normal into h.
double objective_and_normal(std::span<const double> x, double p, double q,
                            double epsilon, std::span<double> h) {
  std::fill(h.begin(), h.end(), 0.0);
  const double value = span_lp_norm(x, q) + epsilon * span_lp_norm(x, p);
  if (value == 0.0) return 0.0;
  add_norm_gradient(x, q, 1.0, h);
  add_norm_gradient(x, p, epsilon, h);
  // Reflect back from |x| to x; zero coordinates keep the nonnegative sign.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) h[i] = -h[i];
  }
  return value;
}

void require_orders(double p, double q) {
  if (!(p >= 1.0 && q > p)) {
    throw ParameterError("norm orders must satisfy 1 <= p < q <= infinity (p=" +
                         std::to_string(p) + ", q=" + std::to_string(q) + ")");
  }
}

struct Ellipsoid {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;  // J with P = J J^T
  double log_det = 0.0;   // log det P
};

enum class LevelOutcome { kFeasible, kInfeasibleCut, kInfeasibleVolume, kBudget };

struct LevelResult {
  LevelOutcome outcome = LevelOutcome::kBudget;
  double best_value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
};

class LevelSearch {
 public:
  LevelSearch(const NormEstimator& est, Eigen::VectorXd offset)
      : est_(est),
        kernel_(est.kernel().data(), static_cast<Eigen::Index>(est.dim()),
                static_cast<Eigen::Index>(est.kernel_dim())), offset_(std::move(offset)),
        point_(offset_.size()), normal_(offset_.size()), cut_(kernel_.cols()),
        dir_(kernel_.cols()), step_(kernel_.cols()) {}

  double evaluate(const Eigen::VectorXd& w) {
    if (kernel_.cols() == 0) {
      point_ = offset_;
    } else {
      point_.noalias() = kernel_ * w;
      point_ += offset_;
    }
    return objective_and_normal(
        {point_.data(), static_cast<std::size_t>(point_.size())}, est_.p(), est_.q(),
        est_.epsilon(), {normal_.data(), static_cast<std::size_t>(normal_.size())});
  }

  // Ellipsoid method for {w in E : phi(offset + K w) <= level}. Every cut
  // keeps the level set, so E remains a valid outer bound when it returns.
  LevelResult run(double level, Ellipsoid& e, std::size_t budget, double log_ball) {
    LevelResult res;
    const auto d = kernel_.cols();
    const double dd = static_cast<double>(d);
    for (; res.iterations < budget; ++res.iterations) {
      const double value = evaluate(e.center);
      res.best_value = std::min(res.best_value, value);
      if (value <= level) {
        res.outcome = LevelOutcome::kFeasible;
        return res;
      }
      if (d == 0) {
        res.outcome = LevelOutcome::kInfeasibleCut;
        return res;
      }
      cut_.noalias() = kernel_.transpose() * normal_;
      // Feasible w satisfy cut.(w - center) <= level - value < 0.
      dir_.noalias() = e.shape.transpose() * cut_;
      const double a_norm = dir_.norm();
      const double gap = value - level;
      if (!(a_norm > 0.0) || gap >= a_norm) {
        res.outcome = LevelOutcome::kInfeasibleCut;
        return res;
      }
      const double alpha = gap / a_norm;
      dir_ /= a_norm;
      step_.noalias() = e.shape * dir_;  // P cut / sqrt(cut^T P cut)
      if (d == 1) {
        e.center -= step_ * ((1.0 + alpha) / 2.0);
        e.shape *= (1.0 - alpha) / 2.0;
        e.log_det = 2.0 * std::log(std::abs(e.shape(0, 0)));
      } else {
        const double tau = (1.0 + dd * alpha) / (dd + 1.0);
        const double sigma = 2.0 * (1.0 + dd * alpha) / ((dd + 1.0) * (1.0 + alpha));
        const double delta = dd * dd * (1.0 - alpha * alpha) / (dd * dd - 1.0);
        e.center.noalias() -= tau * step_;
        // J <- sqrt(delta) (J - (1 - sqrt(1 - sigma)) (J u) u^T), u = dir.
        const double scale = std::sqrt(delta);
        const double shrink = 1.0 - std::sqrt(std::max(1.0 - sigma, 0.0));
        step_ *= scale * shrink;
        e.shape *= scale;
        e.shape.noalias() -= step_ * dir_.transpose();
        e.log_det += dd * std::log(delta) + std::log1p(-sigma);
      }
      if (0.5 * e.log_det < dd * log_ball) {
        ++res.iterations;
        res.outcome = LevelOutcome::kInfeasibleVolume;
        return res;
      }
    }
    res.outcome = LevelOutcome::kBudget;
    return res;
  }

 private:
  const NormEstimator& est_;
  Eigen::Map<const Eigen::MatrixXd> kernel_;
  Eigen::VectorXd offset_;
  Eigen::VectorXd point_;
  Eigen::VectorXd normal_;
  Eigen::VectorXd cut_;
  Eigen::VectorXd dir_;
  Eigen::VectorXd step_;
};

}  // namespace

double lp_norm(const DenseVector& x, double p) {
  if (!(p >= 1.0)) throw ParameterError("lp_norm needs p >= 1");
  return span_lp_norm(x.values(), p);
}

double norm_objective(const DenseVector& x, double p, double q, double epsilon) {
  return lp_norm(x, q) + epsilon * lp_norm(x, p);
}

std::optional<DenseVector> separation_oracle(const DenseVector& x, double p, double q,
                                             double epsilon, double level) {
  require_orders(p, q);
  DenseVector h(x.dim(), 0.0);
  const double value = objective_and_normal(x.values(), p, q, epsilon, h.values());
  if (value <= level) return std::nullopt;
  // x = 0 with a negative level: the level set is empty and the zero normal
  // is a (degenerate) certificate.
  return h;
}

NormEstimator::NormEstimator(DenseMatrix a, double p, double q, double epsilon)
    : a_(std::move(a)), p_(p), q_(q), epsilon_(epsilon),
      kernel_(std::make_unique<Kernel>()) {
  require_orders(p_, q_);
  if (!(epsilon_ > 0.0)) throw ParameterError("norm estimator: epsilon must be positive");
  const auto m = static_cast<Eigen::Index>(a_.rows());
  const auto n = static_cast<Eigen::Index>(a_.cols());
  if (m > n) throw DimensionError("norm estimator: more rows than columns");

  Eigen::MatrixXd at(n, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      at(c, r) = a_(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  const Eigen::MatrixXd gram = at.transpose() * at;
  const double deviation =
      (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (deviation > 1e-9) {
    throw ParameterError("norm estimator: rows are not orthonormal (max |AA^T - I| = " +
                         std::to_string(deviation) + ")");
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(at);
  const Eigen::MatrixXd q_full = qr.householderQ();
  kernel_->basis = q_full.rightCols(n - m);
}

NormEstimator::~NormEstimator() = default;
NormEstimator::NormEstimator(NormEstimator&&) noexcept = default;
NormEstimator& NormEstimator::operator=(NormEstimator&&) noexcept = default;

std::size_t NormEstimator::kernel_dim() const {
  return static_cast<std::size_t>(kernel_->basis.cols());
}

std::span<const double> NormEstimator::kernel() const {
  return {kernel_->basis.data(), static_cast<std::size_t>(kernel_->basis.size())};
}

std::size_t norm_estimator_rows(std::size_t n, double epsilon, double rows_constant) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("norm estimator: epsilon must lie in (0, 1)");
  }
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  if (!(inv_eps2 < static_cast<double>(n) / 2.0)) {
    throw ParameterError("norm estimator: requires 1/epsilon^2 < n/2 (1/epsilon^2=" +
                         std::to_string(inv_eps2) + ", n/2=" +
                         std::to_string(static_cast<double>(n) / 2.0) + ")");
  }
  const double log_term = 1.0 + std::log(epsilon * epsilon * static_cast<double>(n));
  const auto m = static_cast<std::size_t>(std::ceil(rows_constant * inv_eps2 * log_term));
  return std::min(std::max<std::size_t>(m, 1), n);
}

NormEstimator build_estimator(std::size_t n, double epsilon, std::uint64_t seed,
                              const NormEstimatorOptions& options) {
  const std::size_t m = norm_estimator_rows(n, epsilon, options.rows_constant);
  Rng rng(seed);
  Eigen::MatrixXd gaussian(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index c = 0; c < gaussian.cols(); ++c) {
    for (Eigen::Index r = 0; r < gaussian.rows(); ++r) gaussian(r, c) = rng.gaussian();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  const Eigen::MatrixXd q_full = qr.householderQ();
  DenseMatrix a(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      a(r, c) = q_full(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r));
    }
  }
  return NormEstimator(std::move(a), options.p, options.q, epsilon);
}

NormEstimate estimate_norm(const NormEstimator& est, const DenseVector& z,
                           const NormSearchOptions& options) {
  if (z.dim() != est.matrix().rows()) {
    throw DimensionError("estimate_norm: sketch has dimension " + std::to_string(z.dim()) +
                         ", expected " + std::to_string(est.matrix().rows()));
  }
  NormEstimate out;
  const DenseVector y_vec = mat_t_vec(est.matrix(), z);
  const double y_norm = norm(y_vec, NormOrder::kTwo);
  if (y_norm == 0.0) return out;

  const double n = static_cast<double>(est.dim());
  const double eps = est.epsilon();
  const double tol = options.bracket_tol;
  const auto d = static_cast<Eigen::Index>(est.kernel_dim());
  const double dd = static_cast<double>(d);

  out.lo = y_norm / std::sqrt(n);
  out.hi = (1.0 + eps) * std::sqrt(n) * y_norm;

  const std::size_t budget =
      options.max_iterations_per_level != 0
          ? options.max_iterations_per_level
          : static_cast<std::size_t>(
                std::ceil(10.0 * std::max(dd * dd, 1.0) * std::log(n / eps)));

  // Initial ball about y inside the affine subspace; every point of the
  // level set for any M up to hi lies in it.
  const double radius = std::sqrt((1.0 + eps) * (1.0 + eps) * n * n - 1.0) * y_norm;
  // If M >= (1 + tol/4) OPT the level set contains a ball of this radius, so
  // a smaller ellipsoid proves OPT > M / (1 + tol/4).
  const double ball_slack = tol / 4.0;
  const double log_ball = std::log(ball_slack * y_norm / (n * (1.0 + eps)));

  Ellipsoid checkpoint{Eigen::VectorXd::Zero(d), radius * Eigen::MatrixXd::Identity(d, d),
                       2.0 * dd * std::log(radius)};

  Eigen::VectorXd offset(static_cast<Eigen::Index>(y_vec.dim()));
  for (std::size_t i = 0; i < y_vec.dim(); ++i) offset(static_cast<Eigen::Index>(i)) = y_vec[i];
  LevelSearch search(est, std::move(offset));

  while (out.hi > (1.0 + tol) * out.lo) {
    // Probe just under the best objective seen: a feasible answer keeps the
    // shrunken ellipsoid for the next level, an infeasible one closes the
    // bracket. Falls back to the geometric midpoint once the bracket is thin.
    const double level = std::max(std::sqrt(out.lo * out.hi), out.hi / (1.0 + tol));
    Ellipsoid e = checkpoint;
    const LevelResult res = search.run(level, e, budget, log_ball);
    out.iterations += res.iterations;
    ++out.levels;
    out.hi = std::min(out.hi, res.best_value);
    switch (res.outcome) {
      case LevelOutcome::kFeasible:
        // Cuts made at this level stay valid for every lower level.
        checkpoint = std::move(e);
        break;
      case LevelOutcome::kInfeasibleCut:
        out.lo = std::max(out.lo, level);
        break;
      case LevelOutcome::kInfeasibleVolume:
        out.lo = std::max(out.lo, level / (1.0 + ball_slack));
        break;
      case LevelOutcome::kBudget:
        out.budget_exceeded = true;
        break;
    }
    if (out.budget_exceeded) break;
    // Level sets are nested, so a certified lower bound can never pass a
    // realized objective value.
    if (out.lo > out.hi * (1.0 + 1e-12)) {
      throw std::logic_error("estimate_norm: bracket inverted (lo=" + std::to_string(out.lo) +
                             ", hi=" + std::to_string(out.hi) + ")");
    }
  }
  out.value = 0.5 * (out.lo + out.hi);
  return out;
}

}  // namespace detsketch
