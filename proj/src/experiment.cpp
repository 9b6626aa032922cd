#include "detsketch/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <nlohmann/json.hpp>
#include <ostream>
#include <thread>

#include "detsketch/errors.hpp"
#include "detsketch/incoherent.hpp"
#include "detsketch/inner_product.hpp"
#include "detsketch/norm_estimation.hpp"
#include "detsketch/point_query.hpp"
#include "detsketch/sparse_recovery.hpp"

namespace detsketch {
namespace {

template <typename E>
struct Named {
  E value;
  std::string_view name;
};

constexpr std::array<Named<Problem>, 5> kProblems{{
    {Problem::kPointQuery, "point-query"},
    {Problem::kPointQueryTail, "point-query-tail"},
    {Problem::kInnerProduct, "inner-product"},
    {Problem::kL1L1, "l1l1"},
    {Problem::kNorm, "norm"},
}};

constexpr std::array<Named<VectorFamily>, 4> kFamilies{{
    {VectorFamily::kKSparseSigns, "k-sparse-signs"},
    {VectorFamily::kSparsePlusNoise, "sparse-plus-noise"},
    {VectorFamily::kDenseGaussian, "dense-gaussian"},
    {VectorFamily::kAdversarialFromColumns, "adversarial-from-columns"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<Named<E>, N>& table, E value) {
  for (const auto& entry : table) {
    if (entry.value == value) return entry.name;
  }
  return "unknown";
}

template <typename E, std::size_t N>
std::optional<E> parse_name(const std::array<Named<E>, N>& table, std::string_view name) {
  for (const auto& entry : table) {
    if (entry.name == name) return entry.value;
  }
  return std::nullopt;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// k distinct indices by a partial Fisher-Yates shuffle.
std::vector<std::size_t> sample_support(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  k = std::min(k, n);
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t j = s + static_cast<std::size_t>(rng.below(n - s));
    std::swap(idx[s], idx[j]);
  }
  idx.resize(k);
  return idx;
}

bool is_incoherent_kind(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::kRandomSign:
    case MatrixKind::kGvCode:
    case MatrixKind::kReedSolomon:
    case MatrixKind::kCrtCode:
    case MatrixKind::kIdentity:
      return true;
    default:
      return false;
  }
}

Construction construction_of(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::kGvCode: return Construction::kGvRandom;
    case MatrixKind::kReedSolomon: return Construction::kReedSolomon;
    case MatrixKind::kCrtCode: return Construction::kChineseRemainder;
    case MatrixKind::kIdentity: return Construction::kIdentity;
    default: return Construction::kRandomSign;
  }
}

IncoherentMatrix incoherent_from(const MatrixFile& f) {
  if (!is_incoherent_kind(f.header.kind)) {
    throw ParameterError("expected an incoherent matrix file, got kind " +
                         std::string(to_string(f.header.kind)));
  }
  return {f.matrix, f.header.epsilon, construction_of(f.header.kind), f.header.verified, 1};
}

RipMatrix rip_from(const MatrixFile& f) {
  if (f.header.kind != MatrixKind::kRip) {
    throw ParameterError("expected a rip matrix file, got kind " +
                         std::string(to_string(f.header.kind)));
  }
  if (!f.header.k) throw ParameterError("rip matrix file carries no order k");
  return {f.matrix, static_cast<std::size_t>(*f.header.k), f.header.seed,
          kDefaultRipConstant, false};
}

// Everything a trial needs, built once and shared read-only across threads.
struct Context {
  ExperimentConfig config;
  std::size_t n = 0;
  std::size_t family_k = 0;
  const DenseMatrix* columns = nullptr;
  std::unique_ptr<PointQuerySystem> system;
  std::unique_ptr<RipMatrix> rip;
  std::unique_ptr<NormEstimator> estimator;
};

TrialRecord point_query_trial(const Context& ctx, const DenseVector& x) {
  const auto& a = ctx.system->incoherent();
  const DenseVector xp = decode(*ctx.system, mat_vec(a.matrix, x)).x_prime;
  const double l1 = norm(x, NormOrder::kOne);
  TrialRecord r;
  r.m = a.matrix.rows();
  r.epsilon = a.epsilon;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double err = std::abs(xp[i] - x[i]);
    const double bound = a.epsilon * (l1 - std::abs(x[i]));
    if (err - bound > worst) {
      worst = err - bound;
      r.observed = err;
      r.bound = bound;
    }
  }
  return r;
}

TrialRecord point_query_tail_trial(const Context& ctx, const DenseVector& x) {
  const auto& a = ctx.system->incoherent();
  const auto& b = *ctx.system->rip();
  const DenseVector xp =
      decode_tail(*ctx.system, mat_vec(a.matrix, x), mat_vec(b.matrix, x)).x_prime;
  TrialRecord r;
  r.m = a.matrix.rows() + b.matrix.rows();
  r.epsilon = a.epsilon;
  r.k = b.k;
  r.observed = norm(xp - x, NormOrder::kInf);
  r.bound = kTailConstant * a.epsilon * tail_norm1(x, b.k);
  return r;
}

TrialRecord inner_product_trial(const Context& ctx, const DenseVector& x, const DenseVector& y) {
  const auto& a = ctx.system->incoherent();
  const auto est = estimate_ip(*ctx.system, mat_vec(a.matrix, x), mat_vec(a.matrix, y));
  TrialRecord r;
  r.m = a.matrix.rows();
  r.epsilon = a.epsilon;
  r.observed = std::abs(est.value - dot(x, y));
  r.bound = ip_basic_bound(a.epsilon, x, y);
  return r;
}

TrialRecord l1l1_trial(const Context& ctx, const DenseVector& x) {
  const auto& b = *ctx.rip;
  const DenseVector xp = recover_l1l1(b, mat_vec(b.matrix, x)).x_prime;
  TrialRecord r;
  r.m = b.matrix.rows();
  r.k = b.k;
  r.observed = norm(x - head_of(xp, b.k), NormOrder::kOne);
  r.bound = kL1L1Constant * tail_norm1(x, b.k);
  return r;
}

TrialRecord norm_trial(const Context& ctx, const DenseVector& x) {
  const auto& est = *ctx.estimator;
  const NormSearchOptions search;
  const auto result = estimate_norm(est, mat_vec(est.matrix(), x), search);
  const double l2 = norm(x, NormOrder::kTwo);
  TrialRecord r;
  r.m = est.matrix().rows();
  r.epsilon = est.epsilon();
  r.observed = std::abs(result.value - l2);
  r.bound = est.epsilon() * norm(x, NormOrder::kOne) + 2.0 * search.bracket_tol * l2;
  if (result.budget_exceeded) r.error = "ellipsoid iteration budget exceeded";
  return r;
}

TrialRecord run_trial(const Context& ctx, std::size_t trial) {
  Rng rng = trial_rng(ctx.config.seed, trial);
  const auto draw = [&] {
    return draw_vector(ctx.config.family, ctx.n, ctx.family_k, rng, ctx.columns);
  };
  TrialRecord r;
  DenseVector x = draw();
  try {
    switch (ctx.config.problem) {
      case Problem::kPointQuery: r = point_query_trial(ctx, x); break;
      case Problem::kPointQueryTail: r = point_query_tail_trial(ctx, x); break;
      case Problem::kInnerProduct: {
        const DenseVector y = draw();
        r = inner_product_trial(ctx, x, y);
        break;
      }
      case Problem::kL1L1: r = l1l1_trial(ctx, x); break;
      case Problem::kNorm: r = norm_trial(ctx, x); break;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    r.observed = std::numeric_limits<double>::quiet_NaN();
  }
  r.trial = trial;
  r.n = ctx.n;
  if (r.k == 0) r.k = ctx.family_k;
  r.pass = r.error.empty() && r.observed <= r.bound + check_tolerance(ctx.config.problem, x);
  return r;
}

}  // namespace

std::string_view to_string(Problem problem) { return name_of(kProblems, problem); }
std::optional<Problem> parse_problem(std::string_view name) { return parse_name(kProblems, name); }
std::string_view to_string(VectorFamily family) { return name_of(kFamilies, family); }
std::optional<VectorFamily> parse_vector_family(std::string_view name) {
  return parse_name(kFamilies, name);
}

Rng trial_rng(std::uint64_t seed, std::size_t trial) {
  return Rng(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(trial)));
}

DenseVector draw_vector(VectorFamily family, std::size_t n, std::size_t k, Rng& rng,
                        const DenseMatrix* columns) {
  if (n == 0) throw DimensionError("draw_vector: n must be >= 1");
  DenseVector x(n);
  switch (family) {
    case VectorFamily::kKSparseSigns:
      for (std::size_t i : sample_support(n, k, rng)) x[i] = rng.sign();
      break;
    case VectorFamily::kSparsePlusNoise: {
      for (std::size_t i : sample_support(n, k, rng)) x[i] = rng.sign() * (1.0 + rng.uniform());
      DenseVector noise(n);
      for (std::size_t i = 0; i < n; ++i) noise[i] = rng.gaussian();
      const double scale = 0.1 * static_cast<double>(std::max<std::size_t>(k, 1)) /
                           std::max(norm(noise, NormOrder::kOne), 1e-300);
      for (std::size_t i = 0; i < n; ++i) x[i] += scale * noise[i];
      break;
    }
    case VectorFamily::kDenseGaussian:
      for (std::size_t i = 0; i < n; ++i) x[i] = rng.gaussian();
      break;
    case VectorFamily::kAdversarialFromColumns: {
      if (columns == nullptr || columns->cols() != n) {
        throw ParameterError("adversarial-from-columns needs the measurement matrix");
      }
      // Every other coordinate pushes the estimate of x_target the same way.
      const std::size_t target = static_cast<std::size_t>(rng.below(n));
      const DenseVector col = column(*columns, target);
      const DenseVector gram = mat_t_vec(*columns, col);
      for (std::size_t j = 0; j < n; ++j) x[j] = gram[j] < 0.0 ? -1.0 : 1.0;
      x[target] = rng.sign();
      break;
    }
  }
  return x;
}

double check_tolerance(Problem problem, const DenseVector& x) {
  switch (problem) {
    case Problem::kPointQueryTail:
    case Problem::kL1L1:
      return 1e-6 * std::max(1.0, norm(x, NormOrder::kInf));
    default:
      return 1e-9;
  }
}

ExperimentReport run_experiment(const ExperimentConfig& config, const MatrixFile& primary,
                                const MatrixFile* rip) {
  if (config.trials == 0) throw ParameterError("trials must be >= 1");
  Context ctx;
  ctx.config = config;
  ctx.n = primary.matrix.cols();
  ctx.columns = &primary.matrix;
  std::size_t default_k = 3;

  switch (config.problem) {
    case Problem::kPointQuery:
    case Problem::kInnerProduct:
      ctx.system = std::make_unique<PointQuerySystem>(incoherent_from(primary));
      break;
    case Problem::kPointQueryTail: {
      if (rip == nullptr) throw ParameterError("point-query-tail needs a rip matrix file");
      RipMatrix b = rip_from(*rip);
      if (b.matrix.cols() != ctx.n) {
        throw ParameterError("rip matrix has " + std::to_string(b.matrix.cols()) +
                             " columns, incoherent matrix has " + std::to_string(ctx.n));
      }
      default_k = b.k;
      ctx.system = std::make_unique<PointQuerySystem>(incoherent_from(primary), std::move(b));
      break;
    }
    case Problem::kL1L1:
      ctx.rip = std::make_unique<RipMatrix>(rip_from(primary));
      default_k = ctx.rip->k;
      break;
    case Problem::kNorm:
      if (primary.header.kind != MatrixKind::kNormEst) {
        throw ParameterError("norm needs a norm-est matrix file, got kind " +
                             std::string(to_string(primary.header.kind)));
      }
      ctx.estimator =
          std::make_unique<NormEstimator>(primary.matrix, 1.0, 2.0, primary.header.epsilon);
      break;
  }
  ctx.family_k = std::min(config.k != 0 ? config.k : default_k, ctx.n);

  ExperimentReport report;
  report.problem = config.problem;
  report.family = config.family;
  report.records.resize(config.trials);

  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, config.trials);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t t = next++; t < config.trials; t = next++) {
      report.records[t] = run_trial(ctx, t);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  report.summary = summarize(report.records);
  return report;
}

ExperimentSummary summarize(const std::vector<TrialRecord>& records) {
  ExperimentSummary s;
  s.trials = records.size();
  for (const auto& r : records) {
    if (r.pass) ++s.passed;
    double ratio;
    if (!r.error.empty() || std::isnan(r.observed)) {
      ratio = std::numeric_limits<double>::infinity();
    } else if (r.bound > 0.0) {
      ratio = r.observed / r.bound;
    } else {
      ratio = r.pass ? 0.0 : std::numeric_limits<double>::infinity();
    }
    s.max_ratio = std::max(s.max_ratio, ratio);
  }
  s.pass_rate = s.trials == 0 ? 0.0 : static_cast<double>(s.passed) / static_cast<double>(s.trials);
  return s;
}

void write_jsonl(const ExperimentReport& report, std::ostream& out) {
  for (const auto& r : report.records) {
    nlohmann::ordered_json j;
    j["trial"] = r.trial;
    j["problem"] = to_string(report.problem);
    j["family"] = to_string(report.family);
    j["n"] = r.n;
    j["m"] = r.m;
    j["epsilon"] = r.epsilon;
    j["k"] = r.k;
    j["observed"] = r.observed;  // NaN is written as null
    j["bound"] = r.bound;
    j["pass"] = r.pass;
    if (!r.error.empty()) j["error"] = r.error;
    out << j.dump() << '\n';
  }
  nlohmann::ordered_json s;
  s["trials"] = report.summary.trials;
  s["passed"] = report.summary.passed;
  s["pass_rate"] = report.summary.pass_rate;
  s["max_ratio"] = report.summary.max_ratio;
  nlohmann::ordered_json line;
  line["summary"] = s;
  out << line.dump() << '\n';
}

void write_summary_table(const ExperimentReport& report, std::ostream& out) {
  const auto& s = report.summary;
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::left << std::setw(18) << "problem" << std::setw(26) << "family" << std::right
      << std::setw(8) << "trials" << std::setw(8) << "passed" << std::setw(11) << "pass_rate"
      << std::setw(12) << "max_ratio" << '\n';
  out << std::left << std::setw(18) << to_string(report.problem) << std::setw(26)
      << to_string(report.family) << std::right << std::setw(8) << s.trials << std::setw(8)
      << s.passed << std::setw(11) << std::fixed << std::setprecision(3) << s.pass_rate
      << std::setw(12) << std::setprecision(4) << s.max_ratio << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace detsketch
