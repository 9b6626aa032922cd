#include "detsketch/sparse_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detsketch/errors.hpp"
#include "detsketch/random.hpp"

namespace detsketch {

std::string_view to_string(GuaranteeKind kind) {
  switch (kind) {
    case GuaranteeKind::kPlain: return "plain";
    case GuaranteeKind::kTail: return "tail";
    case GuaranteeKind::kL1L1: return "l1l1";
  }
  return "unknown";
}

std::string_view to_string(L1Status status) {
  switch (status) {
    case L1Status::kOptimal: return "optimal";
    case L1Status::kInfeasible: return "infeasible";
    case L1Status::kIterLimit: return "iteration-limit";
  }
  return "unknown";
}

std::size_t rip_rows(std::size_t n, std::size_t k, double rows_constant) {
  if (k == 0 || k > n) {
    throw ParameterError("rip: sparsity k must satisfy 1 <= k <= n (k=" +
                         std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  if (!(rows_constant > 0.0)) throw ParameterError("rip: rows constant must be positive");
  const double kd = static_cast<double>(k);
  const double log_term = 1.0 + std::log(static_cast<double>(n) / kd);
  return static_cast<std::size_t>(std::ceil(rows_constant * kd * log_term - 1e-9));
}

RipMatrix rip_matrix(std::size_t n, std::size_t k, std::uint64_t seed,
                     double rows_constant) {
  const std::size_t m = rip_rows(n, k, rows_constant);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Rng rng(seed);
  DenseMatrix b(m, n);
  for (double& e : b.entries()) e = scale * rng.sign();
  return {std::move(b), k, seed, rows_constant, false};
}

L1MinSolution l1_minimize(const DenseMatrix& b, const DenseVector& sketch,
                          const LpOptions& options) {
  if (sketch.dim() != b.rows()) {
    throw DimensionError("l1_minimize: sketch has dimension " +
                         std::to_string(sketch.dim()) + ", B has " +
                         std::to_string(b.rows()) + " rows");
  }
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  DenseMatrix split(m, 2 * n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      split(r, c) = b(r, c);
      split(r, n + c) = -b(r, c);
    }
  }
  const std::vector<double> cost(2 * n, 1.0);
  const LpResult lp = solve_standard_lp(split, sketch.values(), cost, options);

  L1MinSolution out;
  std::vector<double> z(n);
  for (std::size_t c = 0; c < n; ++c) z[c] = lp.x[c] - lp.x[n + c];
  out.z = DenseVector(std::move(z));
  out.objective = norm(out.z, NormOrder::kOne);
  out.residual = norm(mat_vec(b, out.z) - sketch, NormOrder::kInf);
  out.iterations = lp.iterations;

  const double tol = options.feasibility_tol * std::max(1.0, norm(sketch, NormOrder::kInf));
  switch (lp.status) {
    case LpStatus::kOptimal:
      out.status = out.residual <= tol ? L1Status::kOptimal : L1Status::kInfeasible;
      break;
    case LpStatus::kInfeasible: out.status = L1Status::kInfeasible; break;
    // The l1 objective is bounded below, so an unbounded ray means the
    // tableau lost accuracy; report it as a failed solve.
    case LpStatus::kUnbounded:
    case LpStatus::kIterLimit: out.status = L1Status::kIterLimit; break;
  }
  return out;
}

DenseVector l1_decode_or_throw(const DenseMatrix& b, const DenseVector& sketch) {
  L1MinSolution sol = l1_minimize(b, sketch);
  if (sol.status != L1Status::kOptimal) {
    std::ostringstream msg;
    msg << "l1 minimization failed: status=" << to_string(sol.status)
        << " residual=" << sol.residual << " objective=" << sol.objective
        << " iterations=" << sol.iterations << " (B is " << b.rows() << "x"
        << b.cols() << ")";
    throw SolverError(msg.str());
  }
  return std::move(sol.z);
}

RecoveryResult recover_l1l1(const RipMatrix& b, const DenseVector& sketch) {
  return {l1_decode_or_throw(b.matrix, sketch),
          Guarantee{GuaranteeKind::kL1L1, 0.0, b.k, kL1L1Constant}};
}

}  // namespace detsketch
