#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "detsketch/linalg.hpp"

namespace detsketch {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterLimit };

struct LpOptions {
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  /// 0 picks 50 * (rows + cols).
  std::size_t max_iterations = 0;
  /// Consecutive zero-length pivots after which entering-variable choice
  /// falls back from steepest reduced cost to Bland's lowest-index rule.
  std::size_t degenerate_switch = 32;
};

struct LpResult {
  LpStatus status = LpStatus::kIterLimit;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
  /// Basic column per surviving constraint row.
  std::vector<std::size_t> basis;
};

/// Two-phase dense tableau simplex for
///   minimize c^T x  subject to  A x = b,  x >= 0.
/// Redundant equality rows are dropped after phase one. The final basic
/// solution is recomputed from the original data by a direct solve on the
/// basis columns.
LpResult solve_standard_lp(const DenseMatrix& a, std::span<const double> b,
                           std::span<const double> c, const LpOptions& options = {});

}  // namespace detsketch
