#include "detsketch/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "detsketch/errors.hpp"

namespace detsketch {
namespace {

// Dense tableau: rows [0, m) are constraints, row m holds reduced costs with
// the negated objective value in the right-hand-side column. Columns [0, n)
// are structural, [n, n + m) artificial, the last one is the RHS.
class Tableau {
 public:
  Tableau(const DenseMatrix& a, std::span<const double> b)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1),
        cells_((m_ + 1) * width_, 0.0), basis_(m_), active_(m_, true), b_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * a(i, j);
      at(i, n_ + i) = 1.0;
      b_[i] = sign * b[i];
      at(i, rhs()) = b_[i];
      basis_[i] = n_ + i;
    }
  }

  // Shift every active right-hand side by a small distinct positive amount
  // so that no basic variable sits at zero.
  void perturb(double scale) {
    constexpr double kGolden = 0.6180339887498949;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double spread = 1.0 + std::fmod(static_cast<double>(i + 1) * kGolden, 1.0);
      at(i, rhs()) += scale * spread;
    }
  }

  // The artificial block holds B^-1, so the exact right-hand side is
  // recoverable from the original data.
  void restore_rhs() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      double acc = 0.0;
      for (std::size_t k = 0; k < m_; ++k) acc += at(i, n_ + k) * b_[k];
      at(i, rhs()) = acc;
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t structural() const { return n_; }
  std::size_t rhs() const { return width_ - 1; }
  std::size_t objective_row() const { return m_; }

  double& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }

  std::vector<std::size_t>& basis() { return basis_; }
  bool active(std::size_t r) const { return active_[r]; }

  void deactivate(std::size_t r) {
    active_[r] = false;
    std::fill(cells_.begin() + static_cast<std::ptrdiff_t>(r * width_),
              cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_), 0.0);
  }

  void load_objective(std::span<const double> costs) {
    const std::size_t obj = objective_row();
    for (std::size_t j = 0; j < width_; ++j) at(obj, j) = 0.0;
    for (std::size_t j = 0; j < costs.size(); ++j) at(obj, j) = costs[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const std::size_t bj = basis_[i];
      const double cb = bj < costs.size() ? costs[bj] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(obj, j) -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    double* pr = &cells_[r * width_];
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j < width_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* pi = &cells_[i * width_];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
    basis_[r] = c;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::vector<double> b_;
};

enum class PhaseOutcome { kOptimal, kInfeasible, kUnbounded, kIterLimit };

PhaseOutcome primal(Tableau& tab, const LpOptions& opt, std::size_t& iterations,
                    std::size_t max_iterations) {
  const std::size_t obj = tab.objective_row();
  const std::size_t rhs = tab.rhs();
  std::size_t degenerate_run = 0;
  // Once stalling is detected Bland's rule stays on for the rest of the
  // phase; switching back could re-enter a cycle.
  bool bland = false;
  while (true) {
    if (iterations >= max_iterations) return PhaseOutcome::kIterLimit;
    bland = bland || degenerate_run >= opt.degenerate_switch;

    std::size_t enter = tab.structural();
    double best = -opt.optimality_tol;
    for (std::size_t j = 0; j < tab.structural(); ++j) {
      const double d = tab.at(obj, j);
      if (d < best) {
        enter = j;
        if (bland) break;
        best = d;
      }
    }
    if (enter == tab.structural()) return PhaseOutcome::kOptimal;

    std::size_t leave = tab.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (!tab.active(i)) continue;
      const double coef = tab.at(i, enter);
      if (coef <= opt.pivot_tol) continue;
      const double ratio = std::max(tab.at(i, rhs), 0.0) / coef;
      const bool tie = leave != tab.rows() &&
                       std::abs(ratio - best_ratio) <= 1e-12 * (1.0 + best_ratio);
      if (tie ? tab.basis()[i] < tab.basis()[leave] : ratio < best_ratio) {
        leave = i;
        best_ratio = std::min(ratio, best_ratio);
      }
    }
    if (leave == tab.rows()) return PhaseOutcome::kUnbounded;

    degenerate_run = best_ratio <= 1e-11 ? degenerate_run + 1 : 0;
    tab.pivot(leave, enter);
    ++iterations;
  }
}

enum class DualOutcome { kFeasible, kInfeasible, kIterLimit };

// Dual simplex on a basis whose reduced costs are (nearly) nonnegative but
// some basic values went negative.
DualOutcome dual(Tableau& tab, const LpOptions& opt, double tol, std::size_t& iterations,
                 std::size_t max_iterations) {
  const std::size_t obj = tab.objective_row();
  const std::size_t rhs = tab.rhs();
  while (true) {
    std::size_t leave = tab.rows();
    double worst = -tol;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (tab.active(i) && tab.at(i, rhs) < worst) {
        worst = tab.at(i, rhs);
        leave = i;
      }
    }
    if (leave == tab.rows()) return DualOutcome::kFeasible;
    if (iterations >= max_iterations) return DualOutcome::kIterLimit;

    std::size_t enter = tab.structural();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < tab.structural(); ++j) {
      const double coef = tab.at(leave, j);
      if (coef >= -opt.pivot_tol) continue;
      const double ratio = std::max(tab.at(obj, j), 0.0) / -coef;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        enter = j;
      }
    }
    if (enter == tab.structural()) return DualOutcome::kInfeasible;
    tab.pivot(leave, enter);
    ++iterations;
  }
}

// Primal simplex on a perturbed right-hand side, then the exact one is put
// back and any sign violations are pivoted away.
PhaseOutcome run_phase(Tableau& tab, std::span<const double> costs, const LpOptions& opt,
                       double b_scale, std::size_t& iterations, std::size_t max_iterations) {
  tab.load_objective(costs);
  tab.perturb(1e-7 * b_scale);
  const PhaseOutcome outcome = primal(tab, opt, iterations, max_iterations);
  tab.restore_rhs();
  tab.load_objective(costs);
  if (outcome != PhaseOutcome::kOptimal) return outcome;
  const double tol = opt.feasibility_tol * b_scale;
  for (int round = 0; round < 4; ++round) {
    switch (dual(tab, opt, tol, iterations, max_iterations)) {
      case DualOutcome::kFeasible: break;
      case DualOutcome::kInfeasible: return PhaseOutcome::kInfeasible;
      case DualOutcome::kIterLimit: return PhaseOutcome::kIterLimit;
    }
    const PhaseOutcome again = primal(tab, opt, iterations, max_iterations);
    if (again != PhaseOutcome::kOptimal) return again;
    bool clean = true;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (tab.active(i) && tab.at(i, tab.rhs()) < -tol) clean = false;
    }
    if (clean) return PhaseOutcome::kOptimal;
  }
  return PhaseOutcome::kIterLimit;
}

double max_residual(const DenseMatrix& a, std::span<const double> b,
                    const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
    worst = std::max(worst, std::abs(acc - b[i]));
  }
  return worst;
}

// Re-solve the basic variables directly from A_B x_B = b on the kept rows.
void refine_basic_solution(const DenseMatrix& a, std::span<const double> b,
                           Tableau& tab, std::vector<double>& x, double tol) {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (!tab.active(i)) continue;
    rows.push_back(i);
    cols.push_back(tab.basis()[i]);
  }
  if (rows.empty()) return;
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd basis_matrix(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    rhs(r) = b[rows[static_cast<std::size_t>(r)]];
    for (Eigen::Index c = 0; c < k; ++c) {
      basis_matrix(r, c) = a(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    }
  }
  const Eigen::VectorXd solved = basis_matrix.fullPivLu().solve(rhs);
  std::vector<double> candidate(x.size(), 0.0);
  for (Eigen::Index r = 0; r < k; ++r) {
    double v = solved(r);
    if (!std::isfinite(v) || v < -tol) return;
    candidate[cols[static_cast<std::size_t>(r)]] = std::max(v, 0.0);
  }
  if (max_residual(a, b, candidate) <= max_residual(a, b, x)) x = std::move(candidate);
}

}  // namespace

LpResult solve_standard_lp(const DenseMatrix& a, std::span<const double> b,
                           std::span<const double> c, const LpOptions& options) {
  if (b.size() != a.rows()) throw DimensionError("LP: rhs length != constraint rows");
  if (c.size() != a.cols()) throw DimensionError("LP: cost length != variable count");

  const std::size_t max_iterations =
      options.max_iterations != 0 ? options.max_iterations : 50 * (a.rows() + a.cols());
  Tableau tab(a, b);
  LpResult result;

  // Phase one: minimize the sum of artificials.
  std::vector<double> phase_one(a.cols() + a.rows(), 0.0);
  std::fill(phase_one.begin() + static_cast<std::ptrdiff_t>(a.cols()), phase_one.end(), 1.0);
  double b_scale = 1.0;
  for (double v : b) b_scale = std::max(b_scale, std::abs(v));
  auto outcome =
      run_phase(tab, phase_one, options, b_scale, result.iterations, max_iterations);

  const double infeasibility = -tab.at(tab.objective_row(), tab.rhs());
  if (outcome == PhaseOutcome::kIterLimit) {
    result.status = LpStatus::kIterLimit;
  } else if (outcome == PhaseOutcome::kInfeasible ||
             infeasibility > options.feasibility_tol * b_scale) {
    result.status = LpStatus::kInfeasible;
  } else {
    // Pivot leftover artificials out of the basis; rows where that is
    // impossible are linear combinations of the others.
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (!tab.active(i) || tab.basis()[i] < tab.structural()) continue;
      std::size_t best_j = tab.structural();
      double best_abs = options.pivot_tol * 1e3;
      for (std::size_t j = 0; j < tab.structural(); ++j) {
        const double v = std::abs(tab.at(i, j));
        if (v > best_abs) {
          best_abs = v;
          best_j = j;
        }
      }
      if (best_j == tab.structural()) {
        tab.deactivate(i);
      } else {
        tab.pivot(i, best_j);
      }
    }

    outcome = run_phase(tab, c, options, b_scale, result.iterations, max_iterations);
    switch (outcome) {
      case PhaseOutcome::kOptimal: result.status = LpStatus::kOptimal; break;
      case PhaseOutcome::kUnbounded: result.status = LpStatus::kUnbounded; break;
      case PhaseOutcome::kInfeasible: result.status = LpStatus::kInfeasible; break;
      case PhaseOutcome::kIterLimit: result.status = LpStatus::kIterLimit; break;
    }
  }

  result.x.assign(a.cols(), 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (!tab.active(i)) continue;
    const std::size_t bj = tab.basis()[i];
    if (bj < a.cols()) result.x[bj] = std::max(tab.at(i, tab.rhs()), 0.0);
  }
  if (result.status == LpStatus::kOptimal) {
    refine_basic_solution(a, b, tab, result.x, options.feasibility_tol);
  }
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.active(i)) result.basis.push_back(tab.basis()[i]);
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) result.objective += c[j] * result.x[j];
  return result;
}

}  // namespace detsketch
