#pragma once

// Brute-force reference for small LPs: every optimum of a feasible, bounded
// standard-form LP is attained at a basic solution, so enumerating all
// column subsets of size rank(A) finds it.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(Matrix m, std::vector<double> rhs) {
  const std::size_t k = m.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < k; ++j) m[r][j] -= f * m[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> x(k);
  for (std::size_t c = k; c-- > 0;) {
    double acc = rhs[c];
    for (std::size_t j = c + 1; j < k; ++j) acc -= m[c][j] * x[j];
    x[c] = acc / m[c][c];
  }
  return x;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const auto& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Best {
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

// min c^T x, A x = b, x >= 0, with A of full row rank.
inline Best standard_lp(const Matrix& a, const std::vector<double>& b,
                        const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  Best best;
  for_each_subset(n, m, [&](const std::vector<std::size_t>& cols) {
    Matrix sub(m, std::vector<double>(m));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < m; ++j) sub[r][j] = a[r][cols[j]];
    }
    const auto xb = solve_square(sub, b);
    if (!xb) return;
    for (double v : *xb) {
      if (v < -1e-9) return;
    }
    std::vector<double> x(n, 0.0);
    double obj = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      x[cols[j]] = (*xb)[j];
      obj += c[cols[j]] * (*xb)[j];
    }
    if (obj < best.objective) best = {obj, x};
  });
  return best;
}

// min ||z||_1 subject to B z = s: the optimum sits on a basic solution whose
// support is a set of at most m independent columns.
inline Best l1_min(const Matrix& b, const std::vector<double>& s) {
  const std::size_t m = b.size();
  const std::size_t n = b[0].size();
  Best best;
  for_each_subset(n, m, [&](const std::vector<std::size_t>& cols) {
    Matrix sub(m, std::vector<double>(m));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < m; ++j) sub[r][j] = b[r][cols[j]];
    }
    const auto z = solve_square(sub, s);
    if (!z) return;
    std::vector<double> full(n, 0.0);
    double obj = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      full[cols[j]] = (*z)[j];
      obj += std::abs((*z)[j]);
    }
    if (obj < best.objective) best = {obj, full};
  });
  return best;
}

}  // namespace oracle
