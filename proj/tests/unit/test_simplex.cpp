#include <gtest/gtest.h>

#include <cmath>

#include "detsketch/errors.hpp"
#include "detsketch/random.hpp"
#include "detsketch/simplex.hpp"
#include "lp_oracle.hpp"

using namespace detsketch;

namespace {

DenseMatrix to_dense(const oracle::Matrix& a) {
  std::vector<double> flat;
  for (const auto& row : a) flat.insert(flat.end(), row.begin(), row.end());
  return DenseMatrix(a.size(), a[0].size(), flat);
}

}  // namespace

TEST(Simplex, AgreesWithVertexEnumeration) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng.below(9);
    const std::size_t m = 1 + rng.below(std::min<std::size_t>(6, n - 1));
    oracle::Matrix a(m, std::vector<double>(n));
    for (auto& row : a) {
      for (double& v : row) v = rng.gaussian();
    }
    std::vector<double> x0(n), b(m, 0.0), c(n);
    for (std::size_t j = 0; j < n; ++j) {
      // Sparse nonnegative point keeps b inside the cone.
      x0[j] = rng.uniform() < 0.5 ? rng.uniform() : 0.0;
      c[j] = rng.uniform(0.1, 2.0);
    }
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < n; ++j) b[r] += a[r][j] * x0[j];
    }
    const auto want = oracle::standard_lp(a, b, c);
    const LpResult got = solve_standard_lp(to_dense(a), b, c);
    ASSERT_EQ(got.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(got.objective, want.objective, 1e-7) << "trial " << trial;
    for (double v : got.x) EXPECT_GE(v, 0.0);
  }
}

TEST(Simplex, BealeCyclingExample) {
  // Beale's example in equality form with slacks x5..x7; cycles under the
  // textbook largest-coefficient rule without anti-cycling.
  const DenseMatrix a = DenseMatrix::from_rows({
      {0.25, -8, -1, 9, 1, 0, 0},
      {0.5, -12, -0.5, 3, 0, 1, 0},
      {0, 0, 1, 0, 0, 0, 1},
  });
  const std::vector<double> b{0, 0, 1};
  const std::vector<double> c{-0.75, 20, -0.5, 6, 0, 0, 0};
  const LpResult r = solve_standard_lp(a, b, c);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -1.25, 1e-9);
}

TEST(Simplex, Infeasible) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 1}});
  const std::vector<double> b{-1};
  const std::vector<double> c{1, 1};
  EXPECT_EQ(solve_standard_lp(a, b, c).status, LpStatus::kInfeasible);
}

TEST(Simplex, Unbounded) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, -1}});
  const std::vector<double> b{0};
  const std::vector<double> c{-1, 0};
  EXPECT_EQ(solve_standard_lp(a, b, c).status, LpStatus::kUnbounded);
}

TEST(Simplex, RedundantRowsDropped) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 1, 1}, {2, 2, 2}, {1, 0, -1}});
  const std::vector<double> b{3, 6, 0};
  const std::vector<double> c{1, 2, 3};
  const LpResult r = solve_standard_lp(a, b, c);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  // x1 = x3 and x1 + x2 + x3 = 3: cheapest is x2 = 3 (cost 6) vs x1=x3=1.5 (cost 6).
  EXPECT_NEAR(r.objective, 6.0, 1e-9);
  EXPECT_EQ(r.basis.size(), 2u);
}

TEST(Simplex, DimensionChecks) {
  const DenseMatrix a(2, 3);
  EXPECT_THROW(solve_standard_lp(a, std::vector<double>{1}, std::vector<double>{1, 1, 1}),
               DimensionError);
  EXPECT_THROW(solve_standard_lp(a, std::vector<double>{1, 1}, std::vector<double>{1}),
               DimensionError);
}
