#include <gtest/gtest.h>

#include <cmath>

#include "detsketch/errors.hpp"
#include "detsketch/random.hpp"
#include "detsketch/sparse_recovery.hpp"
#include "lp_oracle.hpp"

using namespace detsketch;

namespace {

DenseVector sparse_signs(Rng& rng, std::size_t n, std::size_t k) {
  DenseVector x(n);
  std::size_t placed = 0;
  while (placed < k) {
    const auto i = rng.below(n);
    if (x[i] == 0.0) {
      x[i] = rng.sign();
      ++placed;
    }
  }
  return x;
}

DenseVector spikes_plus_noise(Rng& rng, std::size_t n, std::size_t k, double tau) {
  DenseVector x = sparse_signs(rng, n, k);
  DenseVector e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = rng.gaussian();
  const double scale = tau / norm(e, NormOrder::kOne);
  for (std::size_t i = 0; i < n; ++i) x[i] += scale * e[i];
  return x;
}

// Kernel basis of a wide matrix by reduced row echelon form.
std::vector<DenseVector> kernel_basis(const DenseMatrix& b) {
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  std::vector<std::vector<double>> r(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = b(i, j);
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    for (std::size_t i = row + 1; i < m; ++i) {
      if (std::abs(r[i][col]) > std::abs(r[piv][col])) piv = i;
    }
    if (std::abs(r[piv][col]) < 1e-10) continue;
    std::swap(r[piv], r[row]);
    const double d = r[row][col];
    for (double& v : r[row]) v /= d;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = r[i][col];
      for (std::size_t j = 0; j < n; ++j) r[i][j] -= f * r[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<DenseVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    DenseVector v(n);
    v[free] = 1.0;
    for (std::size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -r[p][free];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

TEST(RipMatrix, RowsAndEntries) {
  EXPECT_EQ(rip_rows(64, 3), static_cast<std::size_t>(std::ceil(18.0 * std::log(std::exp(1.0) * 64 / 3))));
  EXPECT_EQ(rip_rows(64, 3), 74u);
  const RipMatrix b = rip_matrix(64, 3, 1);
  EXPECT_FALSE(b.verified);
  EXPECT_EQ(b.k, 3u);
  const double v = 1.0 / std::sqrt(static_cast<double>(b.matrix.rows()));
  for (double e : b.matrix.entries()) ASSERT_EQ(std::abs(e), v);
  EXPECT_EQ(rip_matrix(64, 3, 1).matrix, b.matrix);
  EXPECT_NE(rip_matrix(64, 3, 2).matrix, b.matrix);
}

TEST(RipMatrix, ParameterErrors) {
  EXPECT_THROW(rip_matrix(64, 0, 1), ParameterError);
  EXPECT_THROW(rip_matrix(64, 65, 1), ParameterError);
  EXPECT_THROW(rip_matrix(64, 3, 1, 0.0), ParameterError);
}

TEST(L1Minimize, ZeroSketch) {
  const RipMatrix b = rip_matrix(32, 2, 1, 2.0);
  const auto sol = l1_minimize(b.matrix, DenseVector(b.matrix.rows()));
  EXPECT_EQ(sol.status, L1Status::kOptimal);
  EXPECT_EQ(sol.objective, 0.0);
  EXPECT_EQ(sol.z, DenseVector(32));
}

TEST(L1Minimize, SquareInvertibleGivesUniquePoint) {
  const DenseMatrix b = DenseMatrix::from_rows({{2, 1, 0}, {0, 1, -1}, {1, 0, 3}});
  const DenseVector z_true{1.0, -2.0, 0.5};
  const auto sol = l1_minimize(b, mat_vec(b, z_true));
  ASSERT_EQ(sol.status, L1Status::kOptimal);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(sol.z[i], z_true[i], 1e-10);
}

TEST(L1Minimize, ObjectiveNeverAboveKnownFeasiblePoint) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    DenseMatrix b(8, 16);
    for (double& e : b.entries()) e = rng.gaussian();
    DenseVector x(16);
    for (std::size_t i = 0; i < 16; ++i) x[i] = rng.gaussian();
    const auto sol = l1_minimize(b, mat_vec(b, x));
    ASSERT_EQ(sol.status, L1Status::kOptimal);
    EXPECT_LE(sol.objective, norm(x, NormOrder::kOne) + 1e-8);
    EXPECT_LE(sol.residual, 1e-8);
  }
}

TEST(L1Minimize, AgreesWithBasicSolutionEnumeration) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.below(9);
    const std::size_t m = 1 + rng.below(std::min<std::size_t>(6, n - 1));
    oracle::Matrix raw(m, std::vector<double>(n));
    DenseMatrix b(m, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < n; ++j) b(r, j) = raw[r][j] = rng.gaussian();
    }
    DenseVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.gaussian();
    const DenseVector s = mat_vec(b, x);
    const auto want = oracle::l1_min(raw, s.data());
    const auto got = l1_minimize(b, s);
    ASSERT_EQ(got.status, L1Status::kOptimal);
    EXPECT_NEAR(got.objective, want.objective, 1e-7) << "trial " << trial;
  }
}

TEST(L1Minimize, InconsistentSystemIsInfeasible) {
  const DenseMatrix b = DenseMatrix::from_rows({{1, 1}, {1, 1}});
  const auto sol = l1_minimize(b, DenseVector{1.0, 2.0});
  EXPECT_EQ(sol.status, L1Status::kInfeasible);
  EXPECT_THROW(l1_decode_or_throw(b, DenseVector{1.0, 2.0}), SolverError);
  EXPECT_THROW(l1_minimize(b, DenseVector{1.0}), DimensionError);
}

TEST(RecoverL1L1, ExactSparseRecoveryRate) {
  const RipMatrix b = rip_matrix(64, 3, 7);
  Rng rng(4);
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const DenseVector x = sparse_signs(rng, 64, 3);
    const auto r = recover_l1l1(b, mat_vec(b.matrix, x));
    exact += norm(r.x_prime - x, NormOrder::kInf) <= 1e-6 ? 1 : 0;
  }
  EXPECT_GE(exact, 99);
}

TEST(RecoverL1L1, ZeroAndGuaranteeClass) {
  const RipMatrix b = rip_matrix(64, 3, 7);
  const auto r = recover_l1l1(b, DenseVector(b.matrix.rows()));
  EXPECT_EQ(r.x_prime, DenseVector(64));
  EXPECT_EQ(r.guarantee.kind, GuaranteeKind::kL1L1);
  EXPECT_EQ(r.guarantee.k, 3u);
  EXPECT_EQ(r.guarantee.constant, kL1L1Constant);
}

TEST(RecoverL1L1, MeasuredConstantAtMostTen) {
  const std::size_t k = 3;
  const RipMatrix b = rip_matrix(64, k, 8);
  Rng rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double tau = 0.05 + 0.5 * rng.uniform();
    const DenseVector x = spikes_plus_noise(rng, 64, k, tau);
    const auto r = recover_l1l1(b, mat_vec(b.matrix, x));
    worst = std::max(worst, norm(x - head_of(r.x_prime, k), NormOrder::kOne) / tail_norm1(x, k));
  }
  RecordProperty("measured_C1", std::to_string(worst));
  EXPECT_LE(worst, kL1L1Constant);
}

TEST(RecoverL1L1, CompressiveRegime) {
  // Fewer rows than columns: c_r = 2 gives m = 25 at n = 64.
  const RipMatrix b = rip_matrix(64, 3, 9, 2.0);
  ASSERT_LT(b.matrix.rows(), 64u);
  Rng rng(6);
  int exact = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const DenseVector x = sparse_signs(rng, 64, 3);
    exact += norm(recover_l1l1(b, mat_vec(b.matrix, x)).x_prime - x, NormOrder::kInf) <= 1e-6;
  }
  EXPECT_GE(exact, 45);
}

TEST(NullSpaceProperty, SampledKernelVectors) {
  const std::size_t n = 20;
  const std::size_t k = 2;
  const RipMatrix b = rip_matrix(n, k, 10, 2.0);
  ASSERT_LT(b.matrix.rows(), n);
  const auto basis = kernel_basis(b.matrix);
  ASSERT_EQ(basis.size(), n - b.matrix.rows());
  for (const auto& v : basis) EXPECT_LE(norm(mat_vec(b.matrix, v), NormOrder::kInf), 1e-9);
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    DenseVector v(n);
    for (const auto& u : basis) v = v + rng.gaussian() * u;
    const double head = norm(head_of(v, k), NormOrder::kOne);
    EXPECT_LT(head, tail_norm1(v, k));
  }
}
