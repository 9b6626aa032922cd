#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "detsketch/errors.hpp"
#include "detsketch/linalg.hpp"
#include "detsketch/random.hpp"

using namespace detsketch;

namespace {

// Independent triple-loop product over the raw row-major payload.
std::vector<double> naive_product(std::size_t m, std::size_t n, const std::vector<double>& a,
                                  const std::vector<double>& x) {
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += a[i * n + j] * x[j];
  }
  return out;
}

DenseVector random_vector(Rng& rng, std::size_t n) {
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.gaussian();
  return v;
}

}  // namespace

TEST(DenseMatrix, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(DenseMatrix(0, 3), DimensionError);
  EXPECT_THROW(DenseMatrix(2, 0), DimensionError);
  EXPECT_THROW(DenseMatrix(1, 2, {1.0}), DimensionError);
  EXPECT_THROW(DenseMatrix(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
               ParameterError);
  EXPECT_THROW(DenseVector({1.0, std::numeric_limits<double>::infinity()}), ParameterError);
}

TEST(MatVec, IdentityAndRowSum) {
  EXPECT_EQ(mat_vec(DenseMatrix::identity(2), DenseVector{3.0, -1.0}), (DenseVector{3.0, -1.0}));
  EXPECT_EQ(mat_vec(DenseMatrix::from_rows({{1, 1, 1}}), DenseVector{1, 2, 3}), DenseVector{6.0});
}

TEST(MatVec, DimensionMismatch) {
  EXPECT_THROW(mat_vec(DenseMatrix(2, 3), DenseVector(2)), DimensionError);
  EXPECT_THROW(mat_t_vec(DenseMatrix(2, 3), DenseVector(3)), DimensionError);
}

TEST(MatVec, MatchesNaiveProduct) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> raw(4 * 8);
    for (double& v : raw) v = rng.gaussian();
    std::vector<double> xs(8);
    for (double& v : xs) v = rng.gaussian();
    const DenseVector got = mat_vec(DenseMatrix(4, 8, raw), DenseVector(xs));
    const auto want = naive_product(4, 8, raw, xs);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(got[i], want[i], 1e-12 * std::max(1.0, std::abs(want[i])));
    }
  }
}

TEST(MatVec, TransposeMatchesNaive) {
  Rng rng(3);
  std::vector<double> raw(5 * 7);
  for (double& v : raw) v = rng.gaussian();
  std::vector<double> transposed(7 * 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 7; ++j) transposed[j * 5 + i] = raw[i * 7 + j];
  }
  std::vector<double> s(5);
  for (double& v : s) v = rng.gaussian();
  const DenseVector got = mat_t_vec(DenseMatrix(5, 7, raw), DenseVector(s));
  const auto want = naive_product(7, 5, transposed, s);
  for (std::size_t j = 0; j < 7; ++j) EXPECT_NEAR(got[j], want[j], 1e-12);
}

TEST(MatVec, Linear) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> raw(6 * 9);
    for (double& v : raw) v = rng.gaussian();
    const DenseMatrix a(6, 9, raw);
    const DenseVector x = random_vector(rng, 9);
    const DenseVector y = random_vector(rng, 9);
    const double alpha = rng.gaussian();
    const double beta = rng.gaussian();
    const DenseVector lhs = mat_vec(a, alpha * x + beta * y);
    const DenseVector rhs = alpha * mat_vec(a, x) + beta * mat_vec(a, y);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_NEAR(lhs[i], rhs[i], 1e-10 * std::max(1.0, std::abs(rhs[i])));
    }
  }
}

TEST(Norm, ThreeFourFive) {
  const DenseVector x{3.0, -4.0};
  EXPECT_DOUBLE_EQ(norm(x, NormOrder::kTwo), 5.0);
  EXPECT_DOUBLE_EQ(norm(x, NormOrder::kOne), 7.0);
  EXPECT_DOUBLE_EQ(norm(x, NormOrder::kInf), 4.0);
}

TEST(Norm, NoOverflowOnLargeEntries) {
  const DenseVector x{3e200, -4e200};
  EXPECT_NEAR(norm(x, NormOrder::kTwo) / 5e200, 1.0, 1e-15);
}

TEST(HeadTail, Examples) {
  EXPECT_EQ(head_tail(DenseVector{5, -7, 1}, 1).head, std::vector<std::size_t>{1});
  EXPECT_EQ(head_tail(DenseVector{2, -2, 0}, 1).head, std::vector<std::size_t>{0});
  const auto ones = head_tail(DenseVector(6, 1.0), 3);
  EXPECT_EQ(ones.head, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(ones.tail, (std::vector<std::size_t>{3, 4, 5}));
}

TEST(HeadTail, LargeKIsAllHead) {
  const auto split = head_tail(DenseVector{1, 2, 3}, 10);
  EXPECT_EQ(split.head.size(), 3u);
  EXPECT_TRUE(split.tail.empty());
  EXPECT_TRUE(head_tail(DenseVector{1, 2, 3}, 0).head.empty());
}

TEST(HeadTail, PartitionAndL1Identity) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    DenseVector x(n);
    // Rounded values force plenty of ties.
    for (std::size_t i = 0; i < n; ++i) x[i] = std::round(3.0 * rng.gaussian());
    const std::size_t k = rng.below(n + 2);
    const auto split = head_tail(x, k);
    ASSERT_EQ(split.head.size(), std::min(k, n));
    std::vector<int> seen(n, 0);
    for (auto i : split.head) ++seen[i];
    for (auto i : split.tail) ++seen[i];
    for (int s : seen) EXPECT_EQ(s, 1);

    // Head is the k largest magnitudes; among ties the lower index wins.
    for (auto h : split.head) {
      for (auto t : split.tail) {
        const bool dominates = std::abs(x[h]) > std::abs(x[t]) ||
                               (std::abs(x[h]) == std::abs(x[t]) && h < t);
        EXPECT_TRUE(dominates) << "head " << h << " tail " << t;
      }
    }
    const double l1 = norm(x, NormOrder::kOne);
    EXPECT_EQ(norm(project(x, split.head), NormOrder::kOne) + tail_norm1(x, k), l1);
    EXPECT_EQ(head_tail(x, k).head, split.head);
  }
}

TEST(Project, Examples) {
  const DenseVector x{1, 2, 3};
  const std::vector<std::size_t> s{0, 2};
  EXPECT_EQ(project(x, s), (DenseVector{1, 0, 3}));
  EXPECT_EQ(project(x, std::vector<std::size_t>{}), (DenseVector{0, 0, 0}));
  const std::vector<std::size_t> bad{3};
  EXPECT_THROW(project(x, bad), DimensionError);
}

TEST(Project, LeaveOneOut) {
  const DenseVector x{1.5, -2.0, 4.0, 0.25};
  for (std::size_t i = 0; i < x.dim(); ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      if (j != i) others.push_back(j);
    }
    EXPECT_EQ(norm(project(x, others), NormOrder::kOne),
              norm(x, NormOrder::kOne) - std::abs(x[i]));
  }
}
