#include "detsketch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "detsketch/errors.hpp"

namespace detsketch {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ParameterError(std::string(what) + " has a non-finite entry");
    }
  }
}

void require_same_dim(const DenseVector& x, const DenseVector& y) {
  if (x.dim() != y.dim()) {
    throw DimensionError("vector dimensions differ: " + std::to_string(x.dim()) +
                         " vs " + std::to_string(y.dim()));
  }
}

}  // namespace

DenseVector::DenseVector(std::size_t dim, double fill) : values_(dim, fill) {
  require_finite(values_, "vector");
}

DenseVector::DenseVector(std::initializer_list<double> values)
    : values_(values) {
  require_finite(values_, "vector");
}

DenseVector::DenseVector(std::vector<double> values)
    : values_(std::move(values)) {
  require_finite(values_, "vector");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : DenseMatrix(rows, cols, std::vector<double>(rows * cols, 0.0)) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("matrix payload has " +
                         std::to_string(entries_.size()) + " entries, expected " +
                         std::to_string(rows_ * cols_));
  }
  require_finite(entries_, "matrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  std::vector<double> entries;
  entries.reserve(m * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionError("ragged matrix rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return DenseMatrix(m, n, std::move(entries));
}

DenseVector mat_vec(const DenseMatrix& a, const DenseVector& x) {
  if (a.cols() != x.dim()) {
    throw DimensionError("mat_vec: A has " + std::to_string(a.cols()) +
                         " columns but x has dimension " +
                         std::to_string(x.dim()));
  }
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    double acc = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
  return DenseVector(std::move(out));
}

DenseVector mat_t_vec(const DenseMatrix& a, const DenseVector& s) {
  if (a.rows() != s.dim()) {
    throw DimensionError("mat_t_vec: A has " + std::to_string(a.rows()) +
                         " rows but the sketch has dimension " +
                         std::to_string(s.dim()));
  }
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double sr = s[r];
    if (sr == 0.0) continue;
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) out[c] += row[c] * sr;
  }
  return DenseVector(std::move(out));
}

DenseVector column(const DenseMatrix& a, std::size_t j) {
  if (j >= a.cols()) throw DimensionError("column index out of range");
  std::vector<double> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) out[r] = a(r, j);
  return DenseVector(std::move(out));
}

double column_dot(const DenseMatrix& a, std::size_t j, const DenseVector& s) {
  if (j >= a.cols()) throw DimensionError("column index out of range");
  if (a.rows() != s.dim()) throw DimensionError("column_dot: row count mismatch");
  double acc = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) acc += a(r, j) * s[r];
  return acc;
}

double dot(const DenseVector& x, const DenseVector& y) {
  require_same_dim(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i] * y[i];
  return acc;
}

double norm(const DenseVector& x, NormOrder p) {
  switch (p) {
    case NormOrder::kOne: {
      double acc = 0.0;
      for (double v : x) acc += std::abs(v);
      return acc;
    }
    case NormOrder::kTwo: {
      // Scaled accumulation so large entries do not overflow the square.
      double scale = 0.0;
      for (double v : x) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) return 0.0;
      double acc = 0.0;
      for (double v : x) acc += (v / scale) * (v / scale);
      return scale * std::sqrt(acc);
    }
    case NormOrder::kInf: {
      double acc = 0.0;
      for (double v : x) acc = std::max(acc, std::abs(v));
      return acc;
    }
  }
  return 0.0;
}

HeadTailSplit head_tail(const DenseVector& x, std::size_t k) {
  const std::size_t n = x.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t h = std::min(k, n);
  auto larger = [&x](std::size_t a, std::size_t b) {
    const double fa = std::abs(x[a]);
    const double fb = std::abs(x[b]);
    return fa != fb ? fa > fb : a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(h),
                    order.end(), larger);
  HeadTailSplit split;
  split.head.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(h));
  split.tail.assign(order.begin() + static_cast<std::ptrdiff_t>(h), order.end());
  std::sort(split.head.begin(), split.head.end());
  std::sort(split.tail.begin(), split.tail.end());
  return split;
}

DenseVector project(const DenseVector& x, std::span<const std::size_t> support) {
  DenseVector out(x.dim(), 0.0);
  for (std::size_t i : support) {
    if (i >= x.dim()) {
      throw DimensionError("project: index " + std::to_string(i) +
                           " out of range for dimension " +
                           std::to_string(x.dim()));
    }
    out[i] = x[i];
  }
  return out;
}

DenseVector head_of(const DenseVector& x, std::size_t k) {
  return project(x, head_tail(x, k).head);
}

double tail_norm1(const DenseVector& x, std::size_t k) {
  double acc = 0.0;
  for (std::size_t i : head_tail(x, k).tail) acc += std::abs(x[i]);
  return acc;
}

DenseVector operator+(const DenseVector& x, const DenseVector& y) {
  require_same_dim(x, y);
  DenseVector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = x[i] + y[i];
  return out;
}

DenseVector operator-(const DenseVector& x, const DenseVector& y) {
  require_same_dim(x, y);
  DenseVector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = x[i] - y[i];
  return out;
}

DenseVector operator*(double alpha, const DenseVector& x) {
  DenseVector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = alpha * x[i];
  return out;
}

}  // namespace detsketch
