#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace detsketch {

/// Real vector with finite entries.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t dim, double fill = 0.0);
  DenseVector(std::initializer_list<double> values);
  explicit DenseVector(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& data() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

/// Dense m x n real matrix stored row-major. rows, cols >= 1 and every entry
/// finite.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

enum class NormOrder { kOne, kTwo, kInf };

/// Coordinates split into the k largest |x_i| (head) and the rest (tail).
/// Equal magnitudes are ordered by lower index first. Both sets are sorted
/// ascending.
struct HeadTailSplit {
  std::vector<std::size_t> head;
  std::vector<std::size_t> tail;
};

DenseVector mat_vec(const DenseMatrix& a, const DenseVector& x);
/// A^T s, accumulated row by row in a fixed order.
DenseVector mat_t_vec(const DenseMatrix& a, const DenseVector& s);
DenseVector column(const DenseMatrix& a, std::size_t j);
/// <A_j, s> without materializing the column.
double column_dot(const DenseMatrix& a, std::size_t j, const DenseVector& s);

double dot(const DenseVector& x, const DenseVector& y);
double norm(const DenseVector& x, NormOrder p);

HeadTailSplit head_tail(const DenseVector& x, std::size_t k);
/// Zeroes every coordinate outside `support`.
DenseVector project(const DenseVector& x, std::span<const std::size_t> support);
/// x restricted to its own k largest coordinates.
DenseVector head_of(const DenseVector& x, std::size_t k);
/// ||x_{tail(k)}||_1.
double tail_norm1(const DenseVector& x, std::size_t k);

DenseVector operator+(const DenseVector& x, const DenseVector& y);
DenseVector operator-(const DenseVector& x, const DenseVector& y);
DenseVector operator*(double alpha, const DenseVector& x);

}  // namespace detsketch
