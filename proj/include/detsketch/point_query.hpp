#pragma once

#include <cstddef>
#include <optional>

#include "detsketch/incoherent.hpp"
#include "detsketch/recovery.hpp"
#include "detsketch/sketch.hpp"
#include "detsketch/sparse_recovery.hpp"

namespace detsketch {

/// Multiplier the tail decoder is held to: ||x' - x||_inf <= C eps ||x_tail(k)||_1.
inline constexpr double kTailConstant = 4.0;

/// ceil(1 / eps^2), the default head size for the tail decoder.
std::size_t default_tail_order(double epsilon);

/// An incoherent matrix A and, for the tail guarantee, a RIP matrix B over the
/// same n columns.
class PointQuerySystem {
 public:
  explicit PointQuerySystem(IncoherentMatrix a, std::optional<RipMatrix> b = {});

  const IncoherentMatrix& incoherent() const { return a_; }
  const std::optional<RipMatrix>& rip() const { return b_; }
  bool tail_mode() const { return b_.has_value(); }
  std::size_t dim() const { return a_.matrix.cols(); }
  double epsilon() const { return a_.epsilon; }

 private:
  IncoherentMatrix a_;
  std::optional<RipMatrix> b_;
};

/// x' = A^T (Ax).
RecoveryResult decode(const PointQuerySystem& sys, const DenseVector& sketch);
RecoveryResult decode(const PointQuerySystem& sys, const Sketch& sketch);

/// x'_i = <A_i, sketch>, the single-coordinate form of decode.
double decode_coordinate(const PointQuerySystem& sys, const DenseVector& sketch,
                         std::size_t i);

/// Basis pursuit on sketch_b gives y; each coordinate is then estimated from
/// A(x - z^i) where z^i is y with coordinate i zeroed. Uses
/// A z^i = A y - y_i A_i so the whole pass costs O(mn).
RecoveryResult decode_tail(const PointQuerySystem& sys, const DenseVector& sketch_a,
                           const DenseVector& sketch_b);

}  // namespace detsketch
