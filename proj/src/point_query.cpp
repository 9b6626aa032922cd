#include "detsketch/point_query.hpp"

#include <cmath>
#include <string>

#include "detsketch/errors.hpp"

namespace detsketch {

std::size_t default_tail_order(double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  return static_cast<std::size_t>(std::ceil(1.0 / (epsilon * epsilon) - 1e-9));
}

PointQuerySystem::PointQuerySystem(IncoherentMatrix a, std::optional<RipMatrix> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (b_ && b_->matrix.cols() != a_.matrix.cols()) {
    throw DimensionError("incoherent matrix has " + std::to_string(a_.matrix.cols()) +
                         " columns but the RIP matrix has " +
                         std::to_string(b_->matrix.cols()));
  }
}

RecoveryResult decode(const PointQuerySystem& sys, const DenseVector& sketch) {
  return {mat_t_vec(sys.incoherent().matrix, sketch),
          Guarantee{GuaranteeKind::kPlain, sys.epsilon(), 0, 1.0}};
}

RecoveryResult decode(const PointQuerySystem& sys, const Sketch& sketch) {
  require_source(sketch, sys.incoherent().matrix);
  return decode(sys, sketch.values);
}

double decode_coordinate(const PointQuerySystem& sys, const DenseVector& sketch,
                         std::size_t i) {
  return column_dot(sys.incoherent().matrix, i, sketch);
}

RecoveryResult decode_tail(const PointQuerySystem& sys, const DenseVector& sketch_a,
                           const DenseVector& sketch_b) {
  if (!sys.tail_mode()) {
    throw ParameterError("decode_tail needs a system configured with a RIP matrix");
  }
  const DenseMatrix& a = sys.incoherent().matrix;
  if (sketch_a.dim() != a.rows()) {
    throw DimensionError("decode_tail: sketch of A has the wrong dimension");
  }
  const DenseVector y = l1_decode_or_throw(sys.rip()->matrix, sketch_b);

  // A^T (sketch_a - A y) in one pass; coordinate i then adds back y_i ||A_i||^2.
  const DenseVector residual = sketch_a - mat_vec(a, y);
  const DenseVector correlation = mat_t_vec(a, residual);
  std::vector<double> col_sq(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) col_sq[c] += row[c] * row[c];
  }

  DenseVector x_prime(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    const double w_i = correlation[i] + y[i] * col_sq[i];
    const double z_i = 0.0;  // z^i agrees with y except at i, where it is zero
    x_prime[i] = w_i + z_i;
  }
  return {std::move(x_prime),
          Guarantee{GuaranteeKind::kTail, sys.epsilon(), sys.rip()->k, kTailConstant}};
}

}  // namespace detsketch
