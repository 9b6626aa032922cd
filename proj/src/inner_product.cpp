#include "detsketch/inner_product.hpp"

#include <cmath>

#include "detsketch/errors.hpp"

namespace detsketch {

std::size_t ip_head_size(double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  const double h = std::floor(1.0 / epsilon + 1e-9);
  if (h >= 1e15) return static_cast<std::size_t>(1e15);
  return std::max<std::size_t>(1, static_cast<std::size_t>(h));
}

InnerProductEstimate estimate_ip(const PointQuerySystem& sys, const DenseVector& sketch_x,
                                 const DenseVector& sketch_y) {
  const DenseVector x_prime = decode(sys, sketch_x).x_prime;
  const DenseVector y_prime = decode(sys, sketch_y).x_prime;
  // Exactly orthonormal columns (epsilon 0) keep every coordinate.
  const std::size_t keep =
      sys.epsilon() > 0.0 ? std::min(ip_head_size(sys.epsilon()), x_prime.dim())
                          : x_prime.dim();
  const double value = dot(head_of(x_prime, keep), head_of(y_prime, keep));
  return {value, IpErrorClass::kBasic, sys.epsilon(), keep};
}

InnerProductEstimate estimate_ip(const PointQuerySystem& sys, const Sketch& sketch_x,
                                 const Sketch& sketch_y) {
  require_source(sketch_x, sys.incoherent().matrix);
  require_source(sketch_y, sys.incoherent().matrix);
  return estimate_ip(sys, sketch_x.values, sketch_y.values);
}

double point_query_from_ip(const PointQuerySystem& sys, const DenseVector& sketch_x,
                           std::size_t i) {
  if (i >= sys.dim()) {
    throw DimensionError("point_query_from_ip: index " + std::to_string(i) +
                         " out of range for n=" + std::to_string(sys.dim()));
  }
  const DenseVector basis_sketch = column(sys.incoherent().matrix, i);
  return estimate_ip(sys, sketch_x, basis_sketch).value;
}

InnerProductEstimate estimate_ip_tail(const RipMatrix& b, double epsilon,
                                      const DenseVector& sketch_x,
                                      const DenseVector& sketch_y) {
  const DenseVector x_prime = l1_decode_or_throw(b.matrix, sketch_x);
  const DenseVector y_prime = l1_decode_or_throw(b.matrix, sketch_y);
  return {dot(x_prime, y_prime), IpErrorClass::kTailMixed, epsilon, b.k};
}

double ip_basic_bound(double epsilon, const DenseVector& x, const DenseVector& y) {
  return 12.0 * epsilon * norm(x, NormOrder::kOne) * norm(y, NormOrder::kOne);
}

double ip_tail_bound(double epsilon, std::size_t k, const DenseVector& x,
                     const DenseVector& y) {
  const double xt = tail_norm1(x, k);
  const double yt = tail_norm1(y, k);
  return epsilon * (norm(x, NormOrder::kTwo) * yt + xt * norm(y, NormOrder::kTwo)) +
         epsilon * epsilon * xt * yt;
}

}  // namespace detsketch
