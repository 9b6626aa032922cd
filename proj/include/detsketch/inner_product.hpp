#pragma once

#include <cstddef>

#include "detsketch/linalg.hpp"
#include "detsketch/point_query.hpp"
#include "detsketch/sketch.hpp"
#include "detsketch/sparse_recovery.hpp"

namespace detsketch {

enum class IpErrorClass {
  kBasic,      // |value - <x,y>| <= 12 eps ||x||_1 ||y||_1
  kTailMixed,  // mixed l1/l2 tail bound, see ip_tail_bound
};

struct InnerProductEstimate {
  double value = 0.0;
  IpErrorClass error_class = IpErrorClass::kBasic;
  double epsilon = 0.0;
  std::size_t k = 0;
};

/// floor(1 / eps): at most this many coordinates can carry eps ||x||_1 mass.
std::size_t ip_head_size(double epsilon);

/// <x'_{head}, y'_{head}> where x', y' are the point-query decodes and each
/// head keeps floor(1/eps) coordinates of its own vector.
InnerProductEstimate estimate_ip(const PointQuerySystem& sys, const DenseVector& sketch_x,
                                 const DenseVector& sketch_y);
InnerProductEstimate estimate_ip(const PointQuerySystem& sys, const Sketch& sketch_x,
                                 const Sketch& sketch_y);

/// Point query through the inner-product estimator: estimate(Ax, A e_i).
double point_query_from_ip(const PointQuerySystem& sys, const DenseVector& sketch_x,
                           std::size_t i);

/// <x', y'> with x', y' the basis-pursuit decodes of B x and B y.
InnerProductEstimate estimate_ip_tail(const RipMatrix& b, double epsilon,
                                      const DenseVector& sketch_x,
                                      const DenseVector& sketch_y);

/// 12 eps ||x||_1 ||y||_1.
double ip_basic_bound(double epsilon, const DenseVector& x, const DenseVector& y);

/// eps (||x||_2 ||y_tail||_1 + ||x_tail||_1 ||y||_2) + eps^2 ||x_tail||_1 ||y_tail||_1
/// with tails taken at order k.
double ip_tail_bound(double epsilon, std::size_t k, const DenseVector& x,
                     const DenseVector& y);

}  // namespace detsketch
