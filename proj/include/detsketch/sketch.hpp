#pragma once

#include <cstdint>

#include "detsketch/linalg.hpp"

namespace detsketch {

/// FNV-1a over the shape and raw entry bytes; identifies which matrix
/// produced a sketch.
std::uint64_t fingerprint(const DenseMatrix& a);

/// The measurement vector Ax together with the fingerprint of A.
struct Sketch {
  DenseVector values;
  std::uint64_t source = 0;
};

Sketch make_sketch(const DenseMatrix& a, const DenseVector& x);

/// Throws DimensionError when `s` was not produced by `a`.
void require_source(const Sketch& s, const DenseMatrix& a);

}  // namespace detsketch
