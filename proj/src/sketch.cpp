#include "detsketch/sketch.hpp"

#include <cstring>

#include "detsketch/errors.hpp"

namespace detsketch {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
}

}  // namespace

std::uint64_t fingerprint(const DenseMatrix& a) {
  std::uint64_t h = kFnvOffset;
  const std::uint64_t shape[2] = {a.rows(), a.cols()};
  mix(h, shape, sizeof(shape));
  mix(h, a.entries().data(), a.entries().size_bytes());
  return h;
}

Sketch make_sketch(const DenseMatrix& a, const DenseVector& x) {
  return {mat_vec(a, x), fingerprint(a)};
}

void require_source(const Sketch& s, const DenseMatrix& a) {
  if (s.source != fingerprint(a)) {
    throw DimensionError("sketch was produced by a different matrix");
  }
}

}  // namespace detsketch
