#pragma once

#include <cstddef>
#include <string_view>

#include "detsketch/linalg.hpp"

namespace detsketch {

enum class GuaranteeKind {
  kPlain,  // |x'_i - x_i| <= eps * ||x_{-i}||_1
  kTail,   // ||x' - x||_inf <= constant * eps * ||x_{tail(k)}||_1
  kL1L1,   // ||x - x'_{head(k)}||_1 <= constant * ||x_{tail(k)}||_1
};

std::string_view to_string(GuaranteeKind kind);

/// Error class a recovered vector is certified (or, for the Monte Carlo
/// decoders, measured) to satisfy. `constant` is the multiplier the test
/// suites hold the decoder to; it is 1 for the plain guarantee.
struct Guarantee {
  GuaranteeKind kind = GuaranteeKind::kPlain;
  double epsilon = 0.0;
  std::size_t k = 0;
  double constant = 1.0;
};

struct RecoveryResult {
  DenseVector x_prime;
  Guarantee guarantee;
};

}  // namespace detsketch
