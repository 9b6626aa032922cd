#pragma once

#include <cstddef>
#include <cstdint>

#include "detsketch/linalg.hpp"
#include "detsketch/recovery.hpp"
#include "detsketch/simplex.hpp"

namespace detsketch {

/// Random-sign matrix intended to satisfy the restricted isometry property of
/// order k. This is a Monte Carlo object: RIP cannot be certified efficiently,
/// so `verified` is always false and correctness is established by behaviour.
struct RipMatrix {
  DenseMatrix matrix;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  double rows_constant = 6.0;
  bool verified = false;
};

inline constexpr double kDefaultRipConstant = 6.0;
/// Multiplier the l1/l1 decoder is held to on sparse-plus-noise inputs.
inline constexpr double kL1L1Constant = 10.0;

/// m = ceil(c * k * ln(e * n / k)).
std::size_t rip_rows(std::size_t n, std::size_t k,
                     double rows_constant = kDefaultRipConstant);

RipMatrix rip_matrix(std::size_t n, std::size_t k, std::uint64_t seed,
                     double rows_constant = kDefaultRipConstant);

enum class L1Status { kOptimal, kInfeasible, kIterLimit };

std::string_view to_string(L1Status status);

struct L1MinSolution {
  DenseVector z;
  double objective = 0.0;  // ||z||_1
  double residual = 0.0;   // ||B z - sketch||_inf
  L1Status status = L1Status::kIterLimit;
  std::size_t iterations = 0;
};

/// Basis pursuit: argmin ||z||_1 subject to B z = sketch, solved as the LP
/// over z = u - v with u, v >= 0.
L1MinSolution l1_minimize(const DenseMatrix& b, const DenseVector& sketch,
                          const LpOptions& options = {});

/// Basis-pursuit decode with the l1/l1 guarantee class. Throws SolverError
/// when the LP does not reach an optimal, feasible basis.
RecoveryResult recover_l1l1(const RipMatrix& b, const DenseVector& sketch);

/// Like l1_minimize, but raises SolverError with diagnostics unless optimal.
DenseVector l1_decode_or_throw(const DenseMatrix& b, const DenseVector& sketch);

}  // namespace detsketch
