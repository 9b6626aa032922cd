#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "detsketch/codes.hpp"
#include "detsketch/linalg.hpp"

namespace detsketch {

enum class Construction {
  kRandomSign,
  kReedSolomon,
  kChineseRemainder,
  kGvRandom,
  kIdentity,
};

std::string_view to_string(Construction c);
Construction construction_for(CodeKind kind);

/// Column-normalized matrix whose distinct columns have |<A_i, A_j>| <= epsilon.
/// `verified` is set only after verify_coherence accepted the matrix.
struct IncoherentMatrix {
  DenseMatrix matrix;
  double epsilon = 0.0;
  Construction construction = Construction::kRandomSign;
  bool verified = false;
  std::size_t attempts = 1;
};

/// Tolerance applied to both the coherence bound and the unit column norms.
inline constexpr double kCoherenceTolerance = 1e-9;

struct CoherenceReport {
  bool pass = false;
  double max_coherence = 0.0;  // max_{i != j} |<A_i, A_j>|
  std::size_t witness_i = 0;
  std::size_t witness_j = 0;
  double max_norm_deviation = 0.0;  // max_i | ||A_i||_2 - 1 |
  std::size_t norm_witness = 0;
};

CoherenceReport verify_coherence(const DenseMatrix& a, double epsilon);

/// Rows are indexed block-major as j * q + symbol; column i has 1/sqrt(t) in
/// row (j, C_i[j]) for every block j.
IncoherentMatrix embed_code(const Code& code, bool verify = true);

struct RandomSignOptions {
  double rows_constant = 6.0;  // m = ceil(c * ln(n) / epsilon^2)
  std::size_t max_attempts = 10;
  /// Skip the O(n^2 m) verification; the result is marked unverified.
  bool trust = false;
};

std::size_t random_sign_rows(std::size_t n, double epsilon,
                             const RandomSignOptions& options = {});

IncoherentMatrix random_sign_matrix(std::size_t n, double epsilon,
                                    std::uint64_t seed,
                                    const RandomSignOptions& options = {});

IncoherentMatrix identity_incoherent(std::size_t n);

/// Asymptotic measurement counts for each construction with the hidden
/// constants set to 1, reported next to the realized m for auditing.
double measurement_formula(Construction c, double n, double epsilon);

}  // namespace detsketch
