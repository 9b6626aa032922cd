#include "detsketch/incoherent.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "detsketch/errors.hpp"
#include "detsketch/random.hpp"

namespace detsketch {

std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::kRandomSign: return "random-sign";
    case Construction::kReedSolomon: return "reed-solomon";
    case Construction::kChineseRemainder: return "crt-code";
    case Construction::kGvRandom: return "gv-code";
    case Construction::kIdentity: return "identity";
  }
  return "unknown";
}

Construction construction_for(CodeKind kind) {
  switch (kind) {
    case CodeKind::kReedSolomon: return Construction::kReedSolomon;
    case CodeKind::kChineseRemainder: return Construction::kChineseRemainder;
    case CodeKind::kGvRandom: return Construction::kGvRandom;
  }
  return Construction::kReedSolomon;
}

CoherenceReport verify_coherence(const DenseMatrix& a, double epsilon) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Column-major copy so each inner product walks contiguous memory.
  std::vector<double> cols(m * n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) cols[c * m + r] = a(r, c);
  }

  CoherenceReport report;
  for (std::size_t i = 0; i < n; ++i) {
    const double* ci = cols.data() + i * m;
    double sq = 0.0;
    for (std::size_t r = 0; r < m; ++r) sq += ci[r] * ci[r];
    const double dev = std::abs(std::sqrt(sq) - 1.0);
    if (dev > report.max_norm_deviation) {
      report.max_norm_deviation = dev;
      report.norm_witness = i;
    }
  }

  bool have_pair = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double* ci = cols.data() + i * m;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* cj = cols.data() + j * m;
      double acc = 0.0;
      for (std::size_t r = 0; r < m; ++r) acc += ci[r] * cj[r];
      const double value = std::abs(acc);
      if (!have_pair || value > report.max_coherence) {
        report.max_coherence = value;
        report.witness_i = i;
        report.witness_j = j;
        have_pair = true;
      }
    }
  }

  report.pass = report.max_coherence <= epsilon + kCoherenceTolerance &&
                report.max_norm_deviation <= kCoherenceTolerance;
  return report;
}

IncoherentMatrix embed_code(const Code& code, bool verify) {
  const std::size_t q = code.alphabet();
  const std::size_t t = code.length();
  const std::size_t n = code.size();
  const double value = 1.0 / std::sqrt(static_cast<double>(t));
  DenseMatrix a(q * t, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < t; ++j) a(j * q + code.symbol(i, j), i) = value;
  }

  IncoherentMatrix out{std::move(a), code.epsilon(), construction_for(code.kind()),
                       false, code.attempts()};
  if (verify) out.verified = verify_coherence(out.matrix, out.epsilon).pass;
  return out;
}

std::size_t random_sign_rows(std::size_t n, double epsilon,
                             const RandomSignOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("random_sign: epsilon must lie in (0, 1)");
  }
  if (n == 0) throw ParameterError("random_sign: n must be >= 1");
  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(options.rows_constant * ln_n / (epsilon * epsilon))));
}

IncoherentMatrix random_sign_matrix(std::size_t n, double epsilon,
                                    std::uint64_t seed,
                                    const RandomSignOptions& options) {
  const std::size_t m = random_sign_rows(n, epsilon, options);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Rng rng(seed);
  DenseMatrix a(m, n);
  for (std::size_t attempt = 1; attempt <= options.max_attempts; ++attempt) {
    for (double& e : a.entries()) e = scale * rng.sign();
    if (options.trust) {
      return {std::move(a), epsilon, Construction::kRandomSign, false, attempt};
    }
    if (verify_coherence(a, epsilon).pass) {
      return {std::move(a), epsilon, Construction::kRandomSign, true, attempt};
    }
  }
  throw ConstructionError(
      "random_sign: coherence check failed in " +
      std::to_string(options.max_attempts) +
      " attempts; increase the rows constant (currently " +
      std::to_string(options.rows_constant) + ")");
}

IncoherentMatrix identity_incoherent(std::size_t n) {
  return {DenseMatrix::identity(n), 0.0, Construction::kIdentity, true, 1};
}

double measurement_formula(Construction c, double n, double epsilon) {
  const double ln_n = std::log(std::max(n, 2.0));
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  const double mixed = std::max(std::log(ln_n) + std::log(1.0 / epsilon), 1.0);
  switch (c) {
    case Construction::kRandomSign:
    case Construction::kGvRandom:
      return inv_eps2 * ln_n;
    case Construction::kReedSolomon:
      return inv_eps2 * (ln_n / mixed) * (ln_n / mixed);
    case Construction::kChineseRemainder:
      return inv_eps2 * ln_n * ln_n / mixed;
    case Construction::kIdentity:
      return n;
  }
  return 0.0;
}

}  // namespace detsketch
