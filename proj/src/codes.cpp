#include "detsketch/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "detsketch/errors.hpp"
#include "detsketch/random.hpp"

namespace detsketch {
namespace {

void require_epsilon(double epsilon, double upper, const char* who) {
  if (!(epsilon > 0.0 && epsilon < upper)) {
    throw ParameterError(std::string(who) + ": epsilon must lie in (0, " +
                         std::to_string(upper) + "), got " +
                         std::to_string(epsilon));
  }
}

// Smallest d >= 0 with q^(d+1) >= n.
std::uint64_t minimal_degree(std::uint64_t q, std::uint64_t n) {
  std::uint64_t d = 0;
  unsigned __int128 count = q;
  while (count < n) {
    count *= q;
    ++d;
  }
  return d;
}

bool polynomial_count_covers(std::uint64_t q, std::uint64_t d, std::uint64_t n) {
  unsigned __int128 count = 1;
  for (std::uint64_t e = 0; e <= d; ++e) {
    count *= q;
    if (count >= n) return true;
  }
  return count >= n;
}

std::size_t floor_fraction(double epsilon, std::size_t t) {
  // Guard against 0.25 * 8 landing at 1.9999999.
  return static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(t) + 1e-12));
}

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d <= v / d; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t v) {
  if (v <= 2) return 2;
  while (!is_prime(v)) ++v;
  return v;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (!is_prime(q)) {
    throw ParameterError("field order " + std::to_string(q) + " is not prime");
  }
}

std::uint64_t PrimeField::evaluate(std::span<const std::uint64_t> coeffs,
                                   std::uint64_t point) const {
  std::uint64_t acc = 0;
  const std::uint64_t x = point % q_;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = add(mul(acc, x), *it % q_);
  }
  return acc;
}

std::string_view to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::kReedSolomon: return "reed-solomon";
    case CodeKind::kChineseRemainder: return "crt-code";
    case CodeKind::kGvRandom: return "gv-code";
  }
  return "unknown";
}

Code::Code(CodeKind kind, std::size_t q, std::size_t t,
           std::vector<std::uint32_t> symbols, double epsilon,
           std::size_t attempts)
    : kind_(kind),
      n_(t == 0 ? 0 : symbols.size() / t),
      q_(q),
      t_(t),
      symbols_(std::move(symbols)),
      epsilon_(epsilon),
      attempts_(attempts) {
  if (t_ == 0 || q_ == 0) throw ParameterError("code needs t >= 1 and q >= 1");
  if (symbols_.size() != n_ * t_) {
    throw ParameterError("symbol count is not a multiple of the block length");
  }
  for (std::uint32_t s : symbols_) {
    if (s >= q_) {
      throw ParameterError("symbol " + std::to_string(s) +
                           " outside alphabet of size " + std::to_string(q_));
    }
  }
  std::vector<std::size_t> order(n_);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    const auto wa = word(a);
    const auto wb = word(b);
    return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
  });
  for (std::size_t r = 1; r < order.size(); ++r) {
    const auto wa = word(order[r - 1]);
    const auto wb = word(order[r]);
    if (std::equal(wa.begin(), wa.end(), wb.begin())) {
      throw ParameterError("codewords " + std::to_string(order[r - 1]) + " and " +
                           std::to_string(order[r]) + " coincide");
    }
  }
}

std::size_t hamming_distance(const Code& code, std::size_t i, std::size_t j) {
  if (i >= code.size() || j >= code.size()) {
    throw DimensionError("codeword index out of range");
  }
  if (i == j) throw ParameterError("hamming_distance requires two distinct indices");
  std::size_t diff = 0;
  for (std::size_t k = 0; k < code.length(); ++k) {
    diff += code.symbol(i, k) != code.symbol(j, k) ? 1 : 0;
  }
  return diff;
}

AgreementWitness max_agreement(const Code& code) {
  AgreementWitness best;
  bool seen = false;
  const std::size_t t = code.length();
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto wi = code.word(i);
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      const auto wj = code.word(j);
      std::size_t agree = 0;
      for (std::size_t k = 0; k < t; ++k) agree += wi[k] == wj[k] ? 1 : 0;
      if (!seen || agree > best.agreements) {
        best = {agree, i, j};
        seen = true;
      }
    }
  }
  return best;
}

ReedSolomonParams reed_solomon_params(std::uint64_t n, double epsilon,
                                      const ReedSolomonOptions& options) {
  require_epsilon(epsilon, 0.5, "reed_solomon");
  if (n == 0) throw ParameterError("reed_solomon: n must be >= 1");

  if (options.field_size) {
    const std::uint64_t q = *options.field_size;
    if (!is_prime(q)) {
      throw ParameterError("reed_solomon: field size " + std::to_string(q) +
                           " is not prime");
    }
    const std::uint64_t d = options.degree.value_or(minimal_degree(q, n));
    if (!polynomial_count_covers(q, d, n)) {
      throw ParameterError("reed_solomon: constraint q^(d+1) >= n violated (q=" +
                           std::to_string(q) + ", d=" + std::to_string(d) + ")");
    }
    if (static_cast<double>(d) > epsilon * static_cast<double>(q)) {
      throw ParameterError("reed_solomon: constraint d <= epsilon*q violated (d=" +
                           std::to_string(d) + ", epsilon*q=" +
                           std::to_string(epsilon * static_cast<double>(q)) + ")");
    }
    return {q, d};
  }

  for (std::uint64_t q = 2;; q = next_prime(q + 1)) {
    const std::uint64_t d = options.degree.value_or(minimal_degree(q, n));
    if (d >= q) continue;
    if (!polynomial_count_covers(q, d, n)) continue;
    if (static_cast<double>(d) <= epsilon * static_cast<double>(q)) return {q, d};
  }
}

Code reed_solomon_code(std::size_t n, double epsilon,
                       const ReedSolomonOptions& options) {
  const auto params = reed_solomon_params(n, epsilon, options);
  const PrimeField field(params.q);
  const std::size_t q = params.q;
  std::vector<std::uint32_t> symbols(n * q);
  std::vector<std::uint64_t> coeffs(params.degree + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t digits = i;
    for (auto& c : coeffs) {
      c = digits % q;
      digits /= q;
    }
    for (std::size_t j = 0; j < q; ++j) {
      symbols[i * q + j] = static_cast<std::uint32_t>(field.evaluate(coeffs, j));
    }
  }
  return Code(CodeKind::kReedSolomon, q, q, std::move(symbols), epsilon);
}

ChineseRemainderParams chinese_remainder_params(std::uint64_t n, double epsilon) {
  require_epsilon(epsilon, 1.0, "chinese_remainder");
  if (n == 0) throw ParameterError("chinese_remainder: n must be >= 1");
  const double log2n = std::log2(static_cast<double>(std::max<std::uint64_t>(n, 2)));
  const auto target = static_cast<std::uint64_t>(std::ceil(log2n / epsilon));
  const std::uint64_t p1 = next_prime(std::max<std::uint64_t>(target, 2));
  const double log_p1_n =
      std::log(static_cast<double>(std::max<std::uint64_t>(n, 2))) /
      std::log(static_cast<double>(p1));
  const auto t = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(log_p1_n / epsilon)));
  ChineseRemainderParams params;
  params.primes.reserve(t);
  std::uint64_t p = p1;
  for (std::uint64_t j = 0; j < t; ++j) {
    params.primes.push_back(p);
    p = next_prime(p + 1);
  }
  return params;
}

Code chinese_remainder_code(std::size_t n, double epsilon) {
  const auto params = chinese_remainder_params(n, epsilon);
  const std::size_t t = params.primes.size();
  std::vector<std::uint32_t> symbols(n * t);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      symbols[i * t + j] = static_cast<std::uint32_t>(i % params.primes[j]);
    }
  }
  return Code(CodeKind::kChineseRemainder, params.primes.back(), t,
              std::move(symbols), epsilon);
}

GvRandomParams gv_random_params(std::uint64_t n, double epsilon,
                                const GvRandomOptions& options) {
  require_epsilon(epsilon, 1.0, "gv_random");
  if (n == 0) throw ParameterError("gv_random: n must be >= 1");
  if (!(options.length_constant > 0.0)) {
    throw ParameterError("gv_random: length constant must be positive");
  }
  const auto q = static_cast<std::uint64_t>(std::ceil(2.0 / epsilon - 1e-12));
  const double ln_n = std::log(static_cast<double>(std::max<std::uint64_t>(n, 2)));
  const auto t = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(options.length_constant * ln_n / epsilon)));
  return {q, t};
}

Code gv_random_code(std::size_t n, double epsilon, std::uint64_t seed,
                    const GvRandomOptions& options) {
  const auto params = gv_random_params(n, epsilon, options);
  const std::size_t t = params.t;
  const std::size_t allowed = floor_fraction(epsilon, t);
  Rng rng(seed);
  std::vector<std::uint32_t> symbols(n * t);
  for (std::size_t attempt = 1; attempt <= options.max_attempts; ++attempt) {
    for (auto& s : symbols) s = static_cast<std::uint32_t>(rng.below(params.q));

    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        std::size_t agree = 0;
        for (std::size_t k = 0; k < t; ++k) {
          agree += symbols[i * t + k] == symbols[j * t + k] ? 1 : 0;
        }
        ok = agree <= allowed;
      }
    }
    if (ok) {
      return Code(CodeKind::kGvRandom, params.q, t, std::move(symbols), epsilon,
                  attempt);
    }
  }
  throw ConstructionError("gv_random: no code with relative distance >= 1-epsilon in " +
                          std::to_string(options.max_attempts) +
                          " attempts; increase the length constant (currently " +
                          std::to_string(options.length_constant) + ")");
}

}  // namespace detsketch
