#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace detsketch {

bool is_prime(std::uint64_t v);
/// Smallest prime >= v.
std::uint64_t next_prime(std::uint64_t v);

/// Arithmetic modulo a prime q.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q);

  std::uint64_t order() const { return q_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % q_);
  }

  /// Horner evaluation; coeffs[0] is the constant term.
  std::uint64_t evaluate(std::span<const std::uint64_t> coeffs,
                         std::uint64_t point) const;

 private:
  std::uint64_t q_;
};

enum class CodeKind { kReedSolomon, kChineseRemainder, kGvRandom };

std::string_view to_string(CodeKind kind);

/// n codewords of length t over the alphabet {0, ..., q-1}. Words are
/// pairwise distinct; `epsilon` is the design bound on the fraction of
/// positions two words may agree on.
class Code {
 public:
  Code(CodeKind kind, std::size_t q, std::size_t t,
       std::vector<std::uint32_t> symbols, double epsilon,
       std::size_t attempts = 1);

  CodeKind kind() const { return kind_; }
  std::size_t size() const { return n_; }
  std::size_t alphabet() const { return q_; }
  std::size_t length() const { return t_; }
  double epsilon() const { return epsilon_; }
  /// Las Vegas generations used (1 for the explicit constructions).
  std::size_t attempts() const { return attempts_; }

  std::uint32_t symbol(std::size_t word, std::size_t pos) const {
    return symbols_[word * t_ + pos];
  }
  std::span<const std::uint32_t> word(std::size_t i) const {
    return {symbols_.data() + i * t_, t_};
  }

 private:
  CodeKind kind_;
  std::size_t n_;
  std::size_t q_;
  std::size_t t_;
  std::vector<std::uint32_t> symbols_;
  double epsilon_;
  std::size_t attempts_;
};

/// Number of positions where words i and j differ. Requires i != j.
std::size_t hamming_distance(const Code& code, std::size_t i, std::size_t j);

struct AgreementWitness {
  std::size_t agreements = 0;
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Largest number of agreeing positions over all pairs (exhaustive).
AgreementWitness max_agreement(const Code& code);

struct ReedSolomonParams {
  std::uint64_t q = 0;       // field size, equal to the block length
  std::uint64_t degree = 0;  // polynomials of degree <= degree
};

struct ReedSolomonOptions {
  std::optional<std::uint64_t> field_size;
  std::optional<std::uint64_t> degree;
};

/// Smallest prime q whose minimal degree d (q^(d+1) >= n) satisfies
/// d <= epsilon * q. Overrides are validated against the same constraints.
ReedSolomonParams reed_solomon_params(std::uint64_t n, double epsilon,
                                      const ReedSolomonOptions& options = {});

/// Word i evaluates the polynomial whose coefficients are the base-q digits
/// of i (lowest digit = constant term) at 0, 1, ..., q-1.
Code reed_solomon_code(std::size_t n, double epsilon,
                       const ReedSolomonOptions& options = {});

struct ChineseRemainderParams {
  std::vector<std::uint64_t> primes;  // p_1 < ... < p_t, consecutive primes
};

ChineseRemainderParams chinese_remainder_params(std::uint64_t n, double epsilon);

/// Word i is (i mod p_1, ..., i mod p_t).
Code chinese_remainder_code(std::size_t n, double epsilon);

struct GvRandomOptions {
  double length_constant = 8.0;  // t = ceil(c * ln(n) / epsilon)
  std::size_t max_attempts = 10;
};

struct GvRandomParams {
  std::uint64_t q = 0;
  std::uint64_t t = 0;
};

GvRandomParams gv_random_params(std::uint64_t n, double epsilon,
                                const GvRandomOptions& options = {});

/// Uniform random code, regenerated until every pair agrees on at most
/// floor(epsilon * t) positions.
Code gv_random_code(std::size_t n, double epsilon, std::uint64_t seed,
                    const GvRandomOptions& options = {});

}  // namespace detsketch
