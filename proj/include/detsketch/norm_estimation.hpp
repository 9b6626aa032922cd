#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>

#include "detsketch/linalg.hpp"

namespace detsketch {

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// ||x||_p for any p >= 1, including p = infinity.
double lp_norm(const DenseVector& x, double p);

/// ||x||_q + eps ||x||_p.
double norm_objective(const DenseVector& x, double p, double q, double epsilon);

/// Returns nullopt when ||x||_q + eps ||x||_p <= level. Otherwise returns h
/// with h.x = ||x||_q + eps ||x||_p and h.y <= ||y||_q + eps ||y||_p for all
/// y, so every y with h.y >= h.x is at least as expensive as x.
std::optional<DenseVector> separation_oracle(const DenseVector& x, double p, double q,
                                             double epsilon, double level);

struct NormEstimatorOptions {
  double p = 1.0;
  double q = 2.0;
  double rows_constant = 4.0;  // m = ceil(c * eps^-2 * (1 + ln(eps^2 n)))
};

/// Sketching matrix with orthonormal rows plus an orthonormal basis of its
/// kernel. With A A^T = I the minimum-norm preimage of z is A^T z.
class NormEstimator {
 public:
  /// Rows of `a` must be orthonormal to 1e-9; the kernel basis is derived
  /// from a Householder QR of A^T.
  NormEstimator(DenseMatrix a, double p, double q, double epsilon);
  ~NormEstimator();
  NormEstimator(NormEstimator&&) noexcept;
  NormEstimator& operator=(NormEstimator&&) noexcept;

  const DenseMatrix& matrix() const { return a_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double epsilon() const { return epsilon_; }
  std::size_t dim() const { return a_.cols(); }
  std::size_t kernel_dim() const;

  /// Column-major n x (n - m) kernel basis.
  std::span<const double> kernel() const;

 private:
  struct Kernel;

  DenseMatrix a_;
  double p_;
  double q_;
  double epsilon_;
  std::unique_ptr<Kernel> kernel_;
};

std::size_t norm_estimator_rows(std::size_t n, double epsilon,
                                double rows_constant = 4.0);

/// Gaussian matrix with orthonormalized rows (Monte Carlo: its kernel has
/// the required width with high probability but is not certified).
/// Requires 1/eps^2 < n/2.
NormEstimator build_estimator(std::size_t n, double epsilon, std::uint64_t seed,
                              const NormEstimatorOptions& options = {});

struct NormSearchOptions {
  double bracket_tol = 1e-3;  // stop when hi <= (1 + tol) lo
  /// Per-level ellipsoid cap; 0 picks 10 d^2 ln(n / eps).
  std::size_t max_iterations_per_level = 0;
};

struct NormEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t iterations = 0;  // ellipsoid steps over all levels
  std::size_t levels = 0;      // feasibility problems posed
  bool budget_exceeded = false;
};

/// min over {x : A x = z} of ||x||_q + eps ||x||_p, bracketed by binary
/// search on the level M with an ellipsoid feasibility test per level.
NormEstimate estimate_norm(const NormEstimator& est, const DenseVector& z,
                           const NormSearchOptions& options = {});

}  // namespace detsketch
