#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "detsketch/linalg.hpp"
#include "detsketch/matrix_file.hpp"
#include "detsketch/random.hpp"

namespace detsketch {

enum class Problem { kPointQuery, kPointQueryTail, kInnerProduct, kL1L1, kNorm };

std::string_view to_string(Problem problem);
std::optional<Problem> parse_problem(std::string_view name);

enum class VectorFamily {
  kKSparseSigns,           // k distinct coordinates set to +-1
  kSparsePlusNoise,        // k spikes +-(1 + U[0,1)) plus gaussian noise of l1 mass 0.1 k
  kDenseGaussian,          // iid N(0, 1)
  kAdversarialFromColumns, // x_j = sign(<A_i, A_j>) for a random target column i
};

std::string_view to_string(VectorFamily family);
std::optional<VectorFamily> parse_vector_family(std::string_view name);

/// `columns` is required for the adversarial family and ignored otherwise.
DenseVector draw_vector(VectorFamily family, std::size_t n, std::size_t k, Rng& rng,
                        const DenseMatrix* columns = nullptr);

/// Per-trial generator: trial t always sees the same stream for a given seed,
/// whatever order trials run in.
Rng trial_rng(std::uint64_t seed, std::size_t trial);

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  std::size_t k = 0;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string error;  // solver or parameter failure, empty otherwise
};

struct ExperimentSummary {
  std::size_t trials = 0;
  std::size_t passed = 0;
  double pass_rate = 0.0;
  double max_ratio = 0.0;  // max observed / bound; infinite if a zero bound was exceeded
};

struct ExperimentReport {
  Problem problem = Problem::kPointQuery;
  VectorFamily family = VectorFamily::kDenseGaussian;
  std::vector<TrialRecord> records;  // ordered by trial index
  ExperimentSummary summary;
};

struct ExperimentConfig {
  Problem problem = Problem::kPointQuery;
  VectorFamily family = VectorFamily::kDenseGaussian;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  /// Sparsity for the sparse families. 0 uses the RIP order when a RIP
  /// matrix is involved and 3 otherwise.
  std::size_t k = 0;
  std::size_t threads = 1;
};

/// Absolute slack added to every bound check for `problem`.
double check_tolerance(Problem problem, const DenseVector& x);

/// `primary` is the incoherent matrix (point-query, point-query-tail,
/// inner-product), the RIP matrix (l1l1) or the norm estimator (norm).
/// `rip` is only used by point-query-tail. Throws ParameterError when the
/// files do not fit the problem.
ExperimentReport run_experiment(const ExperimentConfig& config, const MatrixFile& primary,
                                const MatrixFile* rip = nullptr);

ExperimentSummary summarize(const std::vector<TrialRecord>& records);

/// One JSON object per trial, then one {"summary": ...} line.
void write_jsonl(const ExperimentReport& report, std::ostream& out);
void write_summary_table(const ExperimentReport& report, std::ostream& out);

}  // namespace detsketch
