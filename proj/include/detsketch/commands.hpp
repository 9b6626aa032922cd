#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "detsketch/experiment.hpp"
#include "detsketch/matrix_file.hpp"

namespace detsketch {

struct BuildOptions {
  MatrixKind kind = MatrixKind::kReedSolomon;
  std::size_t n = 0;
  double epsilon = 0.0;  // ignored by rip and identity
  std::optional<std::size_t> k;  // rip only
  std::uint64_t seed = 0;
  std::optional<double> rows_constant;  // random-sign, rip, norm-est
};

struct BuildResult {
  MatrixFile file;
  double formula = 0.0;  // asymptotic m with unit constants
};

/// Throws ParameterError naming the violated constraint.
BuildResult build_matrix(const BuildOptions& options);

/// Writes the file and prints one summary line. Returns the exit code.
int cmd_build(const BuildOptions& options, const std::filesystem::path& out, std::ostream& log);

/// Writes JSONL to `out` (or `log` when absent) and the summary table to
/// `log`. Returns 1 if any trial failed its bound.
int cmd_run(const ExperimentConfig& config, const std::filesystem::path& matrix,
            const std::optional<std::filesystem::path>& rip,
            const std::optional<std::filesystem::path>& out, std::ostream& log);

struct TableRow {
  std::uint64_t n = 0;
  double epsilon = 0.0;
  std::uint64_t random_sign = 0;
  std::uint64_t gv = 0;
  std::uint64_t reed_solomon = 0;
  std::uint64_t crt = 0;
  bool rs_beats_gv() const { return reed_solomon <= gv; }
};

/// Realized m per construction from the parameter rules alone; nothing is
/// materialized, so large n is cheap.
std::vector<TableRow> measurement_table(const std::vector<std::uint64_t>& ns,
                                        const std::vector<double>& epsilons);

inline const std::vector<std::uint64_t> kDefaultTableN{1u << 10, 1u << 12, 1u << 16, 1u << 20};
inline const std::vector<double> kDefaultTableEpsilon{1.0 / 4, 1.0 / 16, 1.0 / 64, 1.0 / 256};

int cmd_table(const std::vector<std::uint64_t>& ns, const std::vector<double>& epsilons,
              std::ostream& out);

struct VerifyResult {
  bool pass = false;
  std::string detail;
};

/// Incoherent kinds: exhaustive coherence check. norm-est: orthonormal rows.
/// rip: entry pattern only, RIP itself is not certifiable.
VerifyResult verify_matrix(const MatrixFile& file);

int cmd_verify(const std::filesystem::path& matrix, std::ostream& out);

}  // namespace detsketch
