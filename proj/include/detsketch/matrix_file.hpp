#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "detsketch/linalg.hpp"

namespace detsketch {

enum class MatrixKind : std::uint8_t {
  kRandomSign = 0,
  kGvCode = 1,
  kReedSolomon = 2,
  kCrtCode = 3,
  kRip = 4,
  kNormEst = 5,
  kIdentity = 6,
};

std::string_view to_string(MatrixKind kind);
std::optional<MatrixKind> parse_matrix_kind(std::string_view name);

/// 48-byte little-endian header:
///   "DSKM1" | u8 kind | u8 verified | u8 has_k | u64 n | u64 m | f64 eps |
///   u64 k | u64 seed
/// followed by m * n f64 entries in row-major order.
struct MatrixFileHeader {
  MatrixKind kind = MatrixKind::kRandomSign;
  bool verified = false;
  std::optional<std::uint64_t> k;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMatrixHeaderBytes = 48;

struct MatrixFile {
  MatrixFileHeader header;
  DenseMatrix matrix;
};

void write_matrix_file(const MatrixFile& file, std::ostream& out);
void write_matrix_file(const MatrixFile& file, const std::filesystem::path& path);

/// Throws FormatError on a bad magic, unknown kind, or a payload whose length
/// does not match the header.
MatrixFile read_matrix_file(std::istream& in);
MatrixFile read_matrix_file(const std::filesystem::path& path);

}  // namespace detsketch
