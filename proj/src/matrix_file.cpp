#include "detsketch/matrix_file.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "detsketch/errors.hpp"

namespace detsketch {
namespace {

constexpr std::string_view kMagic = "DSKM1";

struct KindName {
  MatrixKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 7> kKindNames{{
    {MatrixKind::kRandomSign, "random-sign"},
    {MatrixKind::kGvCode, "gv-code"},
    {MatrixKind::kReedSolomon, "reed-solomon"},
    {MatrixKind::kCrtCode, "crt-code"},
    {MatrixKind::kRip, "rip"},
    {MatrixKind::kNormEst, "norm-est"},
    {MatrixKind::kIdentity, "identity"},
}};

void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) buf.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

}  // namespace

std::string_view to_string(MatrixKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

std::optional<MatrixKind> parse_matrix_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

void write_matrix_file(const MatrixFile& file, std::ostream& out) {
  const auto& h = file.header;
  if (h.n != file.matrix.cols() || h.m != file.matrix.rows()) {
    throw DimensionError("matrix file: header shape " + std::to_string(h.m) + "x" +
                         std::to_string(h.n) + " does not match matrix " +
                         std::to_string(file.matrix.rows()) + "x" +
                         std::to_string(file.matrix.cols()));
  }
  std::vector<unsigned char> buf;
  buf.reserve(kMatrixHeaderBytes + file.matrix.entries().size() * 8);
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  buf.push_back(static_cast<unsigned char>(h.kind));
  buf.push_back(h.verified ? 1 : 0);
  buf.push_back(h.k ? 1 : 0);
  put_u64(buf, h.n);
  put_u64(buf, h.m);
  put_u64(buf, std::bit_cast<std::uint64_t>(h.epsilon));
  put_u64(buf, h.k.value_or(0));
  put_u64(buf, h.seed);
  for (double v : file.matrix.entries()) put_u64(buf, std::bit_cast<std::uint64_t>(v));
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FormatError("matrix file: write failed");
}

void write_matrix_file(const MatrixFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("matrix file: cannot open " + path.string() + " for writing");
  write_matrix_file(file, out);
}

MatrixFile read_matrix_file(std::istream& in) {
  std::array<unsigned char, kMatrixHeaderBytes> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  if (in.gcount() != static_cast<std::streamsize>(head.size())) {
    throw FormatError("matrix file: truncated header");
  }
  if (std::string_view(reinterpret_cast<const char*>(head.data()), kMagic.size()) != kMagic) {
    throw FormatError("matrix file: bad magic");
  }
  MatrixFileHeader h;
  if (head[5] > static_cast<unsigned char>(MatrixKind::kIdentity)) {
    throw FormatError("matrix file: unknown kind " + std::to_string(head[5]));
  }
  if (head[6] > 1 || head[7] > 1) throw FormatError("matrix file: bad flag byte");
  h.kind = static_cast<MatrixKind>(head[5]);
  h.verified = head[6] == 1;
  h.n = get_u64(&head[8]);
  h.m = get_u64(&head[16]);
  h.epsilon = std::bit_cast<double>(get_u64(&head[24]));
  if (head[7] == 1) h.k = get_u64(&head[32]);
  h.seed = get_u64(&head[40]);
  if (h.n == 0 || h.m == 0) throw FormatError("matrix file: empty shape");
  if (!std::isfinite(h.epsilon)) throw FormatError("matrix file: epsilon not finite");
  if (h.m > (std::uint64_t{1} << 40) / h.n) throw FormatError("matrix file: shape too large");

  const std::size_t count = h.m * h.n;
  std::vector<unsigned char> payload(count * 8);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size())) {
    throw FormatError("matrix file: payload shorter than " + std::to_string(h.m) + "x" +
                      std::to_string(h.n) + " entries");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("matrix file: trailing bytes after payload");
  }
  std::vector<double> entries(count);
  for (std::size_t i = 0; i < count; ++i) {
    entries[i] = std::bit_cast<double>(get_u64(&payload[i * 8]));
  }
  try {
    return {h, DenseMatrix(h.m, h.n, std::move(entries))};
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("matrix file: ") + e.what());
  }
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("matrix file: cannot open " + path.string());
  return read_matrix_file(in);
}

}  // namespace detsketch
