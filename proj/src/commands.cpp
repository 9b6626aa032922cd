#include "detsketch/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "detsketch/codes.hpp"
#include "detsketch/errors.hpp"
#include "detsketch/incoherent.hpp"
#include "detsketch/norm_estimation.hpp"
#include "detsketch/sparse_recovery.hpp"

namespace detsketch {
namespace {

MatrixFile from_incoherent(MatrixKind kind, const BuildOptions& o, IncoherentMatrix a) {
  MatrixFileHeader h;
  h.kind = kind;
  h.verified = a.verified;
  h.n = a.matrix.cols();
  h.m = a.matrix.rows();
  h.epsilon = a.epsilon;
  h.seed = o.seed;
  return {h, std::move(a.matrix)};
}

// Zero marks a parameter combination the construction rejects.
template <typename F>
std::uint64_t rows_or_zero(F&& f) {
  try {
    return f();
  } catch (const ParameterError&) {
    return 0;
  }
}

}  // namespace

BuildResult build_matrix(const BuildOptions& o) {
  if (o.n == 0) throw ParameterError("n must be >= 1");
  const double n = static_cast<double>(o.n);
  switch (o.kind) {
    case MatrixKind::kRandomSign: {
      RandomSignOptions opts;
      if (o.rows_constant) opts.rows_constant = *o.rows_constant;
      return {from_incoherent(o.kind, o, random_sign_matrix(o.n, o.epsilon, o.seed, opts)),
              measurement_formula(Construction::kRandomSign, n, o.epsilon)};
    }
    case MatrixKind::kGvCode:
      return {from_incoherent(o.kind, o, embed_code(gv_random_code(o.n, o.epsilon, o.seed))),
              measurement_formula(Construction::kGvRandom, n, o.epsilon)};
    case MatrixKind::kReedSolomon:
      return {from_incoherent(o.kind, o, embed_code(reed_solomon_code(o.n, o.epsilon))),
              measurement_formula(Construction::kReedSolomon, n, o.epsilon)};
    case MatrixKind::kCrtCode:
      return {from_incoherent(o.kind, o, embed_code(chinese_remainder_code(o.n, o.epsilon))),
              measurement_formula(Construction::kChineseRemainder, n, o.epsilon)};
    case MatrixKind::kIdentity:
      return {from_incoherent(o.kind, o, identity_incoherent(o.n)), n};
    case MatrixKind::kRip: {
      if (!o.k) throw ParameterError("rip needs --k");
      RipMatrix b = rip_matrix(o.n, *o.k, o.seed, o.rows_constant.value_or(kDefaultRipConstant));
      MatrixFileHeader h;
      h.kind = o.kind;
      h.verified = false;
      h.k = b.k;
      h.n = b.matrix.cols();
      h.m = b.matrix.rows();
      h.epsilon = o.epsilon;
      h.seed = o.seed;
      const double k = static_cast<double>(b.k);
      return {{h, std::move(b.matrix)}, k * std::log(std::exp(1.0) * n / k)};
    }
    case MatrixKind::kNormEst: {
      NormEstimatorOptions opts;
      if (o.rows_constant) opts.rows_constant = *o.rows_constant;
      NormEstimator est = build_estimator(o.n, o.epsilon, o.seed, opts);
      MatrixFileHeader h;
      h.kind = o.kind;
      h.verified = false;
      h.n = est.matrix().cols();
      h.m = est.matrix().rows();
      h.epsilon = o.epsilon;
      h.seed = o.seed;
      const double e2 = o.epsilon * o.epsilon;
      return {{h, est.matrix()}, (1.0 + std::log(e2 * n)) / e2};
    }
  }
  throw ParameterError("unknown matrix kind");
}

int cmd_build(const BuildOptions& options, const std::filesystem::path& out, std::ostream& log) {
  const BuildResult r = build_matrix(options);
  write_matrix_file(r.file, out);
  const auto& h = r.file.header;
  log << "kind=" << to_string(h.kind) << " n=" << h.n << " m=" << h.m
      << " epsilon=" << h.epsilon;
  if (h.k) log << " k=" << *h.k;
  log << " formula=" << std::setprecision(6) << r.formula
      << " verified=" << (h.verified ? "true" : "false") << " out=" << out.string() << '\n';
  return 0;
}

int cmd_run(const ExperimentConfig& config, const std::filesystem::path& matrix,
            const std::optional<std::filesystem::path>& rip,
            const std::optional<std::filesystem::path>& out, std::ostream& log) {
  const MatrixFile primary = read_matrix_file(matrix);
  std::optional<MatrixFile> second;
  if (rip) second = read_matrix_file(*rip);
  const ExperimentReport report =
      run_experiment(config, primary, second ? &*second : nullptr);
  if (out) {
    std::ofstream f(*out, std::ios::trunc);
    if (!f) throw FormatError("cannot open " + out->string() + " for writing");
    write_jsonl(report, f);
  } else {
    write_jsonl(report, log);
  }
  write_summary_table(report, log);
  return report.summary.passed == report.summary.trials ? 0 : 1;
}

std::vector<TableRow> measurement_table(const std::vector<std::uint64_t>& ns,
                                        const std::vector<double>& epsilons) {
  std::vector<TableRow> rows;
  for (std::uint64_t n : ns) {
    for (double eps : epsilons) {
      TableRow r;
      r.n = n;
      r.epsilon = eps;
      r.random_sign = rows_or_zero([&] { return random_sign_rows(n, eps); });
      r.gv = rows_or_zero([&] {
        const auto p = gv_random_params(n, eps);
        return p.q * p.t;
      });
      r.reed_solomon = rows_or_zero([&] {
        const auto p = reed_solomon_params(n, eps);
        return p.q * p.q;
      });
      r.crt = rows_or_zero([&] {
        const auto p = chinese_remainder_params(n, eps);
        return p.primes.back() * p.primes.size();
      });
      rows.push_back(r);
    }
  }
  return rows;
}

int cmd_table(const std::vector<std::uint64_t>& ns, const std::vector<double>& epsilons,
              std::ostream& out) {
  const auto cell = [](std::uint64_t m) { return m == 0 ? std::string("-") : std::to_string(m); };
  out << std::right << std::setw(9) << "n" << std::setw(12) << "epsilon" << std::setw(14)
      << "random-sign" << std::setw(14) << "gv-code" << std::setw(14) << "reed-solomon"
      << std::setw(14) << "crt-code" << std::setw(8) << "rs<=gv" << '\n';
  for (const auto& r : measurement_table(ns, epsilons)) {
    std::ostringstream eps;
    eps << std::setprecision(6) << r.epsilon;
    out << std::setw(9) << r.n << std::setw(12) << eps.str() << std::setw(14)
        << cell(r.random_sign) << std::setw(14) << cell(r.gv) << std::setw(14)
        << cell(r.reed_solomon) << std::setw(14) << cell(r.crt) << std::setw(8)
        << (r.reed_solomon != 0 && r.gv != 0 && r.rs_beats_gv() ? "yes" : "no") << '\n';
  }
  return 0;
}

VerifyResult verify_matrix(const MatrixFile& file) {
  const auto& h = file.header;
  std::ostringstream detail;
  detail << "kind=" << to_string(h.kind) << " n=" << h.n << " m=" << h.m << ' ';
  switch (h.kind) {
    case MatrixKind::kRip: {
      const double v = 1.0 / std::sqrt(static_cast<double>(h.m));
      bool ok = h.k.has_value();
      for (double e : file.matrix.entries()) ok = ok && std::abs(std::abs(e) - v) <= 1e-15;
      detail << "entries " << (ok ? "are" : "are not") << " +-1/sqrt(m); RIP not certified";
      return {ok, detail.str()};
    }
    case MatrixKind::kNormEst:
      try {
        NormEstimator est(file.matrix, 1.0, 2.0, h.epsilon);
        detail << "rows orthonormal; kernel dimension " << est.kernel_dim();
        return {true, detail.str()};
      } catch (const std::invalid_argument& e) {
        detail << e.what();
        return {false, detail.str()};
      }
    default: {
      const CoherenceReport rep = verify_coherence(file.matrix, h.epsilon);
      detail << "max_coherence=" << std::setprecision(10) << rep.max_coherence << " (columns "
             << rep.witness_i << ", " << rep.witness_j << ") epsilon=" << h.epsilon
             << " max_norm_deviation=" << rep.max_norm_deviation;
      return {rep.pass, detail.str()};
    }
  }
}

int cmd_verify(const std::filesystem::path& matrix, std::ostream& out) {
  const VerifyResult r = verify_matrix(read_matrix_file(matrix));
  out << (r.pass ? "PASS " : "FAIL ") << r.detail << '\n';
  return r.pass ? 0 : 1;
}

}  // namespace detsketch
