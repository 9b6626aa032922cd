#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "detsketch/commands.hpp"
#include "detsketch/errors.hpp"
#include "detsketch/experiment.hpp"

using namespace detsketch;

namespace {

bool prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

// Smallest prime q with d(q) <= eps q, d(q) the least d with q^(d+1) >= n.
std::uint64_t rs_rows(std::uint64_t n, double eps) {
  for (std::uint64_t q = 2;; ++q) {
    if (!prime(q)) continue;
    std::uint64_t d = 0;
    long double power = q;
    while (power < static_cast<long double>(n)) {
      power *= q;
      ++d;
    }
    if (static_cast<double>(d) <= eps * static_cast<double>(q)) return q * q;
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

ExperimentReport run(Problem problem, VectorFamily family, const MatrixFile& primary,
                     std::size_t threads, const MatrixFile* rip = nullptr) {
  ExperimentConfig c;
  c.problem = problem;
  c.family = family;
  c.trials = 12;
  c.seed = 77;
  c.threads = threads;
  return run_experiment(c, primary, rip);
}

}  // namespace

TEST(Table, MatchesIndependentRules) {
  const auto rows = measurement_table({1024, 65536}, {0.25, 1.0 / 64});
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    const double ln = std::log(static_cast<double>(r.n));
    EXPECT_EQ(r.random_sign,
              static_cast<std::uint64_t>(std::ceil(6.0 * ln / (r.epsilon * r.epsilon))));
    EXPECT_EQ(r.gv, static_cast<std::uint64_t>(std::ceil(2.0 / r.epsilon)) *
                        static_cast<std::uint64_t>(std::ceil(8.0 * ln / r.epsilon)));
    EXPECT_EQ(r.reed_solomon, rs_rows(r.n, r.epsilon));
    EXPECT_TRUE(r.rs_beats_gv());
  }
  EXPECT_EQ(rows[0].reed_solomon, 121u);
  std::ostringstream out;
  cmd_table({1024}, {0.25}, out);
  EXPECT_NE(out.str().find("121"), std::string::npos);
  EXPECT_NE(out.str().find("yes"), std::string::npos);
}

TEST(Build, ReportsRowsAndFormula) {
  BuildOptions o;
  o.kind = MatrixKind::kRip;
  o.n = 64;
  o.k = 3;
  o.seed = 1;
  const BuildResult r = build_matrix(o);
  EXPECT_EQ(r.file.header.m, 74u);
  EXPECT_EQ(r.file.header.k, std::optional<std::uint64_t>(3));
  EXPECT_NEAR(r.formula, 3.0 * std::log(std::exp(1.0) * 64.0 / 3.0), 1e-12);
  o.k.reset();
  EXPECT_THROW(build_matrix(o), ParameterError);

  BuildOptions rs;
  rs.kind = MatrixKind::kReedSolomon;
  rs.n = 1024;
  rs.epsilon = 0.25;
  const BuildResult b = build_matrix(rs);
  EXPECT_EQ(b.file.header.m, 121u);
  EXPECT_TRUE(b.file.header.verified);
  EXPECT_TRUE(verify_matrix(b.file).pass);
}

TEST(Verify, CatchesTamperedMatrix) {
  BuildOptions o;
  o.kind = MatrixKind::kCrtCode;
  o.n = 200;
  o.epsilon = 0.4;
  MatrixFile f = build_matrix(o).file;
  ASSERT_TRUE(verify_matrix(f).pass);
  // Copy column 0 into column 1.
  for (std::size_t r = 0; r < f.matrix.rows(); ++r) f.matrix(r, 1) = f.matrix(r, 0);
  const VerifyResult v = verify_matrix(f);
  EXPECT_FALSE(v.pass);
  EXPECT_NE(v.detail.find("columns 0, 1"), std::string::npos) << v.detail;
}

TEST(Experiment, IdentityPointQueryIsExact) {
  BuildOptions o;
  o.kind = MatrixKind::kIdentity;
  o.n = 40;
  const MatrixFile f = build_matrix(o).file;
  const auto rep = run(Problem::kPointQuery, VectorFamily::kDenseGaussian, f, 1);
  for (const auto& r : rep.records) {
    EXPECT_EQ(r.observed, 0.0);
    EXPECT_TRUE(r.pass);
  }
  EXPECT_EQ(rep.summary.passed, 12u);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
  BuildOptions o;
  o.kind = MatrixKind::kReedSolomon;
  o.n = 300;
  o.epsilon = 0.3;
  const MatrixFile f = build_matrix(o).file;
  for (auto family : {VectorFamily::kKSparseSigns, VectorFamily::kSparsePlusNoise,
                      VectorFamily::kAdversarialFromColumns}) {
    std::ostringstream a;
    std::ostringstream b;
    write_jsonl(run(Problem::kInnerProduct, family, f, 1), a);
    write_jsonl(run(Problem::kInnerProduct, family, f, 3), b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str().find("\"summary\""), std::string::npos);
  }
}

TEST(Experiment, RejectsMismatchedFiles) {
  BuildOptions o;
  o.kind = MatrixKind::kRip;
  o.n = 32;
  o.k = 2;
  const MatrixFile rip = build_matrix(o).file;
  EXPECT_THROW(run(Problem::kPointQuery, VectorFamily::kDenseGaussian, rip, 1), ParameterError);
  EXPECT_THROW(run(Problem::kPointQueryTail, VectorFamily::kDenseGaussian, rip, 1),
               ParameterError);
}

TEST(Experiment, DrawVectorFamilies) {
  Rng rng(5);
  const DenseVector s = draw_vector(VectorFamily::kKSparseSigns, 50, 7, rng);
  std::size_t nz = 0;
  for (double v : s) {
    if (v != 0.0) {
      ++nz;
      EXPECT_EQ(std::abs(v), 1.0);
    }
  }
  EXPECT_EQ(nz, 7u);
  EXPECT_THROW(draw_vector(VectorFamily::kAdversarialFromColumns, 50, 7, rng), ParameterError);
  Rng a = trial_rng(9, 4);
  Rng b = trial_rng(9, 4);
  EXPECT_EQ(a.engine()(), b.engine()());
}

TEST(Commands, BuildRunWritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "detsketch_cmd_test";
  std::filesystem::create_directories(dir);
  BuildOptions o;
  o.kind = MatrixKind::kReedSolomon;
  o.n = 128;
  o.epsilon = 0.4;
  std::ostringstream log;
  ASSERT_EQ(cmd_build(o, dir / "a.dsk", log), 0);
  EXPECT_NE(log.str().find("m="), std::string::npos);
  ExperimentConfig c;
  c.trials = 5;
  ASSERT_EQ(cmd_run(c, dir / "a.dsk", std::nullopt, dir / "a.jsonl", log), 0);
  ASSERT_EQ(cmd_run(c, dir / "a.dsk", std::nullopt, dir / "b.jsonl", log), 0);
  EXPECT_EQ(slurp(dir / "a.jsonl"), slurp(dir / "b.jsonl"));
  std::ostringstream v;
  EXPECT_EQ(cmd_verify(dir / "a.dsk", v), 0);
  EXPECT_EQ(v.str().rfind("PASS", 0), 0u);
  std::filesystem::remove_all(dir);
}
