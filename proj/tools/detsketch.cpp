// detsketch build|run|table|verify

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "detsketch/commands.hpp"

namespace ds = detsketch;

namespace {

template <typename E>
std::vector<std::string> names(std::initializer_list<E> values) {
  std::vector<std::string> out;
  for (E v : values) out.emplace_back(ds::to_string(v));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic linear sketches: build matrices, run recovery experiments."};
  app.require_subcommand(1);

  ds::BuildOptions build;
  std::size_t build_k = 0;
  double rows_constant = 0.0;
  std::string build_out;
  auto* build_cmd = app.add_subcommand("build", "Construct a measurement matrix file");
  std::string kind_name;
  build_cmd->add_option("--kind", kind_name, "Matrix kind")
      ->required()
      ->check(CLI::IsMember(names({ds::MatrixKind::kRandomSign, ds::MatrixKind::kGvCode,
                   ds::MatrixKind::kReedSolomon, ds::MatrixKind::kCrtCode, ds::MatrixKind::kRip,
                   ds::MatrixKind::kNormEst, ds::MatrixKind::kIdentity})));
  build_cmd->add_option("--n", build.n, "Number of columns")->required();
  build_cmd->add_option("--epsilon", build.epsilon, "Accuracy parameter");
  auto* k_opt = build_cmd->add_option("--k", build_k, "Sparsity order (rip)");
  build_cmd->add_option("--seed", build.seed, "Random seed")->default_val(0);
  auto* rc_opt = build_cmd->add_option("--rows-constant", rows_constant,
                                       "Constant in the row-count formula");
  build_cmd->add_option("--out", build_out, "Output matrix file")->required();

  ds::ExperimentConfig run;
  std::string run_matrix;
  std::string run_rip;
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "Run trials and check each bound");
  std::string problem_name;
  run_cmd->add_option("--problem", problem_name, "Problem")
      ->required()
      ->check(CLI::IsMember(names({ds::Problem::kPointQuery, ds::Problem::kPointQueryTail,
                   ds::Problem::kInnerProduct, ds::Problem::kL1L1, ds::Problem::kNorm})));
  run_cmd->add_option("--matrix", run_matrix, "Matrix file")->required()->check(CLI::ExistingFile);
  auto* rip_opt =
      run_cmd->add_option("--rip", run_rip, "RIP matrix file (point-query-tail)")
          ->check(CLI::ExistingFile);
  run_cmd->add_option("--trials", run.trials, "Number of trials")->default_val(100);
  std::string family_name = "dense-gaussian";
  run_cmd->add_option("--family", family_name, "Vector family")
      ->check(CLI::IsMember(names({ds::VectorFamily::kKSparseSigns, ds::VectorFamily::kSparsePlusNoise,
                   ds::VectorFamily::kDenseGaussian,
                   ds::VectorFamily::kAdversarialFromColumns})));
  run_cmd->add_option("--seed", run.seed, "Random seed")->default_val(0);
  run_cmd->add_option("--k", run.k, "Sparsity of the sparse families");
  run_cmd->add_option("--threads", run.threads, "Worker threads")->default_val(1);
  auto* run_out_opt = run_cmd->add_option("--out", run_out, "JSONL report file");

  std::vector<std::uint64_t> table_n = ds::kDefaultTableN;
  std::vector<double> table_eps = ds::kDefaultTableEpsilon;
  auto* table_cmd = app.add_subcommand("table", "Measurement counts per construction");
  table_cmd->add_option("--n", table_n, "Column counts");
  table_cmd->add_option("--epsilon", table_eps, "Accuracy parameters");

  std::string verify_matrix;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a matrix file");
  verify_cmd->add_option("--matrix", verify_matrix, "Matrix file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build_cmd) {
      build.kind = *ds::parse_matrix_kind(kind_name);
      if (*k_opt) build.k = build_k;
      if (*rc_opt) build.rows_constant = rows_constant;
      return ds::cmd_build(build, build_out, std::cout);
    }
    if (*run_cmd) {
      run.problem = *ds::parse_problem(problem_name);
      run.family = *ds::parse_vector_family(family_name);
      std::optional<std::filesystem::path> rip;
      std::optional<std::filesystem::path> out;
      if (*rip_opt) rip = run_rip;
      if (*run_out_opt) out = run_out;
      return ds::cmd_run(run, run_matrix, rip, out, std::cout);
    }
    if (*table_cmd) return ds::cmd_table(table_n, table_eps, std::cout);
    if (*verify_cmd) return ds::cmd_verify(verify_matrix, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
