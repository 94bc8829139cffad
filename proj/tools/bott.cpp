#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bott/cli.hpp"

int main(int argc, char** argv) {
  bott::Config config = bott::default_config();
  CLI::App app{"Classification of real Bott manifolds by Bott equivalence"};
  app.require_subcommand(1);
  app.add_flag("--json", config.json, "Print JSON instead of key=value lines");
  app.add_option("--threads", config.threads, "Worker threads (0 = auto)");
  app.add_option("--max-n", config.max_n, "Largest n accepted by classify");
  app.add_option("--memory-budget", config.orbit_memory_budget, "Orbit search budget in bytes");
  app.add_option("--gl-ceiling", config.gl_ceiling, "Largest m for GL(m,2) enumeration");
  app.add_option("--cache-dir", config.cache_dir, "Class table cache (default: $BOTT_CACHE_DIR)");
  app.add_option("--seed", config.seed, "Seed for sampled checks");

  int n = 3;
  std::string out_path;
  auto* classify = app.add_subcommand("classify", "Enumerate the Bott equivalence classes of B(n)");
  classify->add_option("--n", n, "Matrix size")->required();
  classify->add_option("-o,--out", out_path, "Write the class table here");

  std::string file_a;
  std::string file_b;
  auto* iso = app.add_subcommand("iso", "Decide Bott equivalence of two matrices");
  iso->add_option("a", file_a, "First matrix (BMAT or compact, - for stdin)")->required();
  iso->add_option("b", file_b, "Second matrix")->required();

  auto* decompose = app.add_subcommand("decompose", "Factor into S^1 circles and indecomposables");
  decompose->add_option("file", file_a, "Matrix file")->required();
  auto* invariants = app.add_subcommand("invariants", "Cohomology ring invariants");
  invariants->add_option("file", file_a, "Matrix file")->required();
  auto* canon = app.add_subcommand("canon", "Canonical representative of the class");
  canon->add_option("file", file_a, "Matrix file")->required();

  bott::VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", vargs.suite, "affine | unique-decomposition | cancellation | theorem-1")->required();
  verify->add_option("--n", vargs.n, "Matrix size")->required();
  verify->add_option("--samples", vargs.samples, "Sample points per affine check");
  verify->add_option("--instances", vargs.instances, "Random affine instances (default: exhaustive for n <= 4)");
  verify->add_option("--pairs", vargs.pairs, "Random theorem-1 pairs (default: all for n <= 3, else 500)");

  auto* verify_affine = app.add_subcommand("verify-affine", "Same as: verify affine");
  verify_affine->add_option("--n", vargs.n, "Matrix size")->required();
  verify_affine->add_option("--samples", vargs.samples, "Sample points per check");
  verify_affine->add_option("--instances", vargs.instances, "Random instances");

  auto* count_delta = app.add_subcommand("count-delta", "Count reduced forms of Delta(n)");
  count_delta->add_option("--n", n, "Matrix size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bott::kExitParse;
  }

  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;
  if (*classify) return bott::cmd_classify(config, n, out_path, out, err);
  if (*iso) return bott::cmd_iso(config, file_a, file_b, out, err);
  if (*decompose) return bott::cmd_decompose(config, file_a, out, err);
  if (*invariants) return bott::cmd_invariants(config, file_a, out, err);
  if (*canon) return bott::cmd_canon(config, file_a, out, err);
  if (*verify) return bott::cmd_verify(config, vargs, out, err);
  if (*verify_affine) {
    vargs.suite = "affine";
    return bott::cmd_verify(config, vargs, out, err);
  }
  if (*count_delta) return bott::cmd_count_delta(config, n, out, err);
  return bott::kExitParse;
}
