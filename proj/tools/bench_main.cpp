// Benchmark harness: runs one optimizer on one problem and writes a CSV
// trace, or aligns existing traces with the `compare` subcommand.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singcubic/experiment.hpp"
#include "singcubic/trace.hpp"

namespace {

void print_summary(const singcubic::ExperimentSummary& s,
                   const singcubic::ExperimentConfig& cfg) {
  std::printf("algorithm:               %s\n", cfg.algo.c_str());
  std::printf("final objective:         %.17g\n", s.final_objective);
  std::printf("final grad norm:         %.17g\n", s.final_grad_norm);
  std::printf("min hessian eigenvalue:  %.17g\n", s.min_hessian_eigenvalue);
  std::printf("effective epochs:        %.17g\n", s.effective_epochs);
  std::printf("iterations:              %lld\n", s.iterations);
  std::printf("wall time (s):           %.3f\n", s.wall_seconds);
  if (!cfg.out_path.empty()) {
    std::printf("trace:                   %s\n", cfg.out_path.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-sum optimizer benchmark"};
  app.set_config("--config")->description("key=value config file");

  singcubic::ExperimentConfig cfg;
  std::string problem = "convex";
  std::string labels_spec;
  std::string sampling = "cyclic";

  app.add_option("--dataset", cfg.dataset_path, "LIBSVM dataset path (.gz ok)");
  app.add_option("--format", cfg.format, "dataset format")->default_str("libsvm");
  app.add_option("--labels", labels_spec,
                 "label mapping, e.g. \"-1:0,1:1\" (default: inferred)");
  app.add_option("--problem", problem, "convex|nonconvex|quadratic")
      ->check(CLI::IsMember({"convex", "nonconvex", "quadratic"}));
  app.add_option("--alpha", cfg.alpha, "regularization weight");
  app.add_option("--beta", cfg.beta, "rational penalty shape");
  app.add_option("--algo", cfg.algo, "singcubic|scr|tr|sgd|saga");
  app.add_option("--epochs", cfg.epochs, "effective-epoch budget");
  app.add_option("--batch-frac", cfg.batch_frac, "component batch fraction");
  app.add_option("--sigma0", cfg.sigma0, "initial cubic penalty");
  app.add_option("--delta0", cfg.delta0, "initial trust radius (tr)");
  app.add_option("--lr", cfg.learning_rate,
                 "learning rate (default: sgd 0.1, saga 0.01)");
  app.add_option("--eps-g", cfg.eps_g, "gradient-norm stopping threshold");
  app.add_option("--sg-frac", cfg.sg_frac, "scr gradient sample fraction");
  app.add_option("--sh-frac", cfg.sh_frac, "scr hessian sample fraction");
  app.add_flag("--grow-samples", cfg.grow_samples,
               "scr: grow samples x1.5 per iteration");
  app.add_option("--sampling", sampling, "component refresh order")
      ->check(CLI::IsMember({"cyclic", "random"}));
  app.add_option("--eps-tol", cfg.subproblem_eps_tol,
                 "secular tolerance of the cubic subproblem");
  app.add_option("--max-iterations", cfg.max_iterations,
                 "outer iteration cap (0 = none)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out_path, "trace CSV output path");
  app.add_flag("--scale-features", cfg.scale_features,
               "per-column max-abs feature scaling");
  app.add_flag("--timing", cfg.timing,
               "write measured wall times into the CSV (not reproducible)");
  app.add_option("--p", cfg.p_override, "feature dimension override");
  app.add_option("--synth-n", cfg.synth_n, "quadratic problem components");
  app.add_option("--synth-p", cfg.synth_p, "quadratic problem dimension");

  auto* compare = app.add_subcommand("compare", "align trace CSVs by epoch");
  std::vector<std::string> compare_paths;
  int checkpoints = 21;
  compare->add_option("files", compare_paths, "trace CSV files")
      ->required()
      ->expected(2, -1);
  compare->add_option("--checkpoints", checkpoints, "grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (*compare) {
      std::cout << singcubic::compare_runs(compare_paths, checkpoints);
      return 0;
    }
    cfg.problem = problem == "convex" ? singcubic::ProblemKind::kConvex
                  : problem == "nonconvex"
                      ? singcubic::ProblemKind::kNonconvex
                      : singcubic::ProblemKind::kQuadratic;
    cfg.sampling = sampling == "random" ? singcubic::Sampling::kRandom
                                        : singcubic::Sampling::kCyclic;
    if (!labels_spec.empty()) {
      cfg.labels = singcubic::parse_label_spec(labels_spec);
    }
    const singcubic::ExperimentSummary summary = singcubic::run_experiment(cfg);
    print_summary(summary, cfg);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
