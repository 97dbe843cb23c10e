#pragma once

#include <optional>
#include <string>

#include "singcubic/dataset.hpp"
#include "singcubic/optimizer.hpp"

namespace singcubic {

enum class ProblemKind { kConvex, kNonconvex, kQuadratic };

// One benchmark run: problem + algorithm + budget, CSV trace out.
struct ExperimentConfig {
  std::string dataset_path;  // unused for the quadratic problem
  std::string format = "libsvm";
  std::optional<LabelMapping> labels;  // inferred from the data when absent
  ProblemKind problem = ProblemKind::kConvex;
  double alpha = 1e-3;
  double beta = 1.0;
  bool scale_features = false;
  int p_override = 0;
  int synth_n = 50;  // quadratic problem shape
  int synth_p = 10;

  std::string algo = "singcubic";  // singcubic|scr|tr|sgd|saga
  double epochs = 10.0;
  double batch_frac = 0.001;
  double sigma0 = 0.01;
  double delta0 = 1.0;
  double learning_rate = 0.0;  // 0 = algorithm default (sgd 0.1, saga 0.01)
  double eps_g = 1e-6;
  double sg_frac = 0.05;
  double sh_frac = 0.05;
  bool grow_samples = false;
  Sampling sampling = Sampling::kCyclic;
  double subproblem_eps_tol = 0.1;
  long long max_iterations = 0;
  std::uint64_t seed = 0;

  std::string out_path;  // empty = do not write a trace file
  bool timing = false;   // include measured wall times in the CSV
};

struct ExperimentSummary {
  double final_objective = 0.0;
  double final_grad_norm = 0.0;
  double min_hessian_eigenvalue = 0.0;
  double effective_epochs = 0.0;
  long long iterations = 0;
  double wall_seconds = 0.0;
};

// "a:b,c:d" -> {a->b, c->d}; targets must be 0 or 1.
LabelMapping parse_label_spec(const std::string& spec);

// Builds the problem, runs the algorithm, writes the CSV trace (also on
// divergence, flushing the partial trace before rethrowing) and returns the
// summary. Unknown algorithm tags and malformed configs throw
// std::invalid_argument.
ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 IterationTrace* trace_out = nullptr);

}  // namespace singcubic
