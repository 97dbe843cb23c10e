#include "singcubic/experiment.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "singcubic/baselines.hpp"
#include "singcubic/logistic.hpp"
#include "singcubic/synthetic.hpp"
#include "singcubic/trace.hpp"

namespace singcubic {

LabelMapping parse_label_spec(const std::string& spec) {
  LabelMapping mapping;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string pair = spec.substr(pos, comma - pos);
    const std::size_t colon = pair.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("label mapping entry '" + pair +
                                  "' is not of the form from:to");
    }
    try {
      const double from = std::stod(pair.substr(0, colon));
      const double to = std::stod(pair.substr(colon + 1));
      if (to != 0.0 && to != 1.0) {
        throw std::invalid_argument("label mapping target must be 0 or 1");
      }
      mapping[from] = to;
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("label mapping entry '" + pair +
                                  "' is not numeric");
    }
    pos = comma + 1;
  }
  if (mapping.empty()) throw std::invalid_argument("empty label mapping");
  return mapping;
}

namespace {

std::unique_ptr<FiniteSumObjective> build_problem(const ExperimentConfig& cfg) {
  if (cfg.problem == ProblemKind::kQuadratic) {
    return std::make_unique<QuadraticFiniteSum>(
        synth_quadratic(cfg.synth_n, cfg.synth_p, cfg.seed));
  }
  if (cfg.dataset_path.empty()) {
    throw std::invalid_argument("a dataset path is required for logistic runs");
  }
  if (cfg.format != "libsvm") {
    throw std::invalid_argument("unsupported dataset format: " + cfg.format);
  }
  auto ds = std::make_shared<Dataset>(
      load_libsvm_file(cfg.dataset_path, cfg.p_override));
  normalize_labels(*ds, cfg.labels ? *cfg.labels : infer_label_mapping(*ds));
  if (cfg.scale_features) scale_features_maxabs(*ds);
  const Regularizer kind = cfg.problem == ProblemKind::kConvex
                               ? Regularizer::kL2
                               : Regularizer::kRational;
  return std::make_unique<LogisticProblem>(std::move(ds), kind, cfg.alpha,
                                           cfg.beta);
}

Vector dispatch(const ExperimentConfig& cfg, const FiniteSumObjective& obj,
                const Vector& x0, IterationTrace& trace) {
  if (cfg.algo == "singcubic") {
    OptimizerConfig oc;
    oc.sigma0 = cfg.sigma0;
    oc.eps_g = cfg.eps_g;
    oc.batch_frac = cfg.batch_frac;
    oc.max_epochs = cfg.epochs;
    oc.max_iterations = cfg.max_iterations;
    oc.sampling = cfg.sampling;
    oc.seed = cfg.seed;
    oc.subproblem_eps_tol = cfg.subproblem_eps_tol;
    return singcubic_run(obj, x0, oc, trace);
  }
  BaselineConfig bc;
  bc.batch_frac = cfg.batch_frac;
  bc.max_epochs = cfg.epochs;
  bc.max_iterations = cfg.max_iterations;
  bc.seed = cfg.seed;
  bc.eps_g = cfg.eps_g;
  bc.sigma0 = cfg.sigma0;
  bc.delta0 = cfg.delta0;
  bc.sg_frac = cfg.sg_frac;
  bc.sh_frac = cfg.sh_frac;
  bc.grow_samples = cfg.grow_samples;
  bc.subproblem_eps_tol = cfg.subproblem_eps_tol;
  if (cfg.algo == "sgd") {
    bc.learning_rate = cfg.learning_rate > 0 ? cfg.learning_rate : 0.1;
    return sgd_run(obj, x0, bc, trace);
  }
  if (cfg.algo == "saga") {
    bc.learning_rate = cfg.learning_rate > 0 ? cfg.learning_rate : 0.01;
    return saga_run(obj, x0, bc, trace);
  }
  if (cfg.algo == "scr") return scr_run(obj, x0, bc, trace);
  if (cfg.algo == "tr") return tr_run(obj, x0, bc, trace);
  throw std::invalid_argument("unknown algorithm tag: " + cfg.algo);
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 IterationTrace* trace_out) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::unique_ptr<FiniteSumObjective> obj = build_problem(cfg);
  const Vector x0 = Vector::Zero(obj->dimension());

  IterationTrace trace;
  Vector x;
  try {
    x = dispatch(cfg, *obj, x0, trace);
  } catch (...) {
    // Flush whatever was traced before the failure.
    if (!cfg.out_path.empty()) write_csv_file(trace, cfg.out_path, cfg.timing);
    if (trace_out) *trace_out = std::move(trace);
    throw;
  }
  if (!cfg.out_path.empty()) write_csv_file(trace, cfg.out_path, cfg.timing);

  ExperimentSummary summary;
  Vector grad(obj->dimension());
  Matrix hess(obj->dimension(), obj->dimension());
  summary.final_objective = obj->full_value_gradient_hessian(x, grad, hess);
  summary.final_grad_norm = grad.norm();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hess);
  summary.min_hessian_eigenvalue = eig.eigenvalues()[0];
  summary.effective_epochs = trace.effective_epochs();
  summary.iterations = static_cast<long long>(trace.records.size());
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (trace_out) *trace_out = std::move(trace);
  return summary;
}

}  // namespace singcubic
