#pragma once

#include <functional>
#include <optional>

#include "singcubic/model_store.hpp"
#include "singcubic/trace.hpp"

namespace singcubic {

enum class Sampling { kCyclic, kRandom };

struct OptimizerConfig {
  double eta1 = 0.1;   // acceptance threshold
  double eta2 = 0.9;   // very-successful threshold
  double gamma1 = 2.0; // penalty increase multiplier
  double gamma2 = 2.0; // penalty decrease multiplier
  double sigma0 = 1.0;
  double sigma_floor = 1e-16;
  double eps_g = 1e-6;       // gradient-norm stopping threshold
  double batch_frac = 0.001; // component batch fraction of n
  double max_epochs = 10.0;  // effective-epoch budget (charged work)
  long long max_iterations = 0;  // 0 = uncapped
  Sampling sampling = Sampling::kCyclic;
  std::uint64_t seed = 0;
  double subproblem_eps_tol = 0.1;
  int subproblem_max_iters = 100;
};

void validate(const OptimizerConfig& cfg);

// rho = (F(x) - F(x + d)) / (F(x) - m(d)). Returns nullopt (a rejection
// sentinel, handled as rho < eta1) when the predicted decrease
// F(x) - m(d) <= 1e-14 * max(1, |F(x)|).
std::optional<double> compute_rho(double f_old, double f_new,
                                  double m_at_step);

// sigma' = max(sigma/gamma2, sigma_floor) when rho >= eta2,
//          gamma1 * sigma               when rho <  eta1,
//          sigma                        otherwise.
// Rejected/undefined ratios are passed as -inf by callers.
double update_sigma(double rho, double sigma, const OptimizerConfig& cfg);
double update_sigma(const std::optional<double>& rho, double sigma,
                    const OptimizerConfig& cfg);

// Called after every outer iteration with the post-iteration state.
using StoreObserver =
    std::function<void(long long iter, const Vector& x, const ModelStore&)>;

// The incremental cubic-regularized Newton loop: solve the aggregate model's
// cubic subproblem (warm-starting the multiplier), accept by rho, adapt
// sigma, then refresh the next component at the new iterate (cyclic order by
// default, uniform in RANDOM mode). Stops when the full gradient norm falls
// to eps_g -- tested every n_batches iterations -- or the epoch budget or
// iteration cap is reached. Appends one TraceRecord per iteration.
Vector singcubic_run(const FiniteSumObjective& obj, const Vector& x0,
                     const OptimizerConfig& cfg, IterationTrace& trace,
                     const StoreObserver& observer = {});

}  // namespace singcubic
