#pragma once

#include <functional>

#include "singcubic/objective.hpp"
#include "singcubic/trace.hpp"

namespace singcubic {

struct BaselineConfig {
  double learning_rate = 0.1;  // sgd 0.1, saga 0.01
  double batch_frac = 0.001;
  double max_epochs = 10.0;
  long long max_iterations = 0;  // 0 = uncapped
  std::uint64_t seed = 0;
  double eps_g = 1e-6;

  // scr / tr acceptance and adaptation
  double eta1 = 0.1;
  double eta2 = 0.9;
  double gamma1 = 2.0;
  double gamma2 = 2.0;
  double sigma0 = 0.01;
  double sigma_floor = 1e-16;
  double delta0 = 1.0;  // tr initial radius

  // scr sample-size policy: constant fractions by default, optional
  // geometric growth (x1.5 per iteration, capped at n)
  double sg_frac = 0.05;
  double sh_frac = 0.05;
  bool grow_samples = false;

  double subproblem_eps_tol = 0.1;
  int subproblem_max_iters = 100;
};

void validate(const BaselineConfig& cfg);

using IterateObserver = std::function<void(long long iter, const Vector& x)>;

// x_{k+1} = x_k - lr * grad of a uniformly resampled batch (with
// replacement), batch size max(1, ceil(batch_frac * n)), constant step.
Vector sgd_run(const FiniteSumObjective& obj, const Vector& x0,
               const BaselineConfig& cfg, IterationTrace& trace,
               const IterateObserver& observer = {});

// Gradient-table method over contiguous component batches:
//   x <- x - lr * (grad_j(x) - table_j + mean(table)); table_j <- grad_j(x).
// The table is initialized with the batch gradients at x0.
Vector saga_run(const FiniteSumObjective& obj, const Vector& x0,
                const BaselineConfig& cfg, IterationTrace& trace,
                const IterateObserver& observer = {});

// Sub-sampled cubic regularization: per-iteration uniform subsamples for the
// gradient and Hessian feed the cubic subproblem; acceptance and sigma follow
// the same rho rules as the incremental loop. With full samples this is the
// exact adaptive cubic-regularized Newton method.
Vector scr_run(const FiniteSumObjective& obj, const Vector& x0,
               const BaselineConfig& cfg, IterationTrace& trace,
               const IterateObserver& observer = {});

// Classical trust-region Newton on the full gradient/Hessian; radius doubles
// when rho >= eta2 and halves when rho < eta1. The trace's sigma column
// carries the radius.
Vector tr_run(const FiniteSumObjective& obj, const Vector& x0,
              const BaselineConfig& cfg, IterationTrace& trace,
              const IterateObserver& observer = {});

}  // namespace singcubic
