#include "singcubic/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "singcubic/cubic_subproblem.hpp"
#include "singcubic/dataset.hpp"

namespace singcubic {

void validate(const OptimizerConfig& cfg) {
  if (!(0 < cfg.eta1 && cfg.eta1 <= cfg.eta2 && cfg.eta2 < 1)) {
    throw std::invalid_argument("optimizer config: need 0 < eta1 <= eta2 < 1");
  }
  if (!(cfg.gamma1 > 1) || !(cfg.gamma2 > 1)) {
    throw std::invalid_argument("optimizer config: need gamma1, gamma2 > 1");
  }
  if (!(cfg.sigma0 > 0)) {
    throw std::invalid_argument("optimizer config: need sigma0 > 0");
  }
  if (!(cfg.batch_frac > 0) || cfg.batch_frac > 1) {
    throw std::invalid_argument("optimizer config: batch_frac in (0, 1]");
  }
}

std::optional<double> compute_rho(double f_old, double f_new,
                                  double m_at_step) {
  const double denom = f_old - m_at_step;
  if (!(denom > 1e-14 * std::max(1.0, std::abs(f_old)))) return std::nullopt;
  return (f_old - f_new) / denom;
}

double update_sigma(double rho, double sigma, const OptimizerConfig& cfg) {
  if (rho >= cfg.eta2) return std::max(sigma / cfg.gamma2, cfg.sigma_floor);
  if (rho < cfg.eta1) return cfg.gamma1 * sigma;
  return sigma;
}

double update_sigma(const std::optional<double>& rho, double sigma,
                    const OptimizerConfig& cfg) {
  const double r =
      rho ? *rho : -std::numeric_limits<double>::infinity();
  return update_sigma(r, sigma, cfg);
}

Vector singcubic_run(const FiniteSumObjective& obj, const Vector& x0,
                     const OptimizerConfig& cfg, IterationTrace& trace,
                     const StoreObserver& observer) {
  validate(cfg);
  const auto t_start = std::chrono::steady_clock::now();
  const int n = obj.num_components();
  Rng rng(cfg.seed);

  ModelStore store(obj, x0, make_batches(n, cfg.batch_frac));
  const int nb = store.num_components();
  trace.grad_epochs += 1.0;  // initialization evaluates every component
  trace.hess_epochs += 1.0;

  const IndexList all = all_indices(n);
  Vector x = x0;
  Vector grad(obj.dimension());
  double f_cur = obj.value_gradient(all, x, grad);
  double grad_norm = grad.norm();
  if (!std::isfinite(f_cur)) {
    throw std::runtime_error("singcubic: objective not finite at x0");
  }

  double sigma = cfg.sigma0;
  double lambda_warm = 0.0;
  long long cursor = 0;
  std::uniform_int_distribution<int> pick(0, nb - 1);

  for (long long k = 0;; ++k) {
    if (cfg.max_iterations > 0 && k >= cfg.max_iterations) break;
    if (trace.effective_epochs() >= cfg.max_epochs) break;
    // Full-gradient stopping test, amortized over one cycle of refreshes.
    if (k % nb == 0 && grad_norm <= cfg.eps_g) break;

    SubproblemInput sub_in;
    sub_in.g = store.g();
    sub_in.H = store.H();
    sub_in.sigma = sigma;
    sub_in.lambda_warm = lambda_warm;
    sub_in.eps_tol = cfg.subproblem_eps_tol;
    sub_in.max_iters = cfg.subproblem_max_iters;
    if (!sub_in.g.allFinite()) {
      throw std::runtime_error("singcubic: aggregate gradient not finite");
    }
    const SubproblemResult sub = solve_cubic(sub_in, rng);
    lambda_warm = sub.lambda;

    std::optional<double> rho;
    bool accepted = false;
    if (sub.status != SubproblemStatus::kMaxIters) {
      // Predicted reduction is measured within the model, m(0) - m(d); the
      // stale constant c drifts away from F(x_k) after accepted steps, and
      // anchoring the ratio at c would leave the denominator negative until
      // a full refresh cycle heals it.
      const double predicted = store.c() - store.model_value(sub.d, sigma);
      const double f_trial = obj.value(all, x + sub.d);
      if (!std::isfinite(f_trial)) {
        throw std::runtime_error("singcubic: objective diverged (iteration " +
                                 std::to_string(k) + ")");
      }
      rho = compute_rho(f_cur, f_trial, f_cur - predicted);
      accepted = rho && *rho >= cfg.eta1;
      if (accepted) {
        x += sub.d;
        f_cur = f_trial;
        store.set_iterate(x);
      }
    }
    const double sigma_used = sigma;
    sigma = std::min(update_sigma(rho, sigma, cfg), 1e300);

    const int j = cfg.sampling == Sampling::kCyclic
                      ? static_cast<int>(cursor++ % nb)
                      : pick(rng);
    store.refresh_component(j, obj);
    const double charge =
        static_cast<double>(store.batches()[j].size()) / static_cast<double>(n);
    trace.grad_epochs += charge;
    trace.hess_epochs += charge;

    obj.value_gradient(all, x, grad);
    grad_norm = grad.norm();

    TraceRecord rec;
    rec.iter = k;
    rec.effective_epochs = trace.effective_epochs();
    rec.objective = f_cur;
    rec.grad_norm = grad_norm;
    rec.sigma = sigma_used;
    if (rho) rec.rho = *rho;
    rec.accepted = accepted ? 1 : 0;
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    trace.records.push_back(rec);
    if (observer) observer(k, x, store);
  }
  return x;
}

}  // namespace singcubic
