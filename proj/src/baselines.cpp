#include "singcubic/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "singcubic/cubic_subproblem.hpp"
#include "singcubic/dataset.hpp"
#include "singcubic/optimizer.hpp"

namespace singcubic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int batch_size(double frac, int n) {
  return std::max(1, static_cast<int>(std::ceil(frac * n)));
}

// Uniform subset of size m without replacement (all indices when m >= n, with
// no rng draws so full-sample runs stay aligned with deterministic ones).
IndexList sample_subset(int n, int m, Rng& rng) {
  if (m >= n) return all_indices(n);
  IndexList pool = all_indices(n);
  IndexList out;
  out.reserve(m);
  std::sample(pool.begin(), pool.end(), std::back_inserter(out), m, rng);
  return out;
}

void record_iteration(IterationTrace& trace, long long k, double objective,
                      double grad_norm, double sigma, double rho, int accepted,
                      double wall_s) {
  TraceRecord rec;
  rec.iter = k;
  rec.effective_epochs = trace.effective_epochs();
  rec.objective = objective;
  rec.grad_norm = grad_norm;
  rec.sigma = sigma;
  rec.rho = rho;
  rec.accepted = accepted;
  rec.wall_time_s = wall_s;
  trace.records.push_back(rec);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void validate(const BaselineConfig& cfg) {
  if (!(cfg.learning_rate > 0)) {
    throw std::invalid_argument("baseline config: learning_rate <= 0");
  }
  if (!(cfg.batch_frac > 0) || cfg.batch_frac > 1) {
    throw std::invalid_argument("baseline config: batch_frac in (0, 1]");
  }
  if (!(cfg.sg_frac > 0) || cfg.sg_frac > 1 || !(cfg.sh_frac > 0) ||
      cfg.sh_frac > 1) {
    throw std::invalid_argument("baseline config: sample fractions in (0, 1]");
  }
  if (!(cfg.sigma0 > 0) || !(cfg.delta0 > 0)) {
    throw std::invalid_argument("baseline config: sigma0, delta0 > 0");
  }
}

Vector sgd_run(const FiniteSumObjective& obj, const Vector& x0,
               const BaselineConfig& cfg, IterationTrace& trace,
               const IterateObserver& observer) {
  validate(cfg);
  const auto t0 = Clock::now();
  const int n = obj.num_components();
  const int b = batch_size(cfg.batch_frac, n);
  const IndexList all = all_indices(n);
  Rng rng(cfg.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);

  Vector x = x0;
  Vector grad(obj.dimension()), batch_grad(obj.dimension());
  IndexList batch(b);

  for (long long k = 0;; ++k) {
    if (cfg.max_iterations > 0 && k >= cfg.max_iterations) break;
    if (trace.effective_epochs() >= cfg.max_epochs) break;

    for (int i = 0; i < b; ++i) batch[i] = pick(rng);
    obj.value_gradient(batch, x, batch_grad);
    x -= cfg.learning_rate * batch_grad;
    trace.grad_epochs += static_cast<double>(b) / n;
    if (!x.allFinite()) {
      throw std::runtime_error("sgd: iterate diverged (iteration " +
                               std::to_string(k) + ")");
    }

    const double f = obj.value_gradient(all, x, grad);
    record_iteration(trace, k, f, grad.norm(), kNaN, kNaN, 1,
                     seconds_since(t0));
    if (observer) observer(k, x);
  }
  return x;
}

Vector saga_run(const FiniteSumObjective& obj, const Vector& x0,
                const BaselineConfig& cfg, IterationTrace& trace,
                const IterateObserver& observer) {
  validate(cfg);
  const auto t0 = Clock::now();
  const int n = obj.num_components();
  const IndexList all = all_indices(n);
  const auto batches = make_batches(n, cfg.batch_frac);
  const int nb = static_cast<int>(batches.size());
  Rng rng(cfg.seed);
  std::uniform_int_distribution<int> pick(0, nb - 1);

  Vector x = x0;
  std::vector<Vector> table(nb);
  Vector table_mean = Vector::Zero(obj.dimension());
  for (int j = 0; j < nb; ++j) {
    obj.value_gradient(batches[j], x, table[j]);
    table_mean += table[j];
  }
  table_mean /= static_cast<double>(nb);
  trace.grad_epochs += 1.0;  // table initialization

  Vector gj(obj.dimension()), grad(obj.dimension());
  for (long long k = 0;; ++k) {
    if (cfg.max_iterations > 0 && k >= cfg.max_iterations) break;
    if (trace.effective_epochs() >= cfg.max_epochs) break;

    const int j = pick(rng);
    obj.value_gradient(batches[j], x, gj);
    x -= cfg.learning_rate * (gj - table[j] + table_mean);
    table_mean += (gj - table[j]) / static_cast<double>(nb);
    table[j] = gj;
    trace.grad_epochs += static_cast<double>(batches[j].size()) / n;
    if (!x.allFinite()) {
      throw std::runtime_error("saga: iterate diverged (iteration " +
                               std::to_string(k) + ")");
    }

    const double f = obj.value_gradient(all, x, grad);
    record_iteration(trace, k, f, grad.norm(), kNaN, kNaN, 1,
                     seconds_since(t0));
    if (observer) observer(k, x);
  }
  return x;
}

Vector scr_run(const FiniteSumObjective& obj, const Vector& x0,
               const BaselineConfig& cfg, IterationTrace& trace,
               const IterateObserver& observer) {
  validate(cfg);
  OptimizerConfig rho_cfg;
  rho_cfg.eta1 = cfg.eta1;
  rho_cfg.eta2 = cfg.eta2;
  rho_cfg.gamma1 = cfg.gamma1;
  rho_cfg.gamma2 = cfg.gamma2;
  rho_cfg.sigma_floor = cfg.sigma_floor;

  const auto t0 = Clock::now();
  const int n = obj.num_components();
  const IndexList all = all_indices(n);
  Rng rng(cfg.seed);

  Vector x = x0;
  Vector grad(obj.dimension()), g_s(obj.dimension());
  Matrix h_s(obj.dimension(), obj.dimension());
  double f_cur = obj.value_gradient(all, x, grad);
  double grad_norm = grad.norm();
  if (!std::isfinite(f_cur)) {
    throw std::runtime_error("scr: objective not finite at x0");
  }

  double sigma = cfg.sigma0;
  double lambda_warm = 0.0;
  double sg = batch_size(cfg.sg_frac, n);
  double sh = batch_size(cfg.sh_frac, n);

  for (long long k = 0;; ++k) {
    if (cfg.max_iterations > 0 && k >= cfg.max_iterations) break;
    if (trace.effective_epochs() >= cfg.max_epochs) break;
    if (grad_norm <= cfg.eps_g) break;

    const int n_g = std::min(n, static_cast<int>(std::lround(sg)));
    const int n_h = std::min(n, static_cast<int>(std::lround(sh)));
    const IndexList set_g = sample_subset(n, n_g, rng);
    const IndexList set_h = sample_subset(n, n_h, rng);
    obj.value_gradient(set_g, x, g_s);
    Vector dummy(obj.dimension());
    obj.value_gradient_hessian(set_h, x, dummy, h_s);
    trace.grad_epochs += static_cast<double>(set_g.size()) / n;
    trace.hess_epochs += static_cast<double>(set_h.size()) / n;

    SubproblemInput sub_in;
    sub_in.g = g_s;
    sub_in.H = h_s;
    sub_in.sigma = sigma;
    sub_in.lambda_warm = lambda_warm;
    sub_in.eps_tol = cfg.subproblem_eps_tol;
    sub_in.max_iters = cfg.subproblem_max_iters;
    const SubproblemResult sub = solve_cubic(sub_in, rng);
    lambda_warm = sub.lambda;

    std::optional<double> rho;
    bool accepted = false;
    if (sub.status != SubproblemStatus::kMaxIters) {
      const double m_step =
          f_cur + cubic_model_value(g_s, h_s, sigma, sub.d);
      const double f_trial = obj.value(all, x + sub.d);
      if (!std::isfinite(f_trial)) {
        throw std::runtime_error("scr: objective diverged (iteration " +
                                 std::to_string(k) + ")");
      }
      rho = compute_rho(f_cur, f_trial, m_step);
      accepted = rho && *rho >= cfg.eta1;
      if (accepted) {
        x += sub.d;
        f_cur = f_trial;
      }
    }
    const double sigma_used = sigma;
    sigma = update_sigma(rho, sigma, rho_cfg);
    if (cfg.grow_samples) {
      sg = std::min(static_cast<double>(n), sg * 1.5);
      sh = std::min(static_cast<double>(n), sh * 1.5);
    }

    obj.value_gradient(all, x, grad);
    grad_norm = grad.norm();
    record_iteration(trace, k, f_cur, grad_norm, sigma_used,
                     rho ? *rho : kNaN, accepted ? 1 : 0, seconds_since(t0));
    if (observer) observer(k, x);
  }
  return x;
}

Vector tr_run(const FiniteSumObjective& obj, const Vector& x0,
              const BaselineConfig& cfg, IterationTrace& trace,
              const IterateObserver& observer) {
  validate(cfg);
  const auto t0 = Clock::now();
  const int n = obj.num_components();
  const IndexList all = all_indices(n);

  Vector x = x0;
  Vector grad(obj.dimension());
  Matrix hess(obj.dimension(), obj.dimension());
  double delta = cfg.delta0;

  for (long long k = 0;; ++k) {
    if (cfg.max_iterations > 0 && k >= cfg.max_iterations) break;
    if (trace.effective_epochs() >= cfg.max_epochs) break;

    const double f_cur = obj.value_gradient_hessian(all, x, grad, hess);
    trace.grad_epochs += 1.0;
    trace.hess_epochs += 1.0;
    if (!std::isfinite(f_cur)) {
      throw std::runtime_error("tr: objective not finite (iteration " +
                               std::to_string(k) + ")");
    }
    if (grad.norm() <= cfg.eps_g) break;

    const TrustRegionStep step = solve_trust_region(grad, hess, delta);
    const double m_step = quadratic_model_value(grad, hess, step.d);
    const double f_trial = obj.value(all, x + step.d);
    if (!std::isfinite(f_trial)) {
      throw std::runtime_error("tr: objective diverged (iteration " +
                               std::to_string(k) + ")");
    }
    const std::optional<double> rho = compute_rho(f_cur, f_trial, f_cur + m_step);
    const bool accepted = rho && *rho >= cfg.eta1;
    double f_next = f_cur;
    if (accepted) {
      x += step.d;
      f_next = f_trial;
    }
    const double delta_used = delta;
    if (rho && *rho >= cfg.eta2) {
      delta *= 2.0;
    } else if (!rho || *rho < cfg.eta1) {
      delta *= 0.5;
    }

    Vector g_now(obj.dimension());
    obj.value_gradient(all, x, g_now);
    record_iteration(trace, k, f_next, g_now.norm(), delta_used,
                     rho ? *rho : kNaN, accepted ? 1 : 0, seconds_since(t0));
    if (observer) observer(k, x);
  }
  return x;
}

}  // namespace singcubic
