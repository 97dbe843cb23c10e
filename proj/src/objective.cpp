#include "singcubic/objective.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace singcubic {

IndexList all_indices(int n) {
  IndexList all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

void FiniteSumObjective::check_index_set(IndexSpan S) const {
  if (S.empty()) throw std::invalid_argument("empty component index set");
  const int n = num_components();
  for (int i : S) {
    if (i < 0 || i >= n) {
      throw std::invalid_argument("component index " + std::to_string(i) +
                                  " out of range [0, " + std::to_string(n) +
                                  ")");
    }
  }
}

double FiniteSumObjective::full_value(const Vector& w) const {
  const IndexList all = all_indices(num_components());
  return value(all, w);
}

double FiniteSumObjective::full_value_gradient(const Vector& w,
                                               Vector& grad) const {
  const IndexList all = all_indices(num_components());
  return value_gradient(all, w, grad);
}

double FiniteSumObjective::full_value_gradient_hessian(const Vector& w,
                                                       Vector& grad,
                                                       Matrix& hess) const {
  const IndexList all = all_indices(num_components());
  return value_gradient_hessian(all, w, grad, hess);
}

DerivativeReport finite_diff_check(const FiniteSumObjective& obj,
                                   const Vector& w, double h) {
  if (!(h > 0)) throw std::invalid_argument("finite_diff_check: h must be > 0");
  const int p = obj.dimension();

  Vector grad(p);
  Matrix hess(p, p);
  obj.full_value_gradient_hessian(w, grad, hess);

  Vector grad_fd(p);
  Matrix hess_fd(p, p);
  Vector gp(p), gm(p);
  for (int j = 0; j < p; ++j) {
    const double hj = h * (1.0 + std::abs(w[j]));
    Vector wp = w, wm = w;
    wp[j] += hj;
    wm[j] -= hj;
    const double fp = obj.full_value_gradient(wp, gp);
    const double fm = obj.full_value_gradient(wm, gm);
    grad_fd[j] = (fp - fm) / (2.0 * hj);
    hess_fd.col(j) = (gp - gm) / (2.0 * hj);
  }

  DerivativeReport report;
  report.probe_step = h;
  const double gscale = std::max(1.0, grad_fd.cwiseAbs().maxCoeff());
  report.max_gradient_error = (grad - grad_fd).cwiseAbs().maxCoeff() / gscale;
  const double hscale = std::max(1.0, hess_fd.cwiseAbs().maxCoeff());
  report.max_hessian_error = (hess - hess_fd).cwiseAbs().maxCoeff() / hscale;
  return report;
}

}  // namespace singcubic
