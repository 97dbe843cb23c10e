#pragma once

#include <memory>

#include "singcubic/types.hpp"

namespace singcubic {

// Average of n smooth components f_i over an index set S:
//   F_S(w) = (1/|S|) sum_{i in S} f_i(w)  (+ any whole-objective terms such
// as a regularizer, added once, not averaged).
//
// Indices are 0-based; an empty S or an out-of-range index throws
// std::invalid_argument. Evaluations are pure functions of (S, w) and may be
// called concurrently. Returned Hessians are exactly symmetric.
class FiniteSumObjective {
 public:
  virtual ~FiniteSumObjective() = default;

  virtual int num_components() const = 0;  // n
  virtual int dimension() const = 0;       // p

  virtual double value(IndexSpan S, const Vector& w) const = 0;
  virtual double value_gradient(IndexSpan S, const Vector& w,
                                Vector& grad) const = 0;
  virtual double value_gradient_hessian(IndexSpan S, const Vector& w,
                                        Vector& grad, Matrix& hess) const = 0;

  // Full-sum conveniences over S = {0..n-1}.
  double full_value(const Vector& w) const;
  double full_value_gradient(const Vector& w, Vector& grad) const;
  double full_value_gradient_hessian(const Vector& w, Vector& grad,
                                     Matrix& hess) const;

 protected:
  void check_index_set(IndexSpan S) const;
};

IndexList all_indices(int n);

// Max relative errors of analytic derivatives against central differences.
struct DerivativeReport {
  double max_gradient_error = 0.0;
  double max_hessian_error = 0.0;
  double probe_step = 0.0;
};

// Central-difference check of the full objective's gradient and Hessian at w.
// Per-coordinate steps are h*(1 + |w_j|). Errors are max-norm, relative to
// max(1, max-norm of the differenced quantity).
DerivativeReport finite_diff_check(const FiniteSumObjective& obj,
                                   const Vector& w, double h);

}  // namespace singcubic
