#pragma once

#include <memory>

#include "singcubic/dataset.hpp"
#include "singcubic/objective.hpp"

namespace singcubic {

enum class Regularizer { kL2, kRational };

// value/gradient/diagonal-Hessian of the regularizer alone:
//   kL2:       alpha * (1/2) ||w||^2
//   kRational: alpha * sum_j beta w_j^2 / (1 + beta w_j^2)   (nonconvex)
// Both are separable, so the Hessian is diagonal.
struct RegularizerEval {
  double value = 0.0;
  Vector gradient;
  Vector hessian_diag;
};
RegularizerEval regularizer_eval(Regularizer kind, double alpha, double beta,
                                 const Vector& w);

// Binary logistic loss, averaged over the requested index set, plus the full
// regularizer. Per example with s = 1/(1+exp(-x^T w)):
//   loss = -[y log s + (1-y) log(1-s)], grad = (s-y) x, hess = s(1-s) x x^T.
// The sigmoid is evaluated in a branch that never exponentiates a positive
// argument, so large |x^T w| cannot overflow.
class LogisticProblem final : public FiniteSumObjective {
 public:
  LogisticProblem(std::shared_ptr<const Dataset> data, Regularizer kind,
                  double alpha, double beta = 1.0);

  int num_components() const override { return data_->n(); }
  int dimension() const override { return data_->p(); }

  double value(IndexSpan S, const Vector& w) const override;
  double value_gradient(IndexSpan S, const Vector& w,
                        Vector& grad) const override;
  double value_gradient_hessian(IndexSpan S, const Vector& w, Vector& grad,
                                Matrix& hess) const override;

  Regularizer regularizer() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const Dataset& data() const { return *data_; }

 private:
  std::shared_ptr<const Dataset> data_;
  Regularizer kind_;
  double alpha_;
  double beta_;
};

}  // namespace singcubic
