#pragma once

#include "singcubic/objective.hpp"

namespace singcubic {

// Finite sum of shifted quadratics f_i(x) = (1/2)||x - a_i||^2 with the
// closed-form minimizer mean(a_i). Used as a convergence oracle.
class QuadraticFiniteSum final : public FiniteSumObjective {
 public:
  // anchors: p x n, one column per component.
  explicit QuadraticFiniteSum(Matrix anchors);

  int num_components() const override { return static_cast<int>(anchors_.cols()); }
  int dimension() const override { return static_cast<int>(anchors_.rows()); }

  double value(IndexSpan S, const Vector& w) const override;
  double value_gradient(IndexSpan S, const Vector& w,
                        Vector& grad) const override;
  double value_gradient_hessian(IndexSpan S, const Vector& w, Vector& grad,
                                Matrix& hess) const override;

  const Vector& minimizer() const { return minimizer_; }
  const Matrix& anchors() const { return anchors_; }

 private:
  Matrix anchors_;
  Vector minimizer_;
};

// Seeded generator with standard-normal anchors.
QuadraticFiniteSum synth_quadratic(int n, int p, std::uint64_t seed);

}  // namespace singcubic
