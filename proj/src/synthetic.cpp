#include "singcubic/synthetic.hpp"

#include <stdexcept>

namespace singcubic {

QuadraticFiniteSum::QuadraticFiniteSum(Matrix anchors)
    : anchors_(std::move(anchors)) {
  if (anchors_.rows() < 1 || anchors_.cols() < 1) {
    throw std::invalid_argument("quadratic finite sum: need n, p >= 1");
  }
  minimizer_ = anchors_.rowwise().mean();
}

double QuadraticFiniteSum::value(IndexSpan S, const Vector& w) const {
  check_index_set(S);
  double sum = 0.0;
  for (int i : S) sum += 0.5 * (w - anchors_.col(i)).squaredNorm();
  return sum / static_cast<double>(S.size());
}

double QuadraticFiniteSum::value_gradient(IndexSpan S, const Vector& w,
                                          Vector& grad) const {
  check_index_set(S);
  grad = Vector::Zero(dimension());
  double sum = 0.0;
  for (int i : S) {
    const Vector diff = w - anchors_.col(i);
    sum += 0.5 * diff.squaredNorm();
    grad += diff;
  }
  const double inv = 1.0 / static_cast<double>(S.size());
  grad *= inv;
  return sum * inv;
}

double QuadraticFiniteSum::value_gradient_hessian(IndexSpan S, const Vector& w,
                                                  Vector& grad,
                                                  Matrix& hess) const {
  const double v = value_gradient(S, w, grad);
  hess = Matrix::Identity(dimension(), dimension());
  return v;
}

QuadraticFiniteSum synth_quadratic(int n, int p, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix anchors(p, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) anchors(j, i) = normal(rng);
  }
  return QuadraticFiniteSum(std::move(anchors));
}

}  // namespace singcubic
