#include "singcubic/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace singcubic {

namespace {

// sigmoid(t) without exponentiating a positive argument.
double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// -[y log s + (1-y) log(1-s)] = log(1+exp(-t)) + (1-y) t, branchwise stable.
double logistic_loss(double t, double y) {
  if (t >= 0) return std::log1p(std::exp(-t)) + (1.0 - y) * t;
  return std::log1p(std::exp(t)) - y * t;
}

}  // namespace

RegularizerEval regularizer_eval(Regularizer kind, double alpha, double beta,
                                 const Vector& w) {
  if (alpha < 0) throw std::invalid_argument("regularizer: alpha must be >= 0");
  const int p = static_cast<int>(w.size());
  RegularizerEval out;
  out.gradient = Vector::Zero(p);
  out.hessian_diag = Vector::Zero(p);
  if (kind == Regularizer::kL2) {
    out.value = 0.5 * alpha * w.squaredNorm();
    out.gradient = alpha * w;
    out.hessian_diag.setConstant(alpha);
    return out;
  }
  if (!(beta > 0)) {
    throw std::invalid_argument("rational regularizer: beta must be > 0");
  }
  for (int j = 0; j < p; ++j) {
    const double bw2 = beta * w[j] * w[j];
    const double den = 1.0 + bw2;
    out.value += alpha * bw2 / den;
    out.gradient[j] = 2.0 * alpha * beta * w[j] / (den * den);
    out.hessian_diag[j] = 2.0 * alpha * beta * (1.0 - 3.0 * bw2) / (den * den * den);
  }
  return out;
}

LogisticProblem::LogisticProblem(std::shared_ptr<const Dataset> data,
                                 Regularizer kind, double alpha, double beta)
    : data_(std::move(data)), kind_(kind), alpha_(alpha), beta_(beta) {
  if (data_ == nullptr) throw std::invalid_argument("logistic: null dataset");
  if (alpha_ < 0) throw std::invalid_argument("logistic: alpha must be >= 0");
  if (kind_ == Regularizer::kRational && !(beta_ > 0)) {
    throw std::invalid_argument("logistic: beta must be > 0");
  }
  for (int i = 0; i < data_->n(); ++i) {
    if (data_->y[i] != 0.0 && data_->y[i] != 1.0) {
      throw std::invalid_argument(
          "logistic: labels must be in {0,1}; run normalize_labels first");
    }
  }
}

double LogisticProblem::value(IndexSpan S, const Vector& w) const {
  check_index_set(S);
  double sum = 0.0;
  for (int i : S) {
    const double t = data_->X.row(i).dot(w);
    sum += logistic_loss(t, data_->y[i]);
  }
  const RegularizerEval reg = regularizer_eval(kind_, alpha_, beta_, w);
  return sum / static_cast<double>(S.size()) + reg.value;
}

double LogisticProblem::value_gradient(IndexSpan S, const Vector& w,
                                       Vector& grad) const {
  check_index_set(S);
  const int p = dimension();
  grad = Vector::Zero(p);
  double sum = 0.0;
  for (int i : S) {
    const double t = data_->X.row(i).dot(w);
    const double y = data_->y[i];
    sum += logistic_loss(t, y);
    const double coef = sigmoid(t) - y;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             data_->X, i);
         it; ++it) {
      grad[it.col()] += coef * it.value();
    }
  }
  const double inv = 1.0 / static_cast<double>(S.size());
  sum *= inv;
  grad *= inv;
  const RegularizerEval reg = regularizer_eval(kind_, alpha_, beta_, w);
  grad += reg.gradient;
  return sum + reg.value;
}

double LogisticProblem::value_gradient_hessian(IndexSpan S, const Vector& w,
                                               Vector& grad,
                                               Matrix& hess) const {
  check_index_set(S);
  const int p = dimension();
  grad = Vector::Zero(p);
  hess = Matrix::Zero(p, p);
  double sum = 0.0;
  for (int i : S) {
    const double t = data_->X.row(i).dot(w);
    const double y = data_->y[i];
    sum += logistic_loss(t, y);
    const double s = sigmoid(t);
    const double gcoef = s - y;
    const double hcoef = s * (1.0 - s);
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             data_->X, i);
         it; ++it) {
      grad[it.col()] += gcoef * it.value();
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator jt(
               data_->X, i);
           jt; ++jt) {
        // product first: keeps H bitwise symmetric
        hess(it.col(), jt.col()) += hcoef * (it.value() * jt.value());
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(S.size());
  sum *= inv;
  grad *= inv;
  hess *= inv;
  const RegularizerEval reg = regularizer_eval(kind_, alpha_, beta_, w);
  grad += reg.gradient;
  hess.diagonal() += reg.hessian_diag;
  return sum + reg.value;
}

}  // namespace singcubic
