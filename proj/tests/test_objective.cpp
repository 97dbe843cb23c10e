#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "singcubic/logistic.hpp"
#include "singcubic/synthetic.hpp"
#include "test_support.hpp"

using namespace singcubic;

namespace {

std::shared_ptr<Dataset> single_row(const std::string& text) {
  return std::make_shared<Dataset>(parse_libsvm(text, "t"));
}

}  // namespace

TEST_CASE("logistic at w = 0 gives ln 2 and half-probability derivatives") {
  for (const double label : {0.0, 1.0}) {
    auto ds = single_row((label == 1.0 ? std::string("1") : std::string("0")) +
                         " 1:2 3:-1\n");
    LogisticProblem prob(ds, Regularizer::kL2, 0.0);
    const Vector w = Vector::Zero(3);
    Vector grad;
    Matrix hess;
    const IndexList s = {0};
    const double v = prob.value_gradient_hessian(s, w, grad, hess);
    CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const Vector x = Matrix(ds->X).row(0).transpose();
    CHECK((grad - (0.5 - label) * x).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((hess - 0.25 * x * x.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("logistic zero feature row") {
  // a row with no entries: value ln 2, no curvature
  auto ds = std::make_shared<Dataset>();
  ds->X.resize(1, 2);
  ds->y = Vector::Constant(1, 1.0);
  LogisticProblem prob(ds, Regularizer::kL2, 0.0);
  Vector grad;
  Matrix hess;
  const IndexList s = {0};
  const double v = prob.value_gradient_hessian(s, Vector::Zero(2), grad, hess);
  CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(grad.norm() == 0.0);
  CHECK(hess.norm() == 0.0);
}

TEST_CASE("logistic input validation") {
  auto prob = testing::random_logistic(20, 5, 1);
  Vector grad;
  const Vector w = Vector::Zero(5);
  CHECK_THROWS_AS(prob->value(IndexList{}, w), std::invalid_argument);
  CHECK_THROWS_AS(prob->value(IndexList{20}, w), std::invalid_argument);
  CHECK_THROWS_AS(prob->value(IndexList{-1}, w), std::invalid_argument);
}

TEST_CASE("regularizer closed forms") {
  SUBCASE("rational at w = 1, alpha = beta = 1") {
    const Vector w = Vector::Constant(1, 1.0);
    const RegularizerEval r = regularizer_eval(Regularizer::kRational, 1, 1, w);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.gradient[0] == doctest::Approx(0.5).epsilon(1e-14));
    // second derivative of w^2/(1+w^2) at w = 1 is 2(1-3)/2^3 = -1/2
    CHECK(r.hessian_diag[0] == doctest::Approx(-0.5).epsilon(1e-14));
  }
  SUBCASE("zero point") {
    const Vector w = Vector::Zero(4);
    for (const auto kind : {Regularizer::kL2, Regularizer::kRational}) {
      const RegularizerEval r = regularizer_eval(kind, 0.7, 2.0, w);
      CHECK(r.value == 0.0);
      CHECK(r.gradient.norm() == 0.0);
    }
  }
  SUBCASE("l2 quadratic") {
    Vector w(2);
    w << 1.0, -1.0;
    const RegularizerEval r = regularizer_eval(Regularizer::kL2, 2.0, 1.0, w);
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(r.gradient[0] == doctest::Approx(2.0));
    CHECK(r.gradient[1] == doctest::Approx(-2.0));
    CHECK(r.hessian_diag[0] == doctest::Approx(2.0));
    CHECK(r.hessian_diag[1] == doctest::Approx(2.0));
  }
  SUBCASE("rational second derivative against central differences") {
    const double alpha = 0.8, beta = 2.5;
    for (const double x : {0.2, 1.0, 1.0 / std::sqrt(beta), -0.7}) {
      const Vector w = Vector::Constant(1, x);
      const double h = 1e-5;
      const auto at = [&](double t) {
        return regularizer_eval(Regularizer::kRational, alpha, beta,
                                Vector::Constant(1, t));
      };
      const double d2 = (at(x + h).gradient[0] - at(x - h).gradient[0]) / (2 * h);
      CHECK(at(x).hessian_diag[0] == doctest::Approx(d2).epsilon(1e-6));
    }
  }
}

TEST_CASE("finite differences validate both logistic variants") {
  Rng rng(12);
  for (const auto kind : {Regularizer::kL2, Regularizer::kRational}) {
    auto prob = testing::random_logistic(20, 5, 77, kind, 1e-3, 1.0);
    const Vector w = testing::random_vector(5, rng, 0.8);
    const DerivativeReport rep = finite_diff_check(*prob, w, 1e-6);
    CHECK(rep.max_gradient_error <= 1e-5);
    CHECK(rep.max_hessian_error <= 1e-5);
  }
}

TEST_CASE("finite differences are exact for quadratics") {
  const QuadraticFiniteSum q{Matrix::Zero(4, 1)};  // f(w) = ||w||^2 / 2
  Rng rng(4);
  const DerivativeReport rep =
      finite_diff_check(q, testing::random_vector(4, rng, 0.3), 1e-6);
  CHECK(rep.max_gradient_error <= 1e-10);
}

TEST_CASE("finite differences on a larger logistic subsample") {
  auto prob = testing::random_logistic(100, 12, 3, Regularizer::kL2, 1e-3, 1.0,
                                       5, true);
  Rng rng(8);
  const DerivativeReport rep =
      finite_diff_check(*prob, testing::random_vector(12, rng, 0.5), 1e-6);
  CHECK(rep.max_gradient_error <= 1e-5);
  CHECK(rep.max_hessian_error <= 1e-5);
}

TEST_CASE("rational penalty near the inflection region") {
  const double beta = 3.0;
  auto prob = testing::random_logistic(30, 6, 21, Regularizer::kRational, 1e-2,
                                       beta);
  const Vector w = Vector::Constant(6, 1.0 / std::sqrt(beta));
  const DerivativeReport rep = finite_diff_check(*prob, w, 1e-6);
  CHECK(rep.max_hessian_error <= 1e-4);
}

TEST_CASE("hessians are exactly symmetric") {
  auto prob = testing::random_logistic(25, 7, 31, Regularizer::kRational);
  Rng rng(2);
  Vector grad;
  Matrix hess;
  for (int trial = 0; trial < 5; ++trial) {
    const Vector w = testing::random_vector(7, rng);
    prob->full_value_gradient_hessian(w, grad, hess);
    CHECK((hess - hess.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("l2 hessian is uniformly positive definite") {
  const double alpha = 0.05;
  auto prob = testing::random_logistic(40, 8, 17, Regularizer::kL2, alpha);
  Rng rng(3);
  Vector grad;
  Matrix hess;
  for (int trial = 0; trial < 5; ++trial) {
    IndexList subset;
    std::uniform_int_distribution<int> pick(0, 39);
    for (int i = 0; i < 11; ++i) subset.push_back(pick(rng));
    prob->value_gradient_hessian(subset, testing::random_vector(8, rng), grad,
                                 hess);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(hess);
    CHECK(eig.eigenvalues()[0] >= alpha - 1e-10);
  }
}

TEST_CASE("full evaluation equals the mean of singleton evaluations") {
  auto prob = testing::random_logistic(30, 6, 23, Regularizer::kRational, 1e-2);
  Rng rng(9);
  const Vector w = testing::random_vector(6, rng);
  Vector grad, gi;
  Matrix hess, hi;
  const double v = prob->full_value_gradient_hessian(w, grad, hess);

  // singleton evaluations include the full regularizer once each
  const RegularizerEval reg =
      regularizer_eval(Regularizer::kRational, 1e-2, 1.0, w);
  double vsum = 0.0;
  Vector gsum = Vector::Zero(6);
  Matrix hsum = Matrix::Zero(6, 6);
  for (int i = 0; i < 30; ++i) {
    const IndexList s = {i};
    vsum += prob->value_gradient_hessian(s, w, gi, hi) - reg.value;
    gsum += gi - reg.gradient;
    Matrix hr = Matrix::Zero(6, 6);
    hr.diagonal() = reg.hessian_diag;
    hsum += hi - hr;
  }
  vsum = vsum / 30.0 + reg.value;
  gsum = gsum / 30.0 + reg.gradient;
  hsum /= 30.0;
  hsum.diagonal() += reg.hessian_diag;
  CHECK(v == doctest::Approx(vsum).epsilon(1e-12));
  CHECK((grad - gsum).cwiseAbs().maxCoeff() <=
        1e-12 * std::max(1.0, grad.cwiseAbs().maxCoeff()));
  CHECK((hess - hsum).cwiseAbs().maxCoeff() <=
        1e-12 * std::max(1.0, hess.cwiseAbs().maxCoeff()));
}

TEST_CASE("fifty random probes pass the derivative check") {
  Rng rng(123);
  for (int probe = 0; probe < 50; ++probe) {
    const auto kind =
        probe % 2 == 0 ? Regularizer::kL2 : Regularizer::kRational;
    auto prob = testing::random_logistic(15, 4, 1000 + probe, kind, 1e-3, 1.5);
    const DerivativeReport rep =
        finite_diff_check(*prob, testing::random_vector(4, rng, 0.6), 1e-6);
    CHECK(rep.max_gradient_error <= 1e-5);
    CHECK(rep.max_hessian_error <= 1e-5);
  }
}
