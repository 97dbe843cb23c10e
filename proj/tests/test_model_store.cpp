#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "singcubic/model_store.hpp"
#include "singcubic/synthetic.hpp"
#include "test_support.hpp"

using namespace singcubic;

namespace {

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

double rel_gap(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().maxCoeff() /
         std::max(1.0, b.cwiseAbs().maxCoeff());
}

double rel_gap(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff() /
         std::max(1.0, b.cwiseAbs().maxCoeff());
}

// the Alg-2 style model function: weighted mean of the stored per-component
// quadratic expansions, evaluated directly
double direct_model_at(const ModelStore& store, int n, const Vector& x) {
  double out = 0.0;
  for (int j = 0; j < store.num_components(); ++j) {
    const ComponentModel& cm = store.component(j);
    const double w = static_cast<double>(store.batches()[j].size()) / n;
    const Vector dx = x - cm.anchor;
    out += w * (cm.f + dx.dot(cm.g) + 0.5 * dx.dot(cm.H * dx));
  }
  return out;
}

}  // namespace

TEST_CASE("single-batch store collapses to the full second-order model") {
  auto prob = testing::random_logistic(25, 6, 3);
  Rng rng(7);
  const Vector x0 = testing::random_vector(6, rng, 0.3);
  const ModelStore store = init_model_store(*prob, x0, 1.0);
  Vector grad;
  Matrix hess;
  const double f = prob->full_value_gradient_hessian(x0, grad, hess);
  CHECK(rel_gap(store.g(), grad) <= 1e-12);
  CHECK(rel_gap(store.H(), hess) <= 1e-12);
  CHECK(rel_gap(store.c(), f) <= 1e-12);
}

TEST_CASE("quadratic components give exact aggregates") {
  const QuadraticFiniteSum q = synth_quadratic(20, 5, 11);
  Rng rng(2);
  const Vector x0 = testing::random_vector(5, rng);
  const ModelStore store = init_model_store(q, x0, 0.05);  // singletons
  const Vector expected_g = x0 - q.minimizer();
  CHECK(rel_gap(store.g(), expected_g) <= 1e-13);
  CHECK(rel_gap(store.H(), Matrix::Identity(5, 5)) <= 1e-14);
}

TEST_CASE("initialization matches the rebuild oracle") {
  auto prob = testing::random_logistic(30, 5, 13);
  Rng rng(3);
  const Vector x0 = testing::random_vector(5, rng, 0.5);
  const ModelStore store = init_model_store(*prob, x0, 0.1);  // 10 batches x 3
  CHECK(store.num_components() == 10);
  const Aggregates agg = store.rebuild_aggregates();
  CHECK(rel_gap(store.H(), agg.H) <= 1e-12);
  CHECK(rel_gap(store.g(), agg.g) <= 1e-12);
  CHECK(rel_gap(store.c(), agg.c) <= 1e-12);
}

TEST_CASE("model value closed forms") {
  auto prob = testing::random_logistic(20, 4, 17);
  Rng rng(5);
  const Vector x0 = testing::random_vector(4, rng, 0.4);
  const ModelStore store = init_model_store(*prob, x0, 1.0);

  SUBCASE("zero displacement returns c") {
    CHECK(store.model_value(Vector::Zero(4), 2.0) == store.c());
  }
  SUBCASE("fresh single-batch model is third-order accurate") {
    const Vector dir = testing::random_vector(4, rng).normalized();
    double prev_err = 0.0;
    for (const double h : {2e-3, 1e-3}) {
      const Vector d = h * dir;
      const double dn = d.norm();
      const double model_quad =
          store.model_value(d, 1.0) - (1.0 / 3.0) * dn * dn * dn;
      const double err = std::abs(model_quad - prob->full_value(x0 + d));
      CHECK(err <= 50.0 * h * h * h);
      if (prev_err > 0.0) {
        // halving h divides the remainder by about eight
        CHECK(prev_err / err >= 4.0);
      }
      prev_err = err;
    }
  }
}

TEST_CASE("model equals a quadratic objective exactly when sigma is zero") {
  const QuadraticFiniteSum q = synth_quadratic(12, 3, 19);
  Rng rng(6);
  const Vector x0 = testing::random_vector(3, rng);
  const ModelStore store = init_model_store(q, x0, 0.25);
  for (int t = 0; t < 5; ++t) {
    const Vector d = testing::random_vector(3, rng);
    CHECK(store.model_value(d, 0.0) ==
          doctest::Approx(q.full_value(x0 + d)).epsilon(1e-13));
  }
}

TEST_CASE("refreshing everything at one point recovers the taylor expansion") {
  auto prob = testing::random_logistic(10, 4, 23);
  Rng rng(8);
  const Vector x0 = testing::random_vector(4, rng, 0.2);
  // ragged partition: batches of 3,3,3,1
  ModelStore store = init_model_store(*prob, x0, 0.3);
  REQUIRE(store.num_components() == 4);

  const Vector x1 = testing::random_vector(4, rng, 0.2);
  store.set_iterate(x1);
  for (int j = 0; j < store.num_components(); ++j) {
    store.refresh_component(j, *prob);
  }
  Vector grad;
  Matrix hess;
  const double f = prob->full_value_gradient_hessian(x1, grad, hess);
  CHECK(rel_gap(store.g(), grad) <= 1e-12);
  CHECK(rel_gap(store.H(), hess) <= 1e-12);
  CHECK(rel_gap(store.c(), f) <= 1e-12);
}

TEST_CASE("single-batch refresh tracks the new point") {
  auto prob = testing::random_logistic(15, 3, 29);
  Rng rng(9);
  const Vector x0 = testing::random_vector(3, rng, 0.3);
  ModelStore store = init_model_store(*prob, x0, 1.0);
  const Vector x1 = testing::random_vector(3, rng, 0.3);
  store.set_iterate(x1);
  store.refresh_component(0, *prob);
  Vector grad;
  Matrix hess;
  prob->full_value_gradient_hessian(x1, grad, hess);
  CHECK(rel_gap(store.g(), grad) <= 1e-12);
  CHECK(rel_gap(store.H(), hess) <= 1e-12);
}

TEST_CASE("incremental updates agree with the rebuild oracle") {
  auto prob = testing::random_logistic(30, 5, 37);
  Rng rng(10);
  Vector x = testing::random_vector(5, rng, 0.4);
  ModelStore store = init_model_store(*prob, x, 0.1);
  const int n = prob->num_components();

  for (int step = 0; step < 5; ++step) {
    x += testing::random_vector(5, rng, 0.1);
    store.set_iterate(x);
    store.refresh_component(step % store.num_components(), *prob);

    const Aggregates agg = store.rebuild_aggregates();
    CHECK(rel_gap(store.H(), agg.H) <= 1e-10);
    CHECK(rel_gap(store.g(), agg.g) <= 1e-10);
    CHECK(rel_gap(store.c(), agg.c) <= 1e-10);

    // the aggregate quadratic equals the direct mean of component models
    for (int t = 0; t < 5; ++t) {
      const Vector probe = x + testing::random_vector(5, rng, 0.5);
      const Vector dx = probe - x;
      const double via_aggregates =
          store.c() + dx.dot(store.g()) + 0.5 * dx.dot(store.H() * dx);
      CHECK(via_aggregates ==
            doctest::Approx(direct_model_at(store, n, probe)).epsilon(1e-10));
    }
  }
}

TEST_CASE("store rejects invalid partitions") {
  auto prob = testing::random_logistic(10, 3, 41);
  const Vector x0 = Vector::Zero(3);
  CHECK_THROWS_AS(ModelStore(*prob, x0, {}), std::invalid_argument);
  CHECK_THROWS_AS(ModelStore(*prob, x0, {{0, 1, 2}}), std::invalid_argument);
  std::vector<IndexList> dup{{0, 1, 2, 3, 4}, {4, 5, 6, 7, 8}};
  CHECK_THROWS_AS(ModelStore(*prob, x0, dup), std::invalid_argument);
}
