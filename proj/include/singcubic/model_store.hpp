#pragma once

#include <vector>

#include "singcubic/objective.hpp"

namespace singcubic {

// Second-order model of one component batch, expanded at its own anchor.
struct ComponentModel {
  double f = 0.0;  // value at the anchor
  Vector g;        // gradient at the anchor
  Matrix H;        // Hessian at the anchor
  double u = 0.0;  // g^T anchor
  Vector v;        // H * anchor
  double w = 0.0;  // anchor^T H anchor
  Vector anchor;
};

struct Aggregates {
  Matrix H;
  Vector g;
  double c = 0.0;
};

// Incrementally maintained cubic-regularized quadratic model of the full sum:
//   m(d) = c + d^T g + (1/2) d^T H d + (sigma/3) ||d||^3, d from the iterate x,
// with H = sum_j omega_j H^j, g = sum_j omega_j (g^j - v^j) + H x and
// c = g^T x - (1/2) x^T H x + sum_j omega_j (f^j - u^j + w^j/2).
// Components are weighted by batch size, omega_j = |B_j|/n, so the model of a
// ragged partition still matches the mean over examples; with equal batches
// omega_j = 1/n_batches.
class ModelStore {
 public:
  ModelStore(const FiniteSumObjective& obj, const Vector& x0,
             std::vector<IndexList> batches);

  int num_components() const { return static_cast<int>(comps_.size()); }
  const std::vector<IndexList>& batches() const { return batches_; }
  const ComponentModel& component(int j) const { return comps_.at(j); }

  const Vector& x() const { return x_; }
  const Matrix& H() const { return H_; }
  const Vector& g() const { return g_; }
  double c() const { return c_; }

  double model_value(const Vector& d, double sigma) const;

  // Moves the model's expansion point (after an accepted step); g and c are
  // recomputed from the maintained sums, H is unchanged.
  void set_iterate(const Vector& x_new);

  // Re-evaluates component j at the current iterate and applies the
  // incremental aggregate updates.
  void refresh_component(int j, const FiniteSumObjective& obj);

  // Direct recomputation of (H, g, c) from the stored per-component models
  // and anchors; the oracle for the incremental bookkeeping.
  Aggregates rebuild_aggregates() const;

 private:
  void recompute_gc();

  std::vector<IndexList> batches_;
  std::vector<double> weights_;
  std::vector<ComponentModel> comps_;
  Vector x_;
  Matrix H_;
  Vector g_;
  double c_ = 0.0;
  Vector sum_gv_;        // sum_j omega_j (g^j - v^j)
  double sum_fuw_ = 0.0; // sum_j omega_j (f^j - u^j + w^j/2)
};

// Convenience: partition 0..n-1 contiguously by batch_frac and build a store.
ModelStore init_model_store(const FiniteSumObjective& obj, const Vector& x0,
                            double batch_frac);

}  // namespace singcubic
