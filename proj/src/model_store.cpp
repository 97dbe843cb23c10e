#include "singcubic/model_store.hpp"

#include <stdexcept>

#include "singcubic/dataset.hpp"

namespace singcubic {

ModelStore::ModelStore(const FiniteSumObjective& obj, const Vector& x0,
                       std::vector<IndexList> batches)
    : batches_(std::move(batches)), x_(x0) {
  const int p = obj.dimension();
  const int n = obj.num_components();
  if (batches_.empty()) throw std::invalid_argument("model store: no batches");
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& b : batches_) {
    if (b.empty()) throw std::invalid_argument("model store: empty batch");
    if (static_cast<int>(b.size()) > n) {
      throw std::invalid_argument("model store: batch larger than n");
    }
    for (int i : b) {
      if (i < 0 || i >= n || seen[i]) {
        throw std::invalid_argument(
            "model store: batches must partition 0..n-1");
      }
      seen[i] = 1;
    }
    covered += b.size();
  }
  if (covered != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("model store: batches must partition 0..n-1");
  }

  comps_.resize(batches_.size());
  weights_.resize(batches_.size());
  H_ = Matrix::Zero(p, p);
  sum_gv_ = Vector::Zero(p);
  sum_fuw_ = 0.0;
  for (std::size_t j = 0; j < batches_.size(); ++j) {
    ComponentModel& cm = comps_[j];
    cm.anchor = x0;
    cm.f = obj.value_gradient_hessian(batches_[j], x0, cm.g, cm.H);
    cm.u = cm.g.dot(x0);
    cm.v = cm.H * x0;
    cm.w = x0.dot(cm.v);
    weights_[j] = static_cast<double>(batches_[j].size()) / n;
    H_ += weights_[j] * cm.H;
    sum_gv_ += weights_[j] * (cm.g - cm.v);
    sum_fuw_ += weights_[j] * (cm.f - cm.u + 0.5 * cm.w);
  }
  recompute_gc();
}

void ModelStore::recompute_gc() {
  g_ = sum_gv_ + H_ * x_;
  c_ = g_.dot(x_) - 0.5 * x_.dot(H_ * x_) + sum_fuw_;
}

double ModelStore::model_value(const Vector& d, double sigma) const {
  const double dn = d.norm();
  return c_ + d.dot(g_) + 0.5 * d.dot(H_ * d) + (sigma / 3.0) * dn * dn * dn;
}

void ModelStore::set_iterate(const Vector& x_new) {
  x_ = x_new;
  recompute_gc();
}

void ModelStore::refresh_component(int j, const FiniteSumObjective& obj) {
  ComponentModel& cm = comps_.at(j);
  const double omega = weights_.at(j);
  sum_gv_ -= omega * (cm.g - cm.v);
  sum_fuw_ -= omega * (cm.f - cm.u + 0.5 * cm.w);

  ComponentModel fresh;
  fresh.anchor = x_;
  fresh.f = obj.value_gradient_hessian(batches_[j], x_, fresh.g, fresh.H);
  fresh.u = fresh.g.dot(x_);
  fresh.v = fresh.H * x_;
  fresh.w = x_.dot(fresh.v);

  H_ += omega * (fresh.H - cm.H);
  cm = std::move(fresh);
  sum_gv_ += omega * (cm.g - cm.v);
  sum_fuw_ += omega * (cm.f - cm.u + 0.5 * cm.w);
  recompute_gc();
}

Aggregates ModelStore::rebuild_aggregates() const {
  const int p = static_cast<int>(x_.size());
  Aggregates agg;
  agg.H = Matrix::Zero(p, p);
  Vector gv = Vector::Zero(p);
  double fuw = 0.0;
  for (std::size_t j = 0; j < comps_.size(); ++j) {
    const ComponentModel& cm = comps_[j];
    const double omega = weights_[j];
    agg.H += omega * cm.H;
    gv += omega * (cm.g - cm.H * cm.anchor);
    fuw += omega * (cm.f - cm.g.dot(cm.anchor) +
                    0.5 * cm.anchor.dot(cm.H * cm.anchor));
  }
  agg.g = gv + agg.H * x_;
  agg.c = agg.g.dot(x_) - 0.5 * x_.dot(agg.H * x_) + fuw;
  return agg;
}

ModelStore init_model_store(const FiniteSumObjective& obj, const Vector& x0,
                            double batch_frac) {
  return ModelStore(obj, x0, make_batches(obj.num_components(), batch_frac));
}

}  // namespace singcubic
