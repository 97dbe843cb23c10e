#include "singcubic/cubic_subproblem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace singcubic {

namespace {

// Machine-epsilon-derived constant from the solver's input block.
const double kEpsChol = 2.0 * std::sqrt(2.22e-16);
// Bracket endpoints this close (relative) are treated as collapsed.
const double kCollapseTol = 8.0 * 2.22e-16;

// Factors A + lam*I = L L^T, failing when a pivot drops to the floor
// kEpsChol^2 * trace(A + lam*I). A failed factorization classifies lam into
// the N set of the secular iteration.
bool cholesky_shifted(const Matrix& A, double lam, Matrix& L) {
  const int p = static_cast<int>(A.rows());
  const double trace = A.trace() + static_cast<double>(p) * lam;
  const double pivot_floor = kEpsChol * kEpsChol * std::max(trace, 0.0);
  L = A;
  L.diagonal().array() += lam;
  for (int j = 0; j < p; ++j) {
    const double pivot = L(j, j) - L.row(j).head(j).squaredNorm();
    if (!(pivot > pivot_floor)) return false;
    const double ljj = std::sqrt(pivot);
    L(j, j) = ljj;
    const int below = p - j - 1;
    if (below > 0) {
      L.col(j).tail(below) =
          (L.col(j).tail(below) -
           L.bottomLeftCorner(below, j) * L.row(j).head(j).transpose()) /
          ljj;
    }
  }
  return true;
}

double interpolate_bracket(double lam_lo, double lam_hi) {
  return std::max(std::sqrt(lam_lo * lam_hi),
                  lam_lo + 0.01 * (lam_hi - lam_lo));
}

bool bracket_collapsed(double lam_lo, double lam_hi) {
  return (lam_hi - lam_lo) <= kCollapseTol * std::max(1.0, lam_hi);
}

// Larger root of x^2 + b x - c = 0 with c >= 0, computed without
// cancellation for large positive b.
double larger_root(double b, double c) {
  const double disc = std::sqrt(b * b + 4.0 * c);
  if (b > 0) return (2.0 * c) / (b + disc);
  return 0.5 * (-b + disc);
}

Vector canonical_min_eigvec(const Eigen::SelfAdjointEigenSolver<Matrix>& eig) {
  Vector u = eig.eigenvectors().col(0);  // eigenvalues ascend
  for (int i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > 1e-14) {
      if (u[i] < 0) u = -u;
      break;
    }
  }
  return u;
}

}  // namespace

const char* to_string(SubproblemStatus s) {
  switch (s) {
    case SubproblemStatus::kSecularConverged:
      return "SECULAR_CONVERGED";
    case SubproblemStatus::kHardCase:
      return "HARD_CASE";
    case SubproblemStatus::kInteriorZero:
      return "INTERIOR_ZERO";
    case SubproblemStatus::kMaxIters:
      return "MAX_ITERS";
  }
  return "UNKNOWN";
}

std::pair<double, double> gershgorin_bounds(const Matrix& H) {
  const int p = static_cast<int>(H.rows());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < p; ++i) {
    const double radius = H.row(i).cwiseAbs().sum() - std::abs(H(i, i));
    lo = std::min(lo, H(i, i) - radius);
    hi = std::max(hi, H(i, i) + radius);
  }
  return {lo, hi};
}

std::pair<double, double> lambda_interval(const Vector& g, const Matrix& H,
                                          double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("lambda_interval: sigma <= 0");
  const auto [g_l, g_u] = gershgorin_bounds(H);
  const double gs = g.norm() * sigma;
  const double lambda_1 = larger_root(g_l, gs);
  const double lambda_2 = larger_root(g_u, gs);
  const double lam_lo = std::max({0.0, -H.diagonal().minCoeff(), lambda_2});
  const double lam_hi = std::max(0.0, lambda_1);
  return {lam_lo, lam_hi};
}

double secular_phi(double lambda, double d_norm, double sigma) {
  if (!(d_norm > 0)) {
    throw std::invalid_argument("secular_phi: d_norm must be > 0");
  }
  // lambda == 0 yields -inf, which routes callers onto the lambda-raising path.
  return 1.0 / d_norm - sigma / lambda;
}

std::optional<double> secular_update(double lambda, double d_norm,
                                     double w_norm, double sigma) {
  if (!(d_norm > 0) || !(w_norm > 0)) {
    throw std::invalid_argument("secular_update: norms must be > 0");
  }
  const double a = (w_norm * w_norm) / (d_norm * d_norm * d_norm);
  const double b = 1.0 / d_norm + a * lambda;
  const double c = lambda / d_norm - sigma;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0 || !std::isfinite(disc)) return std::nullopt;
  const double q = -0.5 * (b + std::sqrt(disc));  // b > 0 here
  const double c_hi = std::max(q / a, c / q);
  return lambda + c_hi;
}

Vector hard_case_correction(const Vector& d, const Vector& u_p, double lambda,
                            double sigma) {
  const double ud = u_p.dot(d);
  const double disc = ud * ud - (d.squaredNorm() - (lambda / sigma) * (lambda / sigma));
  if (disc < 0) {
    throw std::logic_error(
        "hard_case_correction: ||d|| exceeds lambda/sigma, no real root");
  }
  const double alpha = -ud - std::sqrt(disc);  // smaller root
  return d + alpha * u_p;
}

double cubic_model_value(const Vector& g, const Matrix& H, double sigma,
                         const Vector& d) {
  const double dn = d.norm();
  return d.dot(g) + 0.5 * d.dot(H * d) + (sigma / 3.0) * dn * dn * dn;
}

double quadratic_model_value(const Vector& g, const Matrix& H,
                             const Vector& d) {
  return d.dot(g) + 0.5 * d.dot(H * d);
}

TrustRegionStep solve_trust_region(const Vector& g, const Matrix& H,
                                   double delta) {
  const int p = static_cast<int>(g.size());
  if (!(delta > 0)) throw std::invalid_argument("trust region: delta <= 0");
  Matrix L(p, p);

  // Interior Newton step when H is positive definite and the step fits.
  if (cholesky_shifted(H, 0.0, L)) {
    Vector d = L.triangularView<Eigen::Lower>().solve(-g);
    L.triangularView<Eigen::Lower>().transpose().solveInPlace(d);
    if (d.norm() <= delta) return {d, 0.0, false};
  }

  const auto [g_l, g_u] = gershgorin_bounds(H);
  const double gn = g.norm();
  double lam_lo = std::max({0.0, -H.diagonal().minCoeff(), gn / delta - g_u});
  double lam_hi = std::max(lam_lo, gn / delta - g_l);

  auto finish_hard = [&](const Vector& d_last, double lam) -> TrustRegionStep {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
    const Vector u_p = canonical_min_eigvec(eig);
    const double ud = u_p.dot(d_last);
    const double disc = ud * ud - (d_last.squaredNorm() - delta * delta);
    if (disc < 0) return {d_last, lam, true};
    const double alpha = -ud - std::sqrt(disc);
    return {d_last + alpha * u_p, lam, true};
  };

  Vector d_last = Vector::Zero(p);
  double lam = lam_hi > lam_lo ? interpolate_bracket(lam_lo, lam_hi) : lam_lo;
  for (int iter = 0; iter < 200; ++iter) {
    if (cholesky_shifted(H, lam, L)) {
      Vector d = L.triangularView<Eigen::Lower>().solve(-g);
      L.triangularView<Eigen::Lower>().transpose().solveInPlace(d);
      const double dn = d.norm();
      d_last = d;
      if (std::abs(dn - delta) <= 1e-9 * delta) return {d, lam, true};
      if (dn > delta) {
        lam_lo = std::max(lam_lo, lam);
      } else {
        lam_hi = std::min(lam_hi, lam);
      }
      if (bracket_collapsed(lam_lo, lam_hi)) {
        // boundary multiplier located but the solve stays short of the
        // radius: complete along the bottom eigenvector
        return finish_hard(d, lam_lo);
      }
      const Vector w = L.triangularView<Eigen::Lower>().solve(d);
      const double wn = w.norm();
      double lam_next = lam + (dn / wn) * (dn / wn) * ((dn - delta) / delta);
      if (!(lam_next > lam_lo) || !(lam_next < lam_hi)) {
        lam_next = interpolate_bracket(lam_lo, lam_hi);
      }
      lam = lam_next;
    } else {
      lam_lo = std::max(lam_lo, lam);
      if (bracket_collapsed(lam_lo, lam_hi)) return finish_hard(d_last, lam_lo);
      lam = interpolate_bracket(lam_lo, lam_hi);
    }
  }
  return finish_hard(d_last, lam_lo);
}

namespace {

SubproblemResult finish_collapsed(const SubproblemInput& in, double lam,
                                  const Vector& d_last, bool zero_g,
                                  int iters) {
  SubproblemResult res;
  res.iters = iters;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(in.H);
  const double min_eig = eig.eigenvalues()[0];
  const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (min_eig >= -1e-12 * std::max(1.0, scale)) {
    if (zero_g) {
      res.d = Vector::Zero(in.g.size());
      res.lambda = 0.0;
      res.status = SubproblemStatus::kInteriorZero;
      return res;
    }
    // Collapsed onto a positive-semidefinite multiplier with g != 0: report
    // the last factorized step; the caller's residual check decides usability.
    res.d = d_last;
    res.lambda = lam;
    const double dn = d_last.norm();
    res.status = (dn > 0 && std::abs(secular_phi(lam, dn, in.sigma)) <= in.eps_tol)
                     ? SubproblemStatus::kSecularConverged
                     : SubproblemStatus::kMaxIters;
    return res;
  }
  const Vector u_p = canonical_min_eigvec(eig);
  const double ud = u_p.dot(d_last);
  const double radius = lam / in.sigma;
  const double disc = ud * ud - (d_last.squaredNorm() - radius * radius);
  if (disc < 0) {
    res.d = d_last;
    res.lambda = lam;
    res.status = SubproblemStatus::kMaxIters;
    return res;
  }
  res.d = hard_case_correction(d_last, u_p, lam, in.sigma);
  res.lambda = lam;
  res.status = SubproblemStatus::kHardCase;
  return res;
}

}  // namespace

SubproblemResult solve_cubic(const SubproblemInput& in, Rng& rng) {
  const int p = static_cast<int>(in.g.size());
  if (in.H.rows() != p || in.H.cols() != p) {
    throw std::invalid_argument("solve_cubic: H must be p x p");
  }
  if (!(in.sigma > 0)) throw std::invalid_argument("solve_cubic: sigma <= 0");
  if (in.lambda_warm < 0) {
    throw std::invalid_argument("solve_cubic: lambda_warm < 0");
  }

  auto [lam_lo, lam_hi] = lambda_interval(in.g, in.H, in.sigma);
  const bool zero_g = in.g.isZero(0.0);

  double lam;
  if (lam_lo <= in.lambda_warm && in.lambda_warm <= lam_hi) {
    lam = in.lambda_warm;
  } else if (lam_hi > lam_lo) {
    lam = std::uniform_real_distribution<double>(lam_lo, lam_hi)(rng);
  } else {
    lam = lam_lo;
  }

  Vector d_last = Vector::Zero(p);
  Matrix L(p, p);
  SubproblemResult res;
  res.d = d_last;
  res.lambda = lam;

  for (int iter = 1; iter <= in.max_iters; ++iter) {
    res.iters = iter;
    bool in_n = false;
    // For the zero-gradient route the interpolation alone cannot find the
    // boundary of positive definiteness, so classify lam by factorizing.
    bool pd_known = false;
    bool pd_ok = false;

    if ((lam_lo == 0.0 && lam_hi == 0.0) || zero_g) {
      in_n = true;
      if (!(lam_lo == 0.0 && lam_hi == 0.0)) {
        pd_known = true;
        pd_ok = cholesky_shifted(in.H, lam, L);
      }
    } else if (!cholesky_shifted(in.H, lam, L)) {
      in_n = true;
    } else {
      Vector d = L.triangularView<Eigen::Lower>().solve(-in.g);
      L.triangularView<Eigen::Lower>().transpose().solveInPlace(d);
      const double dn = d.stableNorm();
      if (!(dn > 0)) {
        // extreme sigma/lambda regimes can underflow the step entirely
        lam_lo = std::max(lam_lo, lam);
        lam = interpolate_bracket(lam_lo, lam_hi);
        if (bracket_collapsed(lam_lo, lam_hi)) {
          return finish_collapsed(in, lam_lo, d_last, zero_g, iter);
        }
        continue;
      }
      d_last = d;
      res.d = d;
      res.lambda = lam;

      const double phi = secular_phi(lam, dn, in.sigma);
      if (std::abs(phi) <= in.eps_tol &&
          cubic_model_value(in.g, in.H, in.sigma, d) <= 0.0) {
        res.status = SubproblemStatus::kSecularConverged;
        return res;
      }

      const Vector w = L.triangularView<Eigen::Lower>().solve(d);
      const double wn = w.stableNorm();
      if (!(wn > 0)) {
        lam_lo = std::max(lam_lo, lam);
        lam = interpolate_bracket(lam_lo, lam_hi);
        if (bracket_collapsed(lam_lo, lam_hi)) {
          return finish_collapsed(in, lam_lo, d_last, zero_g, iter);
        }
        continue;
      }

      if (phi < 0) {
        // lam in L: raise it. The update is kept inside the bracket.
        lam_lo = lam;
        const auto lam_plus = secular_update(lam, dn, wn, in.sigma);
        if (!lam_plus) {
          in_n = true;
        } else {
          lam = std::min(*lam_plus, lam_hi);
          if (bracket_collapsed(lam_lo, lam_hi)) {
            return finish_collapsed(in, lam_lo, d_last, zero_g, iter);
          }
        }
      } else {
        // lam in G: lower it, re-bracketing if the step leaves the PD region.
        lam_hi = lam;
        const auto lam_plus = secular_update(lam, dn, wn, in.sigma);
        bool moved = false;
        if (lam_plus && *lam_plus > 0.0) {
          Matrix L_probe(p, p);
          if (cholesky_shifted(in.H, *lam_plus, L_probe)) {
            lam = *lam_plus;
            moved = true;
          }
        }
        if (!moved) {
          if (lam_plus) lam_lo = std::max(lam_lo, *lam_plus);
          lam = interpolate_bracket(lam_lo, lam_hi);
          if (bracket_collapsed(lam_lo, lam_hi)) {
            return finish_collapsed(in, lam_lo, d_last, zero_g, iter);
          }
        }
      }
    }

    if (in_n) {
      if (pd_known && pd_ok) {
        lam_hi = std::min(lam_hi, lam);
      } else {
        lam_lo = std::max(lam_lo, lam);
      }
      lam = interpolate_bracket(lam_lo, lam_hi);
      if (bracket_collapsed(lam_lo, lam_hi)) {
        return finish_collapsed(in, lam_lo, d_last, zero_g, iter);
      }
    }
  }

  res.status = SubproblemStatus::kMaxIters;
  return res;
}

}  // namespace singcubic
