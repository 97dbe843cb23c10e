#pragma once

#include <optional>
#include <utility>

#include "singcubic/types.hpp"

namespace singcubic {

// Exact solver for the cubic-regularized quadratic step
//   min_d  d^T g + (1/2) d^T H d + (sigma/3) ||d||^3.
// A global minimizer d satisfies (H + lambda I) d = -g with lambda =
// sigma*||d|| and H + lambda I positive semidefinite; the solver finds that
// multiplier by a safeguarded secular iteration on Cholesky factorizations,
// switching to an eigenvector correction in the hard case.

struct SubproblemInput {
  Vector g;
  Matrix H;                  // symmetric
  double sigma = 1.0;        // > 0
  double lambda_warm = 0.0;  // multiplier warm start, >= 0
  double eps_tol = 0.1;      // secular tolerance on |phi(lambda)|
  int max_iters = 100;       // outer iteration cap
};

enum class SubproblemStatus {
  kSecularConverged,
  kHardCase,
  kInteriorZero,
  kMaxIters,
};

struct SubproblemResult {
  Vector d;
  double lambda = 0.0;
  int iters = 0;
  SubproblemStatus status = SubproblemStatus::kMaxIters;
};

const char* to_string(SubproblemStatus s);

// Gershgorin row bounds: every eigenvalue of symmetric H lies in [G_l, G_u].
std::pair<double, double> gershgorin_bounds(const Matrix& H);

// Multiplier bracket [lambda_lower, lambda_upper]:
//   lambda_1 = larger root of x^2 + G_l x - ||g|| sigma = 0,
//   lambda_2 = larger root of x^2 + G_u x - ||g|| sigma = 0,
//   lambda_lower = max(0, -min_i H_ii, lambda_2), lambda_upper = max(0, lambda_1).
std::pair<double, double> lambda_interval(const Vector& g, const Matrix& H,
                                          double sigma);

// Secular function phi(lambda) = 1/||d|| - sigma/lambda; zero exactly when
// sigma*||d|| = lambda. Callers must keep lambda > 0 and d_norm > 0.
double secular_phi(double lambda, double d_norm, double sigma);

// One secular step: lambda+ = lambda + c_hi with c_hi the larger root of
//   (||w||^2/||d||^3) x^2 + (1/||d|| + (||w||^2/||d||^3) lambda) x
//     + lambda/||d|| - sigma = 0,
// where w solves L w = d for the Cholesky factor of H + lambda I. Returns
// nullopt if the roots are not real (callers then re-bracket).
std::optional<double> secular_update(double lambda, double d_norm,
                                     double w_norm, double sigma);

// Boundary completion for the hard case: d' = d + alpha*u_p with alpha the
// smaller root of x^2 + 2 u_p^T d x + d^T d - lambda^2/sigma^2 = 0, so that
// ||d'|| = lambda/sigma. u_p must be unit; throws std::logic_error when the
// discriminant is negative (possible only if ||d|| > lambda/sigma).
Vector hard_case_correction(const Vector& d, const Vector& u_p, double lambda,
                            double sigma);

// Full solve. The rng drives the bracket re-sampling of the warm start when
// the previous multiplier falls outside the current bracket.
SubproblemResult solve_cubic(const SubproblemInput& in, Rng& rng);

// Model value d^T g + (1/2) d^T H d + (sigma/3)||d||^3 (constant term
// omitted); <= 0 for any result the solver reports as usable.
double cubic_model_value(const Vector& g, const Matrix& H, double sigma,
                         const Vector& d);

// Quadratic model value d^T g + (1/2) d^T H d.
double quadratic_model_value(const Vector& g, const Matrix& H,
                             const Vector& d);

struct TrustRegionStep {
  Vector d;
  double lambda = 0.0;
  bool on_boundary = false;
};

// More-Sorensen style solve of min d^T g + (1/2) d^T H d s.t. ||d|| <= delta
// on the same safeguarded Cholesky iteration, with the eigenvector completion
// in the hard case. The returned step satisfies ||d|| <= delta (1 + 1e-8).
TrustRegionStep solve_trust_region(const Vector& g, const Matrix& H,
                                   double delta);

}  // namespace singcubic
