#pragma once

#include <functional>
#include <memory>

#include "aclbf/field.hpp"
#include "aclbf/model.hpp"

namespace aclbf {

// Eigenvalues of the Neumann finite-difference Laplacian D_h in the cosine
// basis: d(i,j) = [(2 cos(i pi/M1) - 2) + (2 cos(j pi/M2) - 2)] / h^2 for
// mode indices i in [0,M1), j in [0,M2). d(0,0) = 0 and all d <= 0.
Field laplacian_eigenvalues(int m1, int m2, double h);

// Orthonormal 2-D type-II cosine transform and its type-III inverse on
// column-major fields. forward diagonalizes D_h: forward(D_h u) = d .* forward(u).
class CosineTransform {
 public:
  CosineTransform(int m1, int m2);
  ~CosineTransform();
  CosineTransform(const CosineTransform&) = delete;
  CosineTransform& operator=(const CosineTransform&) = delete;

  Field forward(const Field& f) const;
  Field inverse(const Field& coeffs) const;

  int m1() const { return m1_; }
  int m2() const { return m2_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int m1_, m2_;
};

// e^{-z}, phi0(z) = (1 - e^{-z})/z and phi1(z) = (z - 1 + e^{-z})/z^2 for
// z > 0. Below z = 1e-4 the phis switch to 6-term Taylor series; above, the
// cancellation-prone parts are evaluated through expm1. phi0, phi1 in (0,1),
// with phi0 -> 1 and phi1 -> 1/2 as z -> 0+.
struct PhiFactors {
  double exp_mz;
  double phi0;
  double phi1;
};
PhiFactors phi_factors(double z);

enum class StabilizerMode { automatic, table, fixed };

// automatic: S = G/2 + 1 with G = G1 + G2,
//   G1 = pi^2/(2 eps) + 1   (bound on |W''|/eps),
//   G2 = 3 sqrt(3) mu / (8 pi eps1^2) * max|lambda1 e1 - lambda2 e2|
//   (the exact maximum of |mu delta'(u)| over u, attained at u = eps1/sqrt(3)).
// table: S = value * mu * eps1.   fixed: S = value.
struct StabilizerPolicy {
  StabilizerMode mode = StabilizerMode::automatic;
  double value = 0.0;  // table multiplier or fixed stabilizer
};

double compute_stabilizer(const Field& e1, const Field& e2, const ModelParams& p,
                          const StabilizerPolicy& policy);

// Precomputed per-mode factors of the stabilized operator L = S - eps*D_h:
// with l(i,j) = S - eps*d(i,j) >= S > 0,
//   E = exp(-l dt), P0 = dt phi0(l dt), P1 = dt phi1(l dt).
// Immutable after construction; with_stabilizer derives a copy that shares
// the transform plans.
struct SpectralOperator {
  int m1 = 0, m2 = 0;
  double h = 0.0, eps = 0.0, dt = 0.0;
  double stabilizer = 0.0;
  Field eig;  // D_h eigenvalues
  Field E, P0, P1;
  std::shared_ptr<CosineTransform> dct;

  static SpectralOperator build(int m1, int m2, double h, double eps, double dt, double S);
  SpectralOperator with_stabilizer(double S) const;
};

// One first-order exponential step with the nonlinearity frozen at u^n:
//   u^{n+1} = idct( E .* dct(u) + P0 .* dct(N) ).
PhaseField etd1_step(const PhaseField& u, const Field& nonlin, const SpectralOperator& op);

// Second-order exponential Runge-Kutta step. `nonlin_of` evaluates the
// nonlinearity at a given field (force fields frozen for the whole step):
//   predictor  ut = idct( E .* dct(u) + P0 .* dct(N(u)) )
//   corrector  u' = idct( E .* dct(u) + P0 .* dct(N(u)) + P1 .* dct(N(ut) - N(u)) ).
PhaseField etdrk2_step(const PhaseField& u, const std::function<Field(const Field&)>& nonlin_of,
                       const SpectralOperator& op);

}  // namespace aclbf
