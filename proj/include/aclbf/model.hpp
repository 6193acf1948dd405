#pragma once

#include <utility>

#include "aclbf/field.hpp"
#include "aclbf/kernel.hpp"

namespace aclbf {

// All model and scheme parameters for the variational segmentation energy.
struct ModelParams {
  double eps = 0.5;      // diffuse-interface width
  double eps1 = 0.5;     // Heaviside smoothing width
  double mu = 80.0;      // fitting strength
  double lambda1 = 1.0;  // inner-region fitting weight
  double lambda2 = 1.0;  // outer-region fitting weight
  double sigma = 3.0;    // Gaussian kernel stddev (pixels)
  double h = 0.01;       // pixel spacing
  double dt = 0.1;       // time step
  void validate() const;
};

// Smooth Heaviside H(x) = (1 + (2/pi) atan(x/eps1)) / 2, strictly increasing
// with range (0,1), and its derivative delta(x) = eps1 / (pi (eps1^2 + x^2)).
double heaviside(double x, double eps1);
double delta(double x, double eps1);

// Double-well potential W(u) = sin^2(pi (u+1) / 2) with wells at odd integers,
// and its first two derivatives.
double double_well(double u);
double double_well_deriv(double u);   // (pi/2) sin(pi (u+1))
double double_well_deriv2(double u);  // (pi^2/2) cos(pi (u+1))

// Local intensity fits
//   f1 = K*(H(u) I) / K*H(u),   f2 = K*((1-H(u)) I) / K*(1-H(u)),
// with denominators floored at 1e-12 against underflow; `guarded` (when
// given) receives the number of floored pixels.
std::pair<Field, Field> fit_functions(const GrayImage& img, const PhaseField& u,
                                      const GaussianKernel& kernel, double eps1,
                                      int* guarded = nullptr);

// Fitting force fields
//   e_k(x) = (K*f_k^2)(x) - 2 I(x) (K*f_k)(x) + I(x)^2 (K*1)(x),
// the expanded form of the kernel-weighted squared misfit; clamped at zero
// from below (round-off can leave values around -1e-15). `mass` is the
// precomputed K*1 field.
std::pair<Field, Field> force_fields(const GrayImage& img, const Field& f1, const Field& f2,
                                     const GaussianKernel& kernel, const Field& mass);

// Stabilized nonlinearity of the evolution equation:
//   N(u) = S u - W'(u)/eps - mu delta(u) (lambda1 e1 - lambda2 e2).
Field nonlinear_term(const PhaseField& u, const Field& e1, const Field& e2, double stabilizer,
                     const ModelParams& p);

// Discrete energy
//   E = sum W(u)/eps + mu sum [lambda1 H(u) e1 + lambda2 (1-H(u)) e2]
//       - (eps/2) u^T D_h u,
// with D_h the Neumann Laplacian; its quadratic form is evaluated as the
// (positive) sum of squared forward differences over 1/h^2.
double discrete_energy(const PhaseField& u, const Field& e1, const Field& e2,
                       const ModelParams& p);

}  // namespace aclbf
