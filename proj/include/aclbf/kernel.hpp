#pragma once

#include <vector>

#include "aclbf/field.hpp"

namespace aclbf {

// Truncated Gaussian K_sigma(x) = exp(-|x|^2/(2 sigma^2)) / (2 pi sigma^2)
// sampled at integer offsets inside a (2r+1)x(2r+1) window, r = ceil(4 sigma).
// The truncated window is deliberately not renormalized: the fitting
// quotients and the K*1 mass term carry the same attenuation, so it cancels.
// At sigma = 3 the truncated discrete mass is 0.99994318 (deficit 5.7e-5).
struct GaussianKernel {
  double sigma = 0.0;
  int radius = 0;
  std::vector<double> g;  // 1-D separable factor, g[radius + t], |t| <= radius

  double factor(int t) const { return g[static_cast<std::size_t>(radius + t)]; }
  // 2-D weight as the separable product; symmetric under both axis flips.
  double weight(int di, int dj) const { return factor(di) * factor(dj); }
};

// Throws std::invalid_argument for sigma <= 0.
GaussianKernel build_kernel(double sigma);

// Zero-padded discrete convolution, separable row/column passes; output has
// the input's dimensions and is linear in the field.
Field convolve(const Field& f, const GaussianKernel& k);

// K * 1_Omega: the convolution of the all-ones field. Strictly positive;
// equals the full truncated kernel sum at pixels at least r from every edge.
Field kernel_mass(const GaussianKernel& k, int m1, int m2);

}  // namespace aclbf
