#include "aclbf/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace aclbf {

GaussianKernel build_kernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("build_kernel: sigma must be positive");
  GaussianKernel k;
  k.sigma = sigma;
  k.radius = static_cast<int>(std::ceil(4.0 * sigma));
  if (k.radius < 1) k.radius = 1;
  k.g.resize(2 * k.radius + 1);
  const double norm = 1.0 / std::sqrt(2.0 * M_PI * sigma * sigma);
  for (int t = -k.radius; t <= k.radius; ++t)
    k.g[static_cast<std::size_t>(k.radius + t)] =
        norm * std::exp(-(static_cast<double>(t) * t) / (2.0 * sigma * sigma));
  return k;
}

Field convolve(const Field& f, const GaussianKernel& k) {
  const int r = k.radius;
  Field tmp(f.m1, f.m2);
  // pass along rows (i direction), zero padded
  for (int j = 0; j < f.m2; ++j)
    for (int i = 0; i < f.m1; ++i) {
      const int lo = std::max(-r, -i);
      const int hi = std::min(r, f.m1 - 1 - i);
      double acc = 0.0;
      for (int t = lo; t <= hi; ++t) acc += k.factor(t) * f(i + t, j);
      tmp(i, j) = acc;
    }
  // pass along columns (j direction)
  Field out(f.m1, f.m2);
  for (int j = 0; j < f.m2; ++j) {
    const int lo = std::max(-r, -j);
    const int hi = std::min(r, f.m2 - 1 - j);
    for (int i = 0; i < f.m1; ++i) {
      double acc = 0.0;
      for (int t = lo; t <= hi; ++t) acc += k.factor(t) * tmp(i, j + t);
      out(i, j) = acc;
    }
  }
  return out;
}

Field kernel_mass(const GaussianKernel& k, int m1, int m2) {
  return convolve(Field(m1, m2, 1.0), k);
}

}  // namespace aclbf
