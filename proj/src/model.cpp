#include "aclbf/model.hpp"

#include <cmath>
#include <stdexcept>

namespace aclbf {

void ModelParams::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("model: eps must be positive");
  if (!(eps1 > 0.0)) throw std::invalid_argument("model: eps1 must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("model: sigma must be positive");
  if (!(h > 0.0)) throw std::invalid_argument("model: h must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("model: dt must be positive");
  if (mu < 0.0) throw std::invalid_argument("model: mu must be non-negative");
  if (lambda1 < 0.0 || lambda2 < 0.0)
    throw std::invalid_argument("model: lambda1/lambda2 must be non-negative");
}

double heaviside(double x, double eps1) { return 0.5 * (1.0 + (2.0 / M_PI) * std::atan(x / eps1)); }

double delta(double x, double eps1) { return (1.0 / M_PI) * eps1 / (eps1 * eps1 + x * x); }

double double_well(double u) {
  const double s = std::sin(M_PI_2 * (u + 1.0));
  return s * s;
}

double double_well_deriv(double u) { return M_PI_2 * std::sin(M_PI * (u + 1.0)); }

double double_well_deriv2(double u) { return 0.5 * M_PI * M_PI * std::cos(M_PI * (u + 1.0)); }

std::pair<Field, Field> fit_functions(const GrayImage& img, const PhaseField& u,
                                      const GaussianKernel& kernel, double eps1, int* guarded) {
  if (!img.same_shape(u)) throw std::invalid_argument("fit_functions: grid mismatch");
  const int n = img.size();
  Field hu(img.m1, img.m2), hu_i(img.m1, img.m2), gu(img.m1, img.m2), gu_i(img.m1, img.m2);
  for (int k = 0; k < n; ++k) {
    const double H = heaviside(u.v[k], eps1);
    hu.v[k] = H;
    hu_i.v[k] = H * img.v[k];
    gu.v[k] = 1.0 - H;
    gu_i.v[k] = (1.0 - H) * img.v[k];
  }
  const Field num1 = convolve(hu_i, kernel);
  const Field den1 = convolve(hu, kernel);
  const Field num2 = convolve(gu_i, kernel);
  const Field den2 = convolve(gu, kernel);

  constexpr double tau = 1e-12;  // underflow guard; H keeps denominators positive in theory
  int floored = 0;
  Field f1(img.m1, img.m2), f2(img.m1, img.m2);
  for (int k = 0; k < n; ++k) {
    double d1 = den1.v[k];
    double d2 = den2.v[k];
    if (d1 < tau) {
      d1 = tau;
      ++floored;
    }
    if (d2 < tau) {
      d2 = tau;
      ++floored;
    }
    f1.v[k] = num1.v[k] / d1;
    f2.v[k] = num2.v[k] / d2;
  }
  if (guarded) *guarded = floored;
  return {f1, f2};
}

std::pair<Field, Field> force_fields(const GrayImage& img, const Field& f1, const Field& f2,
                                     const GaussianKernel& kernel, const Field& mass) {
  if (!img.same_shape(f1) || !img.same_shape(f2) || !img.same_shape(mass))
    throw std::invalid_argument("force_fields: grid mismatch");
  const int n = img.size();
  auto expand = [&](const Field& f) {
    Field fsq(f.m1, f.m2);
    for (int k = 0; k < n; ++k) fsq.v[k] = f.v[k] * f.v[k];
    const Field conv_fsq = convolve(fsq, kernel);
    const Field conv_f = convolve(f, kernel);
    Field e(f.m1, f.m2);
    for (int k = 0; k < n; ++k) {
      const double I = img.v[k];
      double val = conv_fsq.v[k] - 2.0 * I * conv_f.v[k] + I * I * mass.v[k];
      e.v[k] = val < 0.0 ? 0.0 : val;
    }
    return e;
  };
  return {expand(f1), expand(f2)};
}

Field nonlinear_term(const PhaseField& u, const Field& e1, const Field& e2, double stabilizer,
                     const ModelParams& p) {
  Field out(u.m1, u.m2);
  for (int k = 0; k < u.size(); ++k) {
    const double uk = u.v[k];
    out.v[k] = stabilizer * uk - double_well_deriv(uk) / p.eps -
               p.mu * delta(uk, p.eps1) * (p.lambda1 * e1.v[k] - p.lambda2 * e2.v[k]);
  }
  return out;
}

double discrete_energy(const PhaseField& u, const Field& e1, const Field& e2,
                       const ModelParams& p) {
  double well = 0.0, fit = 0.0;
  for (int k = 0; k < u.size(); ++k) {
    const double uk = u.v[k];
    well += double_well(uk);
    const double H = heaviside(uk, p.eps1);
    fit += p.lambda1 * H * e1.v[k] + p.lambda2 * (1.0 - H) * e2.v[k];
  }
  // -(eps/2) u^T D_h u = (eps / (2 h^2)) * sum of squared forward differences
  double grad = 0.0;
  for (int j = 0; j < u.m2; ++j)
    for (int i = 0; i + 1 < u.m1; ++i) {
      const double d = u(i + 1, j) - u(i, j);
      grad += d * d;
    }
  for (int j = 0; j + 1 < u.m2; ++j)
    for (int i = 0; i < u.m1; ++i) {
      const double d = u(i, j + 1) - u(i, j);
      grad += d * d;
    }
  return well / p.eps + p.mu * fit + 0.5 * p.eps * grad / (p.h * p.h);
}

}  // namespace aclbf
