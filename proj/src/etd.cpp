#include "aclbf/etd.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace aclbf {

Field laplacian_eigenvalues(int m1, int m2, double h) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("laplacian_eigenvalues: grid too small");
  if (!(h > 0.0)) throw std::invalid_argument("laplacian_eigenvalues: h must be positive");
  Field d(m1, m2);
  const double inv_h2 = 1.0 / (h * h);
  for (int j = 0; j < m2; ++j) {
    const double lj = 2.0 * std::cos(j * M_PI / m2) - 2.0;
    for (int i = 0; i < m1; ++i) {
      const double li = 2.0 * std::cos(i * M_PI / m1) - 2.0;
      d(i, j) = (li + lj) * inv_h2;
    }
  }
  return d;
}

struct CosineTransform::Impl {
  double* buf_in = nullptr;
  double* buf_out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  std::vector<double> sf1, sf2;  // forward per-mode scales (orthonormal)
  std::vector<double> si1, si2;  // inverse input scales
};

CosineTransform::CosineTransform(int m1, int m2) : impl_(new Impl), m1_(m1), m2_(m2) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("CosineTransform: grid too small");
  const std::size_t n = static_cast<std::size_t>(m1) * m2;
  impl_->buf_in = fftw_alloc_real(n);
  impl_->buf_out = fftw_alloc_real(n);
  // column-major field with i fastest == FFTW row-major array of shape (m2, m1)
  impl_->fwd = fftw_plan_r2r_2d(m2, m1, impl_->buf_in, impl_->buf_out, FFTW_REDFT10,
                                FFTW_REDFT10, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_r2r_2d(m2, m1, impl_->buf_in, impl_->buf_out, FFTW_REDFT01,
                                FFTW_REDFT01, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->inv) throw std::runtime_error("CosineTransform: planning failed");

  // FFTW's REDFT10 carries a factor 2 per dimension and no normalization;
  // REDFT01 expects the DC input unhalved. These scales make the pair an
  // orthonormal DCT-II / DCT-III.
  auto fill = [](int m, std::vector<double>& sf, std::vector<double>& si) {
    sf.resize(m);
    si.resize(m);
    for (int k = 0; k < m; ++k) {
      const double s = k == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
      sf[k] = 0.5 * s;
      si[k] = k == 0 ? s : 0.5 * s;
    }
  };
  fill(m1, impl_->sf1, impl_->si1);
  fill(m2, impl_->sf2, impl_->si2);
}

CosineTransform::~CosineTransform() {
  if (impl_) {
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->inv) fftw_destroy_plan(impl_->inv);
    if (impl_->buf_in) fftw_free(impl_->buf_in);
    if (impl_->buf_out) fftw_free(impl_->buf_out);
  }
}

Field CosineTransform::forward(const Field& f) const {
  if (f.m1 != m1_ || f.m2 != m2_) throw std::invalid_argument("CosineTransform: shape mismatch");
  const std::size_t n = f.v.size();
  for (std::size_t k = 0; k < n; ++k) impl_->buf_in[k] = f.v[k];
  fftw_execute(impl_->fwd);
  Field out(m1_, m2_);
  for (int j = 0; j < m2_; ++j) {
    const double sj = impl_->sf2[j];
    for (int i = 0; i < m1_; ++i)
      out(i, j) = impl_->buf_out[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1_) * j] *
                  impl_->sf1[i] * sj;
  }
  return out;
}

Field CosineTransform::inverse(const Field& coeffs) const {
  if (coeffs.m1 != m1_ || coeffs.m2 != m2_)
    throw std::invalid_argument("CosineTransform: shape mismatch");
  for (int j = 0; j < m2_; ++j) {
    const double sj = impl_->si2[j];
    for (int i = 0; i < m1_; ++i)
      impl_->buf_in[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1_) * j] =
          coeffs(i, j) * impl_->si1[i] * sj;
  }
  fftw_execute(impl_->inv);
  Field out(m1_, m2_);
  for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] = impl_->buf_out[k];
  return out;
}

PhiFactors phi_factors(double z) {
  if (!(z > 0.0)) throw std::invalid_argument("phi_factors: z must be positive");
  PhiFactors r{};
  r.exp_mz = std::exp(-z);
  if (z < 1e-4) {
    // 6-term Taylor series; truncation below 1e-26 at the switch point
    r.phi0 = 1.0 + z * (-1.0 / 2 + z * (1.0 / 6 + z * (-1.0 / 24 + z * (1.0 / 120 - z / 720))));
    r.phi1 =
        0.5 + z * (-1.0 / 6 + z * (1.0 / 24 + z * (-1.0 / 120 + z * (1.0 / 720 - z / 5040))));
  } else {
    const double em1 = std::expm1(-z);  // e^{-z} - 1
    r.phi0 = -em1 / z;
    r.phi1 = (z + em1) / (z * z);
  }
  return r;
}

double compute_stabilizer(const Field& e1, const Field& e2, const ModelParams& p,
                          const StabilizerPolicy& policy) {
  double s = 0.0;
  switch (policy.mode) {
    case StabilizerMode::fixed:
      s = policy.value;
      break;
    case StabilizerMode::table:
      s = policy.value * p.mu * p.eps1;
      break;
    case StabilizerMode::automatic: {
      const double g1 = M_PI * M_PI / (2.0 * p.eps) + 1.0;
      double amax = 0.0;
      for (int k = 0; k < e1.size(); ++k)
        amax = std::max(amax, std::abs(p.lambda1 * e1.v[k] - p.lambda2 * e2.v[k]));
      const double g2 = 3.0 * std::sqrt(3.0) * p.mu / (8.0 * M_PI * p.eps1 * p.eps1) * amax;
      s = 0.5 * (g1 + g2) + 1.0;
      break;
    }
  }
  if (!(s > 0.0)) throw std::invalid_argument("stabilizer must be positive");
  return s;
}

SpectralOperator SpectralOperator::build(int m1, int m2, double h, double eps, double dt,
                                         double S) {
  if (!(S > 0.0)) throw std::invalid_argument("SpectralOperator: stabilizer must be positive");
  SpectralOperator op;
  op.m1 = m1;
  op.m2 = m2;
  op.h = h;
  op.eps = eps;
  op.dt = dt;
  op.stabilizer = S;
  op.eig = laplacian_eigenvalues(m1, m2, h);
  op.dct = std::make_shared<CosineTransform>(m1, m2);
  op.E = Field(m1, m2);
  op.P0 = Field(m1, m2);
  op.P1 = Field(m1, m2);
  for (int k = 0; k < op.eig.size(); ++k) {
    const double l = S - eps * op.eig.v[k];  // >= S > 0, no degenerate mode
    const PhiFactors f = phi_factors(l * dt);
    op.E.v[k] = f.exp_mz;
    op.P0.v[k] = dt * f.phi0;
    op.P1.v[k] = dt * f.phi1;
    if (!std::isfinite(op.E.v[k]) || !std::isfinite(op.P0.v[k]) || !std::isfinite(op.P1.v[k]))
      throw std::runtime_error("SpectralOperator: non-finite mode factor");
  }
  return op;
}

SpectralOperator SpectralOperator::with_stabilizer(double S) const {
  if (S == stabilizer) return *this;
  SpectralOperator op = *this;  // shares dct plans
  op.stabilizer = S;
  for (int k = 0; k < eig.size(); ++k) {
    const double l = S - eps * eig.v[k];
    const PhiFactors f = phi_factors(l * dt);
    op.E.v[k] = f.exp_mz;
    op.P0.v[k] = dt * f.phi0;
    op.P1.v[k] = dt * f.phi1;
  }
  return op;
}

PhaseField etd1_step(const PhaseField& u, const Field& nonlin, const SpectralOperator& op) {
  const Field uh = op.dct->forward(u);
  const Field nh = op.dct->forward(nonlin);
  Field rh(op.m1, op.m2);
  for (int k = 0; k < rh.size(); ++k) rh.v[k] = op.E.v[k] * uh.v[k] + op.P0.v[k] * nh.v[k];
  return op.dct->inverse(rh);
}

PhaseField etdrk2_step(const PhaseField& u, const std::function<Field(const Field&)>& nonlin_of,
                       const SpectralOperator& op) {
  const Field uh = op.dct->forward(u);
  const Field n0 = nonlin_of(u);
  const Field nh = op.dct->forward(n0);
  Field rh(op.m1, op.m2);
  for (int k = 0; k < rh.size(); ++k) rh.v[k] = op.E.v[k] * uh.v[k] + op.P0.v[k] * nh.v[k];
  const PhaseField ut = op.dct->inverse(rh);  // predictor (= ETD1)

  const Field n1 = nonlin_of(ut);
  Field dh(op.m1, op.m2);
  for (int k = 0; k < dh.size(); ++k) dh.v[k] = n1.v[k] - n0.v[k];
  dh = op.dct->forward(dh);
  for (int k = 0; k < rh.size(); ++k) rh.v[k] += op.P1.v[k] * dh.v[k];
  return op.dct->inverse(rh);
}

}  // namespace aclbf
