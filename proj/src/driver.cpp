#include "aclbf/driver.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace aclbf {

void RunConfig::validate() const {
  model.validate();
  iglim.validate();
  if (max_iters < 1) throw std::invalid_argument("driver: max_iters must be at least 1");
  if (energy_slack < 0.0) throw std::invalid_argument("driver: energy_slack must be non-negative");
}

LabelMask binarize(const PhaseField& u) {
  LabelMask mask(u.m1, u.m2);
  for (int k = 0; k < u.size(); ++k) mask.v[k] = u.v[k] > 0.0 ? 1 : 0;
  return mask;
}

double dice(const LabelMask& a, const LabelMask& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("dice: dimension mismatch");
  long inter = 0, na = 0, nb = 0;
  for (int k = 0; k < a.size(); ++k) {
    na += a.v[k];
    nb += b.v[k];
    inter += a.v[k] & b.v[k];
  }
  if (na + nb == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(na + nb);
}

RunResult segment(const GrayImage& img, const RunConfig& cfg) {
  cfg.validate();
  if (img.m1 < 3 || img.m2 < 3) throw std::invalid_argument("segment: image smaller than 3x3");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  RunResult res;
  {
    IglimResult init = run_iglim(img, cfg.iglim);
    res.side = init.side;
    res.edges_positive = init.n_positive;
    res.edges_negative = init.n_negative;
    res.region_size = init.region_size;
    res.u = std::move(init.u0);
  }

  const ModelParams& mp = cfg.model;
  const GaussianKernel kernel = build_kernel(mp.sigma);
  const Field mass = kernel_mass(kernel, img.m1, img.m2);

  SpectralOperator op = SpectralOperator::build(img.m1, img.m2, mp.h, mp.eps, mp.dt, 1.0);
  bool op_ready = false;  // table/fixed stabilizers are set once, on iteration 1

  LabelMask prev_mask = binarize(res.u);
  const double etd1_rel_tol = 1e-8;

  for (int n = 1; n <= cfg.max_iters; ++n) {
    int guarded = 0;
    const auto [f1, f2] = fit_functions(img, res.u, kernel, mp.eps1, &guarded);
    res.guarded_pixels += guarded;
    const auto [e1, e2] = force_fields(img, f1, f2, kernel, mass);

    if (cfg.stabilizer.mode == StabilizerMode::automatic || !op_ready) {
      const double S = compute_stabilizer(e1, e2, mp, cfg.stabilizer);
      op = op.with_stabilizer(S);
      op_ready = true;
    }

    if (n == 1)
      res.trace.push_back({0, discrete_energy(res.u, e1, e2, mp), elapsed_ms()});

    PhaseField next;
    if (cfg.scheme == Scheme::etd1) {
      const Field nl = nonlinear_term(res.u, e1, e2, op.stabilizer, mp);
      next = etd1_step(res.u, nl, op);
    } else {
      auto nonlin_of = [&](const Field& w) {
        return nonlinear_term(w, e1, e2, op.stabilizer, mp);
      };
      next = etdrk2_step(res.u, nonlin_of, op);
    }
    for (double x : next.v)
      if (!std::isfinite(x)) throw std::runtime_error("segment: non-finite field at iteration " +
                                                      std::to_string(n));

    const double e_prev = res.trace.back().energy;
    const double e_now = discrete_energy(next, e1, e2, mp);
    res.trace.push_back({n, e_now, elapsed_ms()});
    const double bound = cfg.scheme == Scheme::etd1 ? e_prev + etd1_rel_tol * std::abs(e_prev)
                                                    : e_prev + cfg.energy_slack;
    if (cfg.strict_energy && e_now > bound)
      throw std::runtime_error("segment: energy increase at iteration " + std::to_string(n));

    res.u = std::move(next);
    res.iterations = n;

    LabelMask mask = binarize(res.u);
    if (mask == prev_mask) {  // contour stationary
      res.converged = true;
      break;
    }
    prev_mask = std::move(mask);
  }

  res.mask = binarize(res.u);
  res.wall_ms = elapsed_ms();
  return res;
}

void write_energy_csv(const std::vector<EnergySample>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "iter,energy,wall_ms\n";
  out.precision(17);
  for (const auto& s : trace) out << s.iter << "," << s.energy << "," << s.wall_ms << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace aclbf
