// Python bindings for the segmentation core: image I/O, the graph-Laplacian
// initializer, the full solver, fixture generators, and the overlap metric.
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aclbf/driver.hpp"
#include "aclbf/image_io.hpp"
#include "aclbf/synth.hpp"

namespace py = pybind11;
using namespace aclbf;

namespace {

Field field_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  Field f(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
  auto r = a.unchecked<2>();
  for (int i = 0; i < f.m1; ++i)
    for (int j = 0; j < f.m2; ++j) f(i, j) = r(i, j);
  return f;
}

py::array_t<double> array_from_field(const Field& f) {
  py::array_t<double> a({f.m1, f.m2});
  auto w = a.mutable_unchecked<2>();
  for (int i = 0; i < f.m1; ++i)
    for (int j = 0; j < f.m2; ++j) w(i, j) = f(i, j);
  return a;
}

LabelMask mask_from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  LabelMask m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
  auto r = a.unchecked<2>();
  for (int i = 0; i < m.m1; ++i)
    for (int j = 0; j < m.m2; ++j) m(i, j) = r(i, j) ? 1 : 0;
  return m;
}

py::array_t<std::uint8_t> array_from_mask(const LabelMask& m) {
  py::array_t<std::uint8_t> a({m.m1, m.m2});
  auto w = a.mutable_unchecked<2>();
  for (int i = 0; i < m.m1; ++i)
    for (int j = 0; j < m.m2; ++j) w(i, j) = m(i, j);
  return a;
}

SidePolicy side_from_string(const std::string& s) {
  if (s == "positive") return SidePolicy::positive;
  if (s == "negative") return SidePolicy::negative;
  if (s == "auto") return SidePolicy::automatic;
  throw std::invalid_argument("side must be auto, positive or negative");
}

RunConfig make_config(double mu, double sigma, double eps, double eps1, double dt, double h,
                      double lambda1, double lambda2, double lam, double k1, double k2,
                      int denoise_passes, const std::string& side, const std::string& scheme,
                      const std::string& stabilizer, double stab_value, int max_iters,
                      double energy_slack, bool strict_energy) {
  RunConfig cfg;
  cfg.model.mu = mu;
  cfg.model.sigma = sigma;
  cfg.model.eps = eps;
  cfg.model.eps1 = eps1;
  cfg.model.dt = dt;
  cfg.model.h = h;
  cfg.model.lambda1 = lambda1;
  cfg.model.lambda2 = lambda2;
  cfg.iglim.lambda = lam;
  cfg.iglim.k1 = k1;
  cfg.iglim.k2 = k2;
  cfg.iglim.passes = denoise_passes;
  cfg.iglim.side = side_from_string(side);
  if (scheme == "etd1")
    cfg.scheme = Scheme::etd1;
  else if (scheme == "etdrk2")
    cfg.scheme = Scheme::etdrk2;
  else
    throw std::invalid_argument("scheme must be etd1 or etdrk2");
  if (stabilizer == "auto")
    cfg.stabilizer = {StabilizerMode::automatic, 0.0};
  else if (stabilizer == "table")
    cfg.stabilizer = {StabilizerMode::table, stab_value};
  else if (stabilizer == "fixed")
    cfg.stabilizer = {StabilizerMode::fixed, stab_value};
  else
    throw std::invalid_argument("stabilizer must be auto, table or fixed");
  cfg.max_iters = max_iters;
  cfg.energy_slack = energy_slack;
  cfg.strict_energy = strict_energy;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-phase image segmentation with a local binary fitting energy, an Allen-Cahn "
            "phase field, graph-Laplacian initialization, and exponential time stepping";

  m.def("load_gray", [](const std::string& path) { return array_from_field(load_gray(path)); },
        py::arg("path"), "Read an 8-bit PGM into a (rows, cols) float array in [0,1].");
  m.def("write_gray",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           const std::string& path) { write_gray(field_from_array(img), path); },
        py::arg("image"), py::arg("path"));
  m.def("write_mask",
        [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask,
           const std::string& path) { write_mask(mask_from_array(mask), path); },
        py::arg("mask"), py::arg("path"));
  m.def("overlay_contour",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask,
           const std::string& path) {
          overlay_contour(field_from_array(img), mask_from_array(mask), path);
        },
        py::arg("image"), py::arg("mask"), py::arg("path"));

  m.def("graph_laplacian",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           double lam) { return array_from_field(graph_laplacian(field_from_array(img), lam)); },
        py::arg("image"), py::arg("lam") = 50.0,
        "Intensity-adaptive 8-neighbor Laplacian; lam = 0 gives the homogeneous stencil.");

  m.def("iglim",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img, double lam,
           double k1, double k2, int passes, const std::string& side) {
          IglimParams p;
          p.lambda = lam;
          p.k1 = k1;
          p.k2 = k2;
          p.passes = passes;
          p.side = side_from_string(side);
          const IglimResult r = run_iglim(field_from_array(img), p);
          py::dict d;
          d["u0"] = array_from_field(r.u0);
          d["side"] = r.side == Polarity::positive ? "positive" : "negative";
          d["edges_positive"] = r.n_positive;
          d["edges_negative"] = r.n_negative;
          d["region_size"] = r.region_size;
          return d;
        },
        py::arg("image"), py::arg("lam") = 50.0, py::arg("k1") = 0.01, py::arg("k2") = 0.01,
        py::arg("denoise_passes") = 1, py::arg("side") = "auto",
        "Edge-based initialization; returns the two-valued start field and diagnostics.");

  m.def("segment",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img, double mu,
           double sigma, double eps, double eps1, double dt, double h, double lambda1,
           double lambda2, double lam, double k1, double k2, int denoise_passes,
           const std::string& side, const std::string& scheme, const std::string& stabilizer,
           double stab_value, int max_iters, double energy_slack, bool strict_energy) {
          const RunConfig cfg =
              make_config(mu, sigma, eps, eps1, dt, h, lambda1, lambda2, lam, k1, k2,
                          denoise_passes, side, scheme, stabilizer, stab_value, max_iters,
                          energy_slack, strict_energy);
          const RunResult r = segment(field_from_array(img), cfg);
          py::dict d;
          d["mask"] = array_from_mask(r.mask);
          d["u"] = array_from_field(r.u);
          d["iterations"] = r.iterations;
          d["converged"] = r.converged;
          py::array_t<double> trace({static_cast<py::ssize_t>(r.trace.size()),
                                     static_cast<py::ssize_t>(3)});
          auto w = trace.mutable_unchecked<2>();
          for (std::size_t k = 0; k < r.trace.size(); ++k) {
            w(k, 0) = r.trace[k].iter;
            w(k, 1) = r.trace[k].energy;
            w(k, 2) = r.trace[k].wall_ms;
          }
          d["trace"] = trace;
          d["side"] = r.side == Polarity::positive ? "positive" : "negative";
          d["edges_positive"] = r.edges_positive;
          d["edges_negative"] = r.edges_negative;
          d["region_size"] = r.region_size;
          d["guarded_pixels"] = r.guarded_pixels;
          d["wall_ms"] = r.wall_ms;
          return d;
        },
        py::arg("image"), py::arg("mu") = 80.0, py::arg("sigma") = 3.0, py::arg("eps") = 0.5,
        py::arg("eps1") = 0.5, py::arg("dt") = 0.1, py::arg("h") = 0.01,
        py::arg("lambda1") = 1.0, py::arg("lambda2") = 1.0, py::arg("lam") = 50.0,
        py::arg("k1") = 0.01, py::arg("k2") = 0.01, py::arg("denoise_passes") = 1,
        py::arg("side") = "auto", py::arg("scheme") = "etdrk2", py::arg("stabilizer") = "auto",
        py::arg("stab_value") = 0.0, py::arg("max_iters") = 500,
        py::arg("energy_slack") = 1e-4, py::arg("strict_energy") = false,
        "Run the full alternating-minimization segmentation; returns mask, field, energy "
        "trace and diagnostics. The trace columns are (iteration, energy, wall_ms).");

  m.def("dice",
        [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& b) {
          return dice(mask_from_array(a), mask_from_array(b));
        },
        py::arg("a"), py::arg("b"), "Overlap coefficient 2|A&B|/(|A|+|B|); 1 for two empty masks.");

  auto pair_out = [](const SynthPair& p) {
    return py::make_tuple(array_from_field(p.image), array_from_mask(p.truth));
  };
  m.def("make_disk",
        [pair_out](int size, double radius, double fg, double bg, double noise_var,
                   std::uint64_t seed) {
          SynthPair p = make_disk(size, radius, fg, bg);
          add_gaussian_noise(p.image, noise_var, seed);
          quantize_to_8bit(p.image);
          return pair_out(p);
        },
        py::arg("size") = 100, py::arg("radius") = 25.0, py::arg("fg") = 0.3,
        py::arg("bg") = 0.8, py::arg("noise_var") = 0.0, py::arg("seed") = 7,
        "Disk fixture; returns (image, truth). noise_var is on the 0..255 scale.");
  m.def("make_ramp_disk",
        [pair_out](int size, double radius, double fg, double bg, double gradient,
                   double noise_var, std::uint64_t seed) {
          SynthPair p = make_ramp_disk(size, radius, fg, bg, gradient);
          add_gaussian_noise(p.image, noise_var, seed);
          quantize_to_8bit(p.image);
          return pair_out(p);
        },
        py::arg("size") = 100, py::arg("radius") = 25.0, py::arg("fg") = 0.3,
        py::arg("bg") = 0.8, py::arg("gradient") = 0.4, py::arg("noise_var") = 0.0,
        py::arg("seed") = 7);
  m.def("make_vessel",
        [pair_out](int size, double half_width, double amplitude, double cycles, double fg,
                   double bg, double noise_var, std::uint64_t seed) {
          SynthPair p = make_vessel(size, half_width, amplitude, cycles, fg, bg);
          add_gaussian_noise(p.image, noise_var, seed);
          quantize_to_8bit(p.image);
          return pair_out(p);
        },
        py::arg("size") = 100, py::arg("half_width") = 5.0, py::arg("amplitude") = 15.0,
        py::arg("cycles") = 1.5, py::arg("fg") = 0.3, py::arg("bg") = 0.8,
        py::arg("noise_var") = 0.0, py::arg("seed") = 7);
}
