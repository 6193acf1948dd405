// aclbf: batch two-phase segmentation tool.
// Subcommands: segment (full pipeline), iglim (initialization only),
// synth (fixture generator), bench (scheme comparison over a fixture set).
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "aclbf/driver.hpp"
#include "aclbf/image_io.hpp"
#include "aclbf/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string to_string(aclbf::Scheme s) { return s == aclbf::Scheme::etd1 ? "etd1" : "etdrk2"; }
std::string to_string(aclbf::SidePolicy s) {
  switch (s) {
    case aclbf::SidePolicy::positive: return "positive";
    case aclbf::SidePolicy::negative: return "negative";
    default: return "auto";
  }
}
std::string to_string(aclbf::StabilizerMode m) {
  switch (m) {
    case aclbf::StabilizerMode::table: return "table";
    case aclbf::StabilizerMode::fixed: return "fixed";
    default: return "auto";
  }
}
std::string to_string(aclbf::Polarity p) {
  return p == aclbf::Polarity::positive ? "positive" : "negative";
}

json config_to_json(const aclbf::RunConfig& cfg) {
  const auto& m = cfg.model;
  const auto& g = cfg.iglim;
  return json{
      {"scheme", to_string(cfg.scheme)},
      {"max_iters", cfg.max_iters},
      {"strict_energy", cfg.strict_energy},
      {"energy_slack", cfg.energy_slack},
      {"model",
       {{"mu", m.mu},
        {"sigma", m.sigma},
        {"eps", m.eps},
        {"eps1", m.eps1},
        {"dt", m.dt},
        {"h", m.h},
        {"lambda1", m.lambda1},
        {"lambda2", m.lambda2}}},
      {"iglim",
       {{"lambda", g.lambda},
        {"k1", g.k1},
        {"k2", g.k2},
        {"denoise_passes", g.passes},
        {"side", to_string(g.side)}}},
      {"stabilizer", {{"mode", to_string(cfg.stabilizer.mode)}, {"value", cfg.stabilizer.value}}}};
}

aclbf::RunConfig config_from_json(const json& j) {
  aclbf::RunConfig cfg;
  const std::string scheme = j.value("scheme", "etdrk2");
  cfg.scheme = scheme == "etd1" ? aclbf::Scheme::etd1 : aclbf::Scheme::etdrk2;
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.strict_energy = j.value("strict_energy", cfg.strict_energy);
  cfg.energy_slack = j.value("energy_slack", cfg.energy_slack);
  if (j.contains("model")) {
    const json& m = j["model"];
    cfg.model.mu = m.value("mu", cfg.model.mu);
    cfg.model.sigma = m.value("sigma", cfg.model.sigma);
    cfg.model.eps = m.value("eps", cfg.model.eps);
    cfg.model.eps1 = m.value("eps1", cfg.model.eps1);
    cfg.model.dt = m.value("dt", cfg.model.dt);
    cfg.model.h = m.value("h", cfg.model.h);
    cfg.model.lambda1 = m.value("lambda1", cfg.model.lambda1);
    cfg.model.lambda2 = m.value("lambda2", cfg.model.lambda2);
  }
  if (j.contains("iglim")) {
    const json& g = j["iglim"];
    cfg.iglim.lambda = g.value("lambda", cfg.iglim.lambda);
    cfg.iglim.k1 = g.value("k1", cfg.iglim.k1);
    cfg.iglim.k2 = g.value("k2", cfg.iglim.k2);
    cfg.iglim.passes = g.value("denoise_passes", cfg.iglim.passes);
    const std::string side = g.value("side", "auto");
    cfg.iglim.side = side == "positive"  ? aclbf::SidePolicy::positive
                     : side == "negative" ? aclbf::SidePolicy::negative
                                          : aclbf::SidePolicy::automatic;
  }
  if (j.contains("stabilizer")) {
    const json& s = j["stabilizer"];
    const std::string mode = s.value("mode", "auto");
    cfg.stabilizer.mode = mode == "table"   ? aclbf::StabilizerMode::table
                          : mode == "fixed" ? aclbf::StabilizerMode::fixed
                                            : aclbf::StabilizerMode::automatic;
    cfg.stabilizer.value = s.value("value", 0.0);
  }
  return cfg;
}

// Shared --flag surface for everything that runs the solver.
struct CliConfig {
  aclbf::RunConfig run;
  std::string scheme = "etdrk2";
  std::string side = "auto";
  std::string stabilizer = "auto";
  double stab_value = 0.0;

  void add_model_flags(CLI::App* app) {
    app->set_help_flag("--help", "print help");
    auto& m = run.model;
    app->add_option("--mu", m.mu, "fitting strength");
    app->add_option("--sigma", m.sigma, "Gaussian kernel stddev in pixels");
    app->add_option("--eps", m.eps, "diffuse-interface width");
    app->add_option("--eps1", m.eps1, "Heaviside smoothing width");
    app->add_option("--dt", m.dt, "time step");
    app->add_option("--h", m.h, "pixel spacing");
    app->add_option("--lambda1", m.lambda1, "inner fitting weight");
    app->add_option("--lambda2", m.lambda2, "outer fitting weight");
    app->add_option("--scheme", scheme, "time stepper: etd1 or etdrk2")
        ->check(CLI::IsMember({"etd1", "etdrk2"}));
    app->add_option("--stabilizer", stabilizer, "stabilizer policy: auto, table or fixed")
        ->check(CLI::IsMember({"auto", "table", "fixed"}));
    app->add_option("--stab-value", stab_value,
                    "table multiplier c (S = c*mu*eps1) or fixed stabilizer value");
    app->add_option("--max-iters", run.max_iters, "iteration cap");
    app->add_flag("--strict-energy", run.strict_energy,
                  "treat an energy-monitor violation as a hard error");
    app->add_option("--energy-slack", run.energy_slack, "ETDRK2 energy monitor slack");
  }

  void add_iglim_flags(CLI::App* app) {
    auto& g = run.iglim;
    app->add_option("--lambda", g.lambda, "graph Laplacian inhomogeneity weight");
    app->add_option("--k1", g.k1, "negative classification threshold");
    app->add_option("--k2", g.k2, "positive classification threshold");
    app->add_option("--denoise-passes", g.passes, "diagonal-connectivity denoising passes");
    app->add_option("--side", side, "initial contour side: auto, positive or negative")
        ->check(CLI::IsMember({"auto", "positive", "negative"}));
  }

  aclbf::RunConfig resolve() const {
    aclbf::RunConfig cfg = run;
    cfg.scheme = scheme == "etd1" ? aclbf::Scheme::etd1 : aclbf::Scheme::etdrk2;
    cfg.iglim.side = side == "positive"  ? aclbf::SidePolicy::positive
                     : side == "negative" ? aclbf::SidePolicy::negative
                                          : aclbf::SidePolicy::automatic;
    cfg.stabilizer.mode = stabilizer == "table"   ? aclbf::StabilizerMode::table
                          : stabilizer == "fixed" ? aclbf::StabilizerMode::fixed
                                                  : aclbf::StabilizerMode::automatic;
    cfg.stabilizer.value = stab_value;
    if (cfg.stabilizer.mode != aclbf::StabilizerMode::automatic && !(stab_value > 0.0))
      throw CLI::ValidationError("--stab-value must be positive for table/fixed stabilizers");
    cfg.validate();
    return cfg;
  }
};

int run_segment(const std::string& input, const std::string& outdir,
                const aclbf::RunConfig& cfg) {
  const aclbf::GrayImage img = aclbf::load_gray(input);
  fs::create_directories(outdir);

  const aclbf::RunResult res = aclbf::segment(img, cfg);

  aclbf::write_mask(res.mask, (fs::path(outdir) / "mask.pgm").string());
  aclbf::overlay_contour(img, res.mask, (fs::path(outdir) / "overlay.ppm").string());
  aclbf::write_energy_csv(res.trace, (fs::path(outdir) / "energy.csv").string());

  json j;
  j["input"] = input;
  j["config"] = config_to_json(cfg);
  j["result"] = {{"iterations", res.iterations},
                 {"converged", res.converged},
                 {"wall_ms", res.wall_ms},
                 {"side", to_string(res.side)},
                 {"edges_positive", res.edges_positive},
                 {"edges_negative", res.edges_negative},
                 {"region_size", res.region_size},
                 {"guarded_pixels", res.guarded_pixels}};
  std::ofstream out((fs::path(outdir) / "run.json").string());
  out << j.dump(2) << "\n";

  std::cout << "side=" << to_string(res.side) << " iterations=" << res.iterations
            << " converged=" << (res.converged ? "true" : "false") << " wall_ms=" << res.wall_ms
            << "\n";
  return res.converged ? 0 : 2;
}

int run_iglim_cmd(const std::string& input, const std::string& outdir,
                  const aclbf::IglimParams& params) {
  const aclbf::GrayImage img = aclbf::load_gray(input);
  fs::create_directories(outdir);

  const aclbf::Field lap = aclbf::graph_laplacian(img, params.lambda);
  auto [sp, sn] = aclbf::classify_zero_cross(lap, params.k1, params.k2);
  auto set_to_mask = [](const aclbf::PixelSet& s) {
    aclbf::LabelMask m(s.m1, s.m2);
    for (int k = 0; k < m.size(); ++k) m.v[k] = s.in[k];
    return m;
  };
  aclbf::write_mask(set_to_mask(sp.points), (fs::path(outdir) / "edges_p.pgm").string());
  aclbf::write_mask(set_to_mask(sn.points), (fs::path(outdir) / "edges_n.pgm").string());

  const aclbf::IglimResult res = aclbf::run_iglim(img, params);
  aclbf::LabelMask region(img.m1, img.m2);
  for (int k = 0; k < region.size(); ++k) region.v[k] = res.u0.v[k] > 0.0 ? 1 : 0;
  aclbf::write_mask(region, (fs::path(outdir) / "init_region.pgm").string());
  aclbf::write_mask(aclbf::binarize(res.u0), (fs::path(outdir) / "u0.pgm").string());

  std::cout << "side=" << to_string(res.side) << " edges_positive=" << res.n_positive
            << " edges_negative=" << res.n_negative << " region_size=" << res.region_size
            << "\n";
  return 0;
}

void write_pair(const aclbf::SynthPair& pair, const std::string& outdir,
                const std::string& name) {
  fs::create_directories(outdir);
  aclbf::write_gray(pair.image, (fs::path(outdir) / (name + ".pgm")).string());
  aclbf::write_mask(pair.truth, (fs::path(outdir) / (name + "_truth.pgm")).string());
}

int run_bench(const std::string& fixdir, const std::string& outcsv,
              const aclbf::RunConfig& defaults) {
  std::ofstream out(outcsv);
  if (!out) throw std::runtime_error("cannot open output file: " + outcsv);
  out << "fixture,scheme,iters,wall_ms,dice\n";
  out.precision(6);

  std::vector<fs::path> inputs;
  if (fs::exists(fixdir))
    for (const auto& entry : fs::directory_iterator(fixdir)) {
      const std::string stem = entry.path().stem().string();
      if (entry.path().extension() == ".pgm" && stem.find("_truth") == std::string::npos)
        inputs.push_back(entry.path());
    }
  std::sort(inputs.begin(), inputs.end());

  int failures = 0;
  for (const auto& path : inputs) {
    const std::string name = path.stem().string();
    aclbf::RunConfig cfg = defaults;
    const fs::path sidecar = path.parent_path() / (name + "_params.json");
    if (fs::exists(sidecar)) {
      std::ifstream in(sidecar);
      json j;
      in >> j;
      cfg = config_from_json(j);
    }
    aclbf::GrayImage img;
    aclbf::LabelMask truth;
    bool have_truth = false;
    try {
      img = aclbf::load_gray(path.string());
      const fs::path tpath = path.parent_path() / (name + "_truth.pgm");
      if (fs::exists(tpath)) {
        truth = aclbf::threshold_mask(aclbf::load_gray(tpath.string()));
        have_truth = true;
      }
    } catch (const std::exception& e) {
      std::cerr << name << ": " << e.what() << "\n";
      ++failures;
      continue;
    }
    for (aclbf::Scheme scheme : {aclbf::Scheme::etd1, aclbf::Scheme::etdrk2}) {
      cfg.scheme = scheme;
      try {
        const aclbf::RunResult res = aclbf::segment(img, cfg);
        out << name << "," << to_string(scheme) << "," << res.iterations << "," << res.wall_ms
            << ",";
        if (have_truth) out << aclbf::dice(res.mask, truth);
        out << "\n";
      } catch (const std::exception& e) {
        std::cerr << name << " [" << to_string(scheme) << "]: " << e.what() << "\n";
        ++failures;
      }
    }
  }
  std::cout << "bench: " << inputs.size() << " fixtures, " << failures << " failures -> "
            << outcsv << "\n";
  return 0;  // per-fixture failures are recorded, not fatal
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase image segmentation: local binary fitting with an Allen-Cahn phase "
               "field, graph-Laplacian initialization, and exponential time stepping"};
  app.require_subcommand(1);
  // keep -h free for the pixel-spacing flag --h
  app.set_help_flag("--help", "print help");

  // segment
  auto* seg = app.add_subcommand("segment", "segment an image and write mask/overlay/trace");
  std::string seg_input, seg_out = ".";
  CliConfig seg_cfg;
  seg->add_option("--input", seg_input, "input PGM image")->required();
  seg->add_option("--out", seg_out, "output directory");
  seg_cfg.add_model_flags(seg);
  seg_cfg.add_iglim_flags(seg);

  // iglim
  auto* igl = app.add_subcommand("iglim", "run the initialization alone and write its stages");
  std::string igl_input, igl_out = ".";
  CliConfig igl_cfg;
  igl->add_option("--input", igl_input, "input PGM image")->required();
  igl->add_option("--out", igl_out, "output directory");
  igl_cfg.add_iglim_flags(igl);

  // synth
  auto* synth = app.add_subcommand("synth", "generate synthetic image/ground-truth pairs");
  synth->require_subcommand(1);
  int sy_size = 100;
  double sy_radius = 25, sy_fg = 0.3, sy_bg = 0.8, sy_noise = 0, sy_gradient = 0.4;
  double sy_half_width = 5, sy_amplitude = 15, sy_cycles = 1.5;
  std::uint64_t sy_seed = 7;
  std::string sy_out = ".", sy_name;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--size", sy_size, "grid size (pixels per side)");
    c->add_option("--fg", sy_fg, "object intensity");
    c->add_option("--bg", sy_bg, "background intensity");
    c->add_option("--noise-var", sy_noise, "Gaussian noise variance on the 0..255 scale");
    c->add_option("--seed", sy_seed, "noise RNG seed");
    c->add_option("--out", sy_out, "output directory");
    c->add_option("--name", sy_name, "output base name (default: shape name)");
  };
  auto* sy_disk = synth->add_subcommand("disk", "filled disk");
  sy_disk->add_option("--radius", sy_radius, "disk radius in pixels");
  add_common(sy_disk);
  auto* sy_ramp = synth->add_subcommand("ramp-disk", "disk under a linear illumination ramp");
  sy_ramp->add_option("--radius", sy_radius, "disk radius in pixels");
  sy_ramp->add_option("--gradient", sy_gradient, "total intensity span of the ramp");
  add_common(sy_ramp);
  auto* sy_vessel = synth->add_subcommand("vessel", "sinusoidal tube");
  sy_vessel->add_option("--half-width", sy_half_width, "tube half width in pixels");
  sy_vessel->add_option("--amplitude", sy_amplitude, "sinusoid amplitude in pixels");
  sy_vessel->add_option("--cycles", sy_cycles, "sinusoid cycles across the image");
  add_common(sy_vessel);
  auto* sy_suite = synth->add_subcommand("suite", "write the bundled fixture suite");
  sy_suite->add_option("--out", sy_out, "output directory");

  // bench
  auto* bench = app.add_subcommand("bench", "run both schemes over a fixture directory");
  std::string be_fixtures = ".", be_out = "bench.csv";
  CliConfig be_cfg;
  bench->add_option("--fixtures", be_fixtures, "directory of *.pgm fixtures");
  bench->add_option("--out", be_out, "output CSV path");
  be_cfg.add_model_flags(bench);
  be_cfg.add_iglim_flags(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError&) {
    std::cerr << "invalid arguments (see --help)\n";
    return 64;
  }

  try {
    if (*seg) return run_segment(seg_input, seg_out, seg_cfg.resolve());
    if (*igl) {
      aclbf::RunConfig cfg = igl_cfg.resolve();
      return run_iglim_cmd(igl_input, igl_out, cfg.iglim);
    }
    if (*synth) {
      if (*sy_suite) {
        for (const auto& f : aclbf::standard_fixtures()) {
          write_pair(f.data, sy_out, f.name);
          std::ofstream js((fs::path(sy_out) / (f.name + "_params.json")).string());
          js << config_to_json(f.config).dump(2) << "\n";
        }
        std::cout << "fixture suite written to " << sy_out << "\n";
        return 0;
      }
      aclbf::SynthPair pair;
      std::string name;
      if (*sy_disk) {
        pair = aclbf::make_disk(sy_size, sy_radius, sy_fg, sy_bg);
        name = "disk";
      } else if (*sy_ramp) {
        pair = aclbf::make_ramp_disk(sy_size, sy_radius, sy_fg, sy_bg, sy_gradient);
        name = "ramp_disk";
      } else {
        pair = aclbf::make_vessel(sy_size, sy_half_width, sy_amplitude, sy_cycles, sy_fg, sy_bg);
        name = "vessel";
      }
      aclbf::add_gaussian_noise(pair.image, sy_noise, sy_seed);
      aclbf::quantize_to_8bit(pair.image);
      write_pair(pair, sy_out, sy_name.empty() ? name : sy_name);
      return 0;
    }
    if (*bench) return run_bench(be_fixtures, be_out, be_cfg.resolve());
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
