#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "aclbf/driver.hpp"
#include "aclbf/synth.hpp"

using namespace aclbf;

TEST_CASE("binarize is the strict sign threshold") {
  PhaseField u(3, 3, -1.0);
  CHECK(binarize(u).v == std::vector<std::uint8_t>(9, 0));
  u = PhaseField(3, 3, 1.0);
  CHECK(binarize(u).v == std::vector<std::uint8_t>(9, 1));
  u = PhaseField(3, 3, 0.0);
  u(1, 2) = 1e-300;
  const LabelMask m = binarize(u);
  CHECK(m(1, 2) == 1);
  int count = 0;
  for (auto b : m.v) count += b;
  CHECK(count == 1);  // exactly zero is background
}

TEST_CASE("dice coefficient") {
  LabelMask a(4, 4, 1), b(4, 4, 1);
  CHECK(dice(a, b) == 1.0);

  LabelMask c(4, 4, 0), d(4, 4, 0);
  c(0, 0) = 1;
  d(3, 3) = 1;
  CHECK(dice(c, d) == 0.0);
  CHECK(dice(LabelMask(4, 4, 0), LabelMask(4, 4, 0)) == 1.0);  // both empty

  // 2x2 block against the same block shifted one column: overlap 2 of 4+4
  LabelMask p(4, 4, 0), q(4, 4, 0);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) p(i, j) = 1;
  for (int i = 1; i <= 2; ++i)
    for (int j = 2; j <= 3; ++j) q(i, j) = 1;
  CHECK(dice(p, q) == 0.5);

  CHECK_THROWS_AS(dice(LabelMask(3, 3), LabelMask(4, 3)), std::invalid_argument);
}

TEST_CASE("segment fails cleanly on a featureless image") {
  RunConfig cfg;
  CHECK_THROWS_WITH_AS(segment(GrayImage(32, 32, 0.5), cfg), "no edges detected",
                       std::runtime_error);
}

TEST_CASE("segment recovers a clean disk") {
  const Fixture fx = standard_fixtures()[0];
  REQUIRE(fx.name == "disk");
  const RunResult res = segment(fx.data.image, fx.config);
  CHECK(res.converged);
  CHECK(res.iterations >= 1);
  CHECK(dice(res.mask, fx.data.truth) >= 0.99);
  CHECK(static_cast<int>(res.trace.size()) == res.iterations + 1);
  CHECK(res.side == Polarity::positive);
  CHECK(res.edges_positive > 0);
  CHECK(res.region_size > 0);
}

TEST_CASE("the two schemes land on the same mask, second order needs no more steps") {
  Fixture fx = standard_fixtures()[0];
  fx.config.scheme = Scheme::etd1;
  const RunResult r1 = segment(fx.data.image, fx.config);
  fx.config.scheme = Scheme::etdrk2;
  const RunResult r2 = segment(fx.data.image, fx.config);
  CHECK(r1.converged);
  CHECK(r2.converged);
  CHECK(r1.mask == r2.mask);
  CHECK(r2.iterations <= r1.iterations);
}

TEST_CASE("etd1 energy trace never increases") {
  Fixture fx = standard_fixtures()[0];
  fx.config.scheme = Scheme::etd1;
  fx.config.strict_energy = true;  // violations become hard errors
  const RunResult res = segment(fx.data.image, fx.config);
  for (std::size_t k = 1; k < res.trace.size(); ++k)
    CHECK(res.trace[k].energy <=
          res.trace[k - 1].energy + 1e-8 * std::abs(res.trace[k - 1].energy));
}

TEST_CASE("reruns are bit-identical and stop exactly at mask stationarity") {
  const Fixture fx = standard_fixtures()[0];
  const RunResult a = segment(fx.data.image, fx.config);
  const RunResult b = segment(fx.data.image, fx.config);
  CHECK(a.u.v == b.u.v);
  CHECK(a.mask == b.mask);
  CHECK(a.iterations == b.iterations);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k)
    CHECK(a.trace[k].energy == b.trace[k].energy);

  // one iteration less than the stationarity point must not converge
  RunConfig capped = fx.config;
  capped.max_iters = a.iterations - 1;
  REQUIRE(capped.max_iters >= 1);
  const RunResult partial = segment(fx.data.image, capped);
  CHECK_FALSE(partial.converged);
  CHECK(partial.iterations == capped.max_iters);
  CHECK(static_cast<int>(partial.trace.size()) == partial.iterations + 1);

  RunConfig exact = fx.config;
  exact.max_iters = a.iterations;
  const RunResult full = segment(fx.data.image, exact);
  CHECK(full.converged);
  CHECK(full.mask == a.mask);
}

TEST_CASE("energy csv format") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "aclbf_energy_test.csv";
  write_energy_csv({{0, 10.5, 0.1}, {1, 9.25, 2.0}}, path.string());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,energy,wall_ms");
  std::getline(in, line);
  CHECK(line.substr(0, 7) == "0,10.5,");
  std::getline(in, line);
  CHECK(line.substr(0, 7) == "1,9.25,");
  fs::remove(path);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.model.sigma = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
