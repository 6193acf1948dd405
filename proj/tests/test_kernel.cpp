#include <doctest.h>

#include <cmath>
#include <random>

#include "aclbf/kernel.hpp"
#include "oracles.hpp"

using namespace aclbf;

namespace {

Field random_field(int m1, int m2, std::mt19937& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Field f(m1, m2);
  for (double& x : f.v) x = dist(rng);
  return f;
}

}  // namespace

TEST_CASE("kernel weights follow the Gaussian formula") {
  const GaussianKernel k = build_kernel(1.0);
  CHECK(k.radius == 4);
  CHECK(k.weight(0, 0) == doctest::Approx(0.15915494309189535).epsilon(1e-14));  // 1/(2 pi)
  CHECK(k.weight(1, 0) == doctest::Approx(0.09653235263005391).epsilon(1e-14));
  CHECK(k.weight(0, 1) == doctest::Approx(0.09653235263005391).epsilon(1e-14));

  // symmetric under both axis flips, nonnegative
  for (int di = -k.radius; di <= k.radius; ++di)
    for (int dj = -k.radius; dj <= k.radius; ++dj) {
      CHECK(k.weight(di, dj) >= 0.0);
      CHECK(k.weight(di, dj) == k.weight(-di, dj));
      CHECK(k.weight(di, dj) == k.weight(di, -dj));
    }

  CHECK_THROWS_AS(build_kernel(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_kernel(-2.0), std::invalid_argument);
}

TEST_CASE("sigma=3 truncation: 25x25 window, mass deficit 5.7e-5") {
  const GaussianKernel k = build_kernel(3.0);
  CHECK(k.radius == 12);
  double total = 0.0;
  for (int di = -k.radius; di <= k.radius; ++di)
    for (int dj = -k.radius; dj <= k.radius; ++dj) total += k.weight(di, dj);
  // frozen from a 40-digit summation of the truncated sampled Gaussian
  CHECK(total == doctest::Approx(0.9999431759009437).epsilon(1e-13));
  CHECK(std::abs(1.0 - total) < 1e-4);
}

TEST_CASE("convolution basics") {
  const GaussianKernel k = build_kernel(1.5);

  SUBCASE("zero field stays zero") {
    const Field out = convolve(Field(6, 6, 0.0), k);
    for (double x : out.v) CHECK(x == 0.0);
  }
  SUBCASE("interior impulse stamps the kernel") {
    Field f(17, 17, 0.0);
    f(8, 8) = 1.0;
    const Field out = convolve(f, k);
    for (int di = -k.radius; di <= k.radius; ++di)
      for (int dj = -k.radius; dj <= k.radius; ++dj)
        CHECK(out(8 + di, 8 + dj) == doctest::Approx(k.weight(di, dj)).epsilon(1e-13));
  }
}

TEST_CASE("separable convolution matches the direct double loop") {
  std::mt19937 rng(11);
  for (int rep = 0; rep < 4; ++rep) {
    const int m1 = 8 + static_cast<int>(rng() % 9);
    const int m2 = 8 + static_cast<int>(rng() % 9);
    const double sigma = rep == 0 ? 2.0 : 0.5 + (rng() % 100) / 40.0;
    const Field f = random_field(m1, m2, rng);
    const Field fast = convolve(f, build_kernel(sigma));
    const Field slow = oracle::brute_convolve(f, sigma);
    for (int k = 0; k < f.size(); ++k)
      CHECK(fast.v[k] == doctest::Approx(slow.v[k]).epsilon(1e-12));
  }
}

TEST_CASE("convolution is linear") {
  std::mt19937 rng(12);
  const GaussianKernel k = build_kernel(2.0);
  const Field f = random_field(10, 9, rng), g = random_field(10, 9, rng);
  const double c = 3.25;
  Field combo(10, 9);
  for (int i = 0; i < combo.size(); ++i) combo.v[i] = c * f.v[i] + g.v[i];
  const Field lhs = convolve(combo, k);
  const Field cf = convolve(f, k), cg = convolve(g, k);
  for (int i = 0; i < combo.size(); ++i)
    CHECK(lhs.v[i] == doctest::Approx(c * cf.v[i] + cg.v[i]).epsilon(1e-12));
}

TEST_CASE("kernel mass") {
  SUBCASE("1x1 grid reduces to the center weight") {
    const GaussianKernel k = build_kernel(1.0);
    const Field m = kernel_mass(k, 1, 1);
    CHECK(m(0, 0) == doctest::Approx(k.weight(0, 0)).epsilon(1e-15));
  }
  SUBCASE("interior value is the full truncated sum") {
    const GaussianKernel k = build_kernel(2.0);
    double total = 0.0;
    for (int di = -k.radius; di <= k.radius; ++di)
      for (int dj = -k.radius; dj <= k.radius; ++dj) total += k.weight(di, dj);
    const Field m = kernel_mass(k, 30, 30);
    CHECK(m(15, 15) == doctest::Approx(total).epsilon(1e-12));
  }
  SUBCASE("corner of a 50x50 grid matches the quarter-window oracle") {
    const GaussianKernel k = build_kernel(3.0);
    const Field m = kernel_mass(k, 50, 50);
    double corner = 0.0;
    for (int di = 0; di <= k.radius; ++di)
      for (int dj = 0; dj <= k.radius; ++dj) corner += k.weight(di, dj);
    CHECK(m(0, 0) == doctest::Approx(corner).epsilon(1e-12));
    for (double x : m.v) CHECK(x > 0.0);
  }
  SUBCASE("equals convolve of the all-ones field exactly") {
    const GaussianKernel k = build_kernel(1.3);
    const Field a = kernel_mass(k, 12, 7);
    const Field b = convolve(Field(12, 7, 1.0), k);
    for (int i = 0; i < a.size(); ++i) CHECK(a.v[i] == b.v[i]);
  }
}
