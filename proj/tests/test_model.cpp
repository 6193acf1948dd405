#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "aclbf/model.hpp"
#include "oracles.hpp"

using namespace aclbf;

namespace {

Field random_field(int m1, int m2, std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Field f(m1, m2);
  for (double& x : f.v) x = dist(rng);
  return f;
}

}  // namespace

TEST_CASE("smooth heaviside and delta") {
  CHECK(heaviside(0.0, 0.7) == 0.5);
  CHECK(heaviside(0.5, 0.5) == doctest::Approx(0.75).epsilon(1e-14));  // atan(1) = pi/4
  CHECK(heaviside(1.0, 0.5) == doctest::Approx(0.8524163823495667).epsilon(1e-14));

  CHECK(delta(0.0, 0.5) == doctest::Approx(1.0 / (M_PI * 0.5)).epsilon(1e-14));
  CHECK(delta(1.0, 0.5) == doctest::Approx(0.12732395447351627).epsilon(1e-14));  // 2/(5 pi)
  for (double x : {0.1, 0.7, 2.0, 13.0}) CHECK(delta(x, 0.5) == delta(-x, 0.5));
  CHECK(delta(0.0, 0.5) > delta(0.3, 0.5));

  // partition of unity and H' = delta (finite differences)
  for (double x = -3.0; x <= 3.0; x += 0.17) {
    CHECK(heaviside(x, 0.5) + (1.0 - heaviside(x, 0.5)) == 1.0);
    const double d = 1e-6;
    const double fd = (heaviside(x + d, 0.5) - heaviside(x - d, 0.5)) / (2 * d);
    CHECK(fd == doctest::Approx(delta(x, 0.5)).epsilon(1e-7));
  }
  CHECK(heaviside(2.0, 0.5) > heaviside(1.0, 0.5));  // strictly increasing
  CHECK(heaviside(50.0, 0.5) < 1.0);
  CHECK(heaviside(-50.0, 0.5) > 0.0);
}

TEST_CASE("double well and its derivatives are consistent") {
  CHECK(double_well(1.0) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(double_well(-1.0) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(double_well(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double d = 1e-5;
  for (double u = -2.0; u <= 2.0; u += 0.13) {
    const double fd1 = (double_well(u + d) - double_well(u - d)) / (2 * d);
    CHECK(fd1 == doctest::Approx(double_well_deriv(u)).epsilon(1e-8));
    const double fd2 = (double_well_deriv(u + d) - double_well_deriv(u - d)) / (2 * d);
    CHECK(fd2 == doctest::Approx(double_well_deriv2(u)).epsilon(1e-8));
  }
}

TEST_CASE("local fits") {
  const GaussianKernel k = build_kernel(2.0);

  SUBCASE("constant image fits itself on both sides") {
    std::mt19937 rng(31);
    const GrayImage img(10, 10, 0.37);
    const PhaseField u = random_field(10, 10, rng, -2.0, 2.0);
    int guarded = -1;
    const auto [f1, f2] = fit_functions(img, u, k, 0.5, &guarded);
    CHECK(guarded == 0);
    for (int i = 0; i < img.size(); ++i) {
      CHECK(f1.v[i] == doctest::Approx(0.37).epsilon(1e-12));
      CHECK(f2.v[i] == doctest::Approx(0.37).epsilon(1e-12));
    }
  }
  SUBCASE("u = 0 weighs both sides equally") {
    std::mt19937 rng(32);
    const GrayImage img = random_field(9, 11, rng, 0.0, 1.0);
    const auto [f1, f2] = fit_functions(img, PhaseField(9, 11, 0.0), k, 0.5);
    const Field num = oracle::brute_convolve(img, 2.0);
    const Field den = oracle::brute_convolve(Field(9, 11, 1.0), 2.0);
    for (int i = 0; i < img.size(); ++i) {
      CHECK(f1.v[i] == doctest::Approx(f2.v[i]).epsilon(1e-13));
      CHECK(f1.v[i] == doctest::Approx(num.v[i] / den.v[i]).epsilon(1e-12));
    }
  }
  SUBCASE("two-constant image with aligned phase matches the oracle") {
    const int n = 12;
    GrayImage img(n, n);
    PhaseField u(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const bool obj = j < n / 2;
        img(i, j) = obj ? 0.2 : 0.9;
        u(i, j) = obj ? 1.0 : -1.0;
      }
    const GaussianKernel k3 = build_kernel(3.0);
    const auto [f1, f2] = fit_functions(img, u, k3, 0.5);
    Field hu(n, n), hui(n, n), gu(n, n), gui(n, n);
    for (int i = 0; i < n * n; ++i) {
      const double H = heaviside(u.v[i], 0.5);
      hu.v[i] = H;
      hui.v[i] = H * img.v[i];
      gu.v[i] = 1.0 - H;
      gui.v[i] = (1.0 - H) * img.v[i];
    }
    const Field n1 = oracle::brute_convolve(hui, 3.0), d1 = oracle::brute_convolve(hu, 3.0);
    const Field n2 = oracle::brute_convolve(gui, 3.0), d2 = oracle::brute_convolve(gu, 3.0);
    for (int i = 0; i < n * n; ++i) {
      CHECK(f1.v[i] == doctest::Approx(n1.v[i] / d1.v[i]).epsilon(1e-12));
      CHECK(f2.v[i] == doctest::Approx(n2.v[i] / d2.v[i]).epsilon(1e-12));
    }
  }
  SUBCASE("fits stay inside the intensity range") {
    std::mt19937 rng(33);
    const GrayImage img = random_field(14, 14, rng, 0.2, 0.7);
    const PhaseField u = random_field(14, 14, rng, -1.5, 1.5);
    const auto [f1, f2] = fit_functions(img, u, k, 0.5);
    for (int i = 0; i < img.size(); ++i) {
      CHECK(f1.v[i] >= 0.2 - 1e-12);
      CHECK(f1.v[i] <= 0.7 + 1e-12);
      CHECK(f2.v[i] >= 0.2 - 1e-12);
      CHECK(f2.v[i] <= 0.7 + 1e-12);
    }
  }
}

TEST_CASE("force fields") {
  const GaussianKernel k = build_kernel(2.0);
  const Field mass = kernel_mass(k, 8, 8);

  SUBCASE("exact fit leaves no force") {
    const GrayImage img(8, 8, 0.4);
    const Field f(8, 8, 0.4);
    const auto [e1, e2] = force_fields(img, f, f, k, mass);
    for (int i = 0; i < img.size(); ++i) {
      CHECK(e1.v[i] == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(e2.v[i] == doctest::Approx(0.0).epsilon(1e-14));
    }
  }
  SUBCASE("zero fit reduces to I^2 * mass") {
    std::mt19937 rng(34);
    const GrayImage img = random_field(8, 8, rng, 0.0, 1.0);
    const auto [e1, e2] = force_fields(img, Field(8, 8, 0.0), Field(8, 8, 0.0), k, mass);
    for (int i = 0; i < img.size(); ++i)
      CHECK(e1.v[i] == doctest::Approx(img.v[i] * img.v[i] * mass.v[i]).epsilon(1e-12));
  }
  SUBCASE("random instance matches the definition-form double sum") {
    std::mt19937 rng(35);
    const GrayImage img = random_field(8, 8, rng, 0.0, 1.0);
    const Field f1 = random_field(8, 8, rng, 0.0, 1.0);
    const Field f2 = random_field(8, 8, rng, 0.0, 1.0);
    const auto [e1, e2] = force_fields(img, f1, f2, k, mass);
    const Field r1 = oracle::definition_ek(img, f1, 2.0);
    const Field r2 = oracle::definition_ek(img, f2, 2.0);
    for (int i = 0; i < img.size(); ++i) {
      CHECK(e1.v[i] == doctest::Approx(r1.v[i]).epsilon(1e-10));
      CHECK(e2.v[i] == doctest::Approx(r2.v[i]).epsilon(1e-10));
      CHECK(e1.v[i] >= 0.0);
      CHECK(e2.v[i] >= 0.0);
    }
  }
}

TEST_CASE("stabilized nonlinearity") {
  ModelParams p;
  p.eps = 0.5;
  p.eps1 = 0.5;

  SUBCASE("pure phases are fixed by the well term") {
    p.mu = 0.0;
    const Field e(4, 4, 0.0);
    const Field n1 = nonlinear_term(PhaseField(4, 4, 1.0), e, e, 3.0, p);
    for (double x : n1.v) CHECK(x == doctest::Approx(3.0).epsilon(1e-14));
    const Field n0 = nonlinear_term(PhaseField(4, 4, 0.0), e, e, 3.0, p);
    for (double x : n0.v) CHECK(x == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("pointwise agreement with the scalar formula") {
    std::mt19937 rng(36);
    p.mu = 80.0;
    p.lambda1 = 1.0;
    p.lambda2 = 2.5;
    const PhaseField u = random_field(6, 6, rng, -2.0, 2.0);
    const Field e1 = random_field(6, 6, rng, 0.0, 0.5);
    const Field e2 = random_field(6, 6, rng, 0.0, 0.5);
    const double S = 11.0;
    const Field n = nonlinear_term(u, e1, e2, S, p);
    for (int i = 0; i < u.size(); ++i) {
      const double expected = S * u.v[i] - double_well_deriv(u.v[i]) / p.eps -
                              p.mu * delta(u.v[i], p.eps1) *
                                  (p.lambda1 * e1.v[i] - p.lambda2 * e2.v[i]);
      CHECK(n.v[i] == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("discrete energy") {
  ModelParams p;
  p.eps = 0.5;
  p.h = 0.25;

  SUBCASE("pure phase with no fitting has zero energy") {
    p.mu = 0.0;
    const Field e(5, 6, 0.0);
    CHECK(discrete_energy(PhaseField(5, 6, 1.0), e, e, p) == doctest::Approx(0.0).epsilon(1e-25));
  }
  SUBCASE("zero field sits on top of the well") {
    p.mu = 0.0;
    const Field e(5, 6, 0.0);
    CHECK(discrete_energy(PhaseField(5, 6, 0.0), e, e, p) ==
          doctest::Approx(30.0 / p.eps).epsilon(1e-13));
  }
  SUBCASE("random instance matches the dense-matrix quadratic form") {
    std::mt19937 rng(37);
    p.mu = 80.0;
    p.lambda1 = 1.0;
    p.lambda2 = 1.5;
    p.eps1 = 0.5;
    const int m1 = 6, m2 = 6;
    const PhaseField u = random_field(m1, m2, rng, -1.5, 1.5);
    const Field e1 = random_field(m1, m2, rng, 0.0, 0.4);
    const Field e2 = random_field(m1, m2, rng, 0.0, 0.4);

    const Eigen::MatrixXd dh = oracle::assemble_dense_laplacian(m1, m2, p.h);
    Eigen::VectorXd uv(m1 * m2);
    for (int i = 0; i < m1 * m2; ++i) uv[i] = u.v[i];
    double expected = -0.5 * p.eps * uv.dot(dh * uv);
    for (int i = 0; i < m1 * m2; ++i) {
      expected += double_well(u.v[i]) / p.eps;
      const double H = heaviside(u.v[i], p.eps1);
      expected += p.mu * (p.lambda1 * H * e1.v[i] + p.lambda2 * (1.0 - H) * e2.v[i]);
    }
    CHECK(discrete_energy(u, e1, e2, p) == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("gradient part is nonnegative and vanishes on constants") {
    std::mt19937 rng(38);
    ModelParams q;
    q.mu = 0.0;
    q.eps = 1.0;
    q.h = 1.0;
    const Field e(7, 7, 0.0);
    // subtract the well part to isolate the quadratic form
    for (int rep = 0; rep < 5; ++rep) {
      const PhaseField u = random_field(7, 7, rng, -2.0, 2.0);
      double well = 0.0;
      for (double x : u.v) well += double_well(x);
      CHECK(discrete_energy(u, e, e, q) - well >= -1e-12);
    }
    const PhaseField c(7, 7, 0.35);
    double well = 0.0;
    for (double x : c.v) well += double_well(x);
    CHECK(discrete_energy(c, e, e, q) - well == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.eps = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.mu = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.dt = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
