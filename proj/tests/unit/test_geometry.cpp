#include <doctest.h>

#include <cmath>

#include <specnp/gamma_core.hpp>
#include <specnp/problem_model.hpp>

#include "../support/generators.hpp"

using namespace specnp;
using specnp::testing::Rng;

namespace {

const double r3 = std::sqrt(3.0);

Matrix2 mat(cplx a, cplx b, cplx c, cplx d) {
  Matrix2 m;
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("trdet of the example targets") {
  GammaPoint z = trdet(Matrix2::Zero());
  CHECK(z.s == cplx(0.0));
  CHECK(z.p == cplx(0.0));

  const GammaPoint h0 = trdet(mat(0, 0, -5, 2 * (r3 - 2)));
  CHECK(std::abs(h0.s - 2 * (r3 - 2)) < 1e-15);
  CHECK(std::abs(h0.p) < 1e-15);

  const GammaPoint h1 = trdet(mat(0, 0.5, 0, 2 * (2 - r3)));
  CHECK(std::abs(h1.s - 2 * (2 - r3)) < 1e-15);
  CHECK(std::abs(h1.p) < 1e-15);
}

TEST_CASE("spectral radius of small matrices") {
  CHECK(spectral_radius_2x2(Matrix2::Identity()) == doctest::Approx(1.0));
  CHECK(spectral_radius_2x2(mat(0, 1, 0, 0)) == doctest::Approx(0.0));
  CHECK(spectral_radius_2x2(mat(0, 1, -1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("magic function values") {
  const GammaPoint pt{cplx(0.3, -0.2), cplx(0.1, 0.05)};
  CHECK(std::abs(magic_phi(0.0, pt) + pt.s / 2.0) < 1e-15);
  CHECK(magic_phi(cplx(0.4, 0.1), GammaPoint{}) == cplx(0.0));
  // z = 1, (s, p) = (2 sqrt3 - 4, 0): -s / (2 - s) = (4 - 2 sqrt3) / (6 - 2 sqrt3).
  const double s = 2 * r3 - 4;
  const double expected = (4 - 2 * r3) / (6 - 2 * r3);
  CHECK(std::abs(magic_phi(1.0, {s, 0.0}) - expected) < 1e-15);
  CHECK_THROWS_AS(magic_phi(1.0, {2.0, 1.0}), Error);
}

TEST_CASE("magic function maps the disc into the closed disc") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const cplx z = testing::random_disc_point(rng, 1.0);
    const cplx u = testing::random_disc_point(rng, 1.0);
    const cplx w = testing::random_disc_point(rng, 1.0);
    const GammaPoint pt{u + w, u * w};
    if (std::abs(2.0 - z * pt.s) < 1e-6) continue;
    CHECK(std::abs(magic_phi(z, pt)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("Gamma membership") {
  CHECK(in_gamma({0.0, 0.0}));
  CHECK(in_gamma({2.0, 1.0}));
  CHECK_FALSE(in_gamma({3.0, 1.0}));
  CHECK(in_bgamma({2.0, 1.0}));
  CHECK(in_bgamma({0.0, -1.0}));
  CHECK_FALSE(in_bgamma({1.0, 0.25}));
  CHECK(in_open_g({0.0, 0.0}));
  CHECK_FALSE(in_open_g({2.0, 1.0}));
}

TEST_CASE("membership agrees with the eigenvalue radius") {
  Rng rng(12);
  int inside = 0;
  for (int i = 0; i < 500; ++i) {
    const Matrix2 w = testing::random_complex(rng, 2, 2) * 0.6;
    const double radius = testing::oracle_root_radius(w.trace(), w.determinant());
    if (std::abs(radius - 1.0) < 1e-8) continue;
    CHECK(in_gamma(trdet(w)) == (radius <= 1.0));
    CHECK(std::abs(spectral_radius_2x2(w) - radius) < 1e-10);
    inside += radius <= 1.0;
  }
  CHECK(inside > 50);
}

TEST_CASE("boundary and interior relations") {
  Rng rng(13);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int i = 0; i < 200; ++i) {
    const cplx u = std::polar(1.0, ang(rng));
    const cplx w = std::polar(1.0, ang(rng));
    const GammaPoint b{u + w, u * w};
    CHECK(in_bgamma(b));
    CHECK(in_gamma(b));
    const cplx x = testing::random_disc_point(rng, 0.9);
    const cplx y = testing::random_disc_point(rng, 0.9);
    const GammaPoint o{x + y, x * y};
    CHECK(in_open_g(o));
    CHECK_FALSE(in_bgamma(o));
  }
}

TEST_CASE("scaling") {
  const GammaPoint id = scale_gamma(1.0, {cplx(0.5, 0.1), cplx(0.2, 0.0)});
  CHECK(id.s == cplx(0.5, 0.1));
  CHECK(id.p == cplx(0.2, 0.0));
  const GammaPoint h = scale_gamma(0.5, {2.0, 1.0});
  CHECK(h.s == cplx(1.0));
  CHECK(h.p == cplx(0.25));

  Rng rng(14);
  for (int i = 0; i < 300; ++i) {
    const Matrix2 a = testing::random_complex(rng, 2, 2) * 0.5;
    const double rho = 0.8;
    const double radius = testing::oracle_root_radius(a.trace(), a.determinant());
    if (std::abs(radius - rho) < 1e-8) continue;
    CHECK(in_gamma(scale_gamma(1.0 / rho, trdet(a))) == (radius <= rho));
  }
}

TEST_CASE("pseudohyperbolic distance") {
  const cplx l(0.3, -0.4);
  CHECK(pseudo_hyperbolic(0.0, l) == doctest::Approx(0.5));
  CHECK(std::abs(pseudo_hyperbolic(0.0, 0.5) - 0.5) < 1e-15);
  CHECK(pseudo_hyperbolic(l, l) == 0.0);

  Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    const cplx a = testing::random_disc_point(rng, 0.95);
    const cplx b = testing::random_disc_point(rng, 0.95);
    const cplx alpha = testing::random_disc_point(rng, 0.9);
    auto mob = [&](cplx x) { return (x - alpha) / (1.0 - std::conj(alpha) * x); };
    const double d = pseudo_hyperbolic(a, b);
    CHECK(std::abs(d - pseudo_hyperbolic(b, a)) < 1e-12);
    CHECK(std::abs(d - pseudo_hyperbolic(mob(a), mob(b))) < 1e-12);
    CHECK(std::abs(d - testing::oracle_distance(a, b)) < 1e-12);
  }
}

TEST_CASE("two-point antipodal oracle") {
  CHECK(two_point_antipodal_solvable(0.0, 0.5, 0.0));
  CHECK(two_point_antipodal_solvable(0.0, 0.5, 0.4));
  CHECK_FALSE(two_point_antipodal_solvable(0.0, 0.5, 0.6));
  CHECK_FALSE(two_point_antipodal_solvable(0.0, 0.5, 0.5));
}

TEST_CASE("recovering h from a magic-function slice") {
  const std::array<cplx, 3> z = {-1.0, 0.0, 1.0};
  const GammaPoint zero = recover_h_from_slice(z, {0.0, 0.0, 0.0});
  CHECK(std::abs(zero.s) < 1e-15);
  CHECK(std::abs(zero.p) < 1e-15);

  const GammaPoint pt{r3 - 2, 0.0};
  std::array<cplx, 3> g;
  for (int k = 0; k < 3; ++k) g[k] = magic_phi(z[k], pt);
  const GammaPoint back = recover_h_from_slice(z, g);
  CHECK(std::abs(back.s - pt.s) < 1e-12);
  CHECK(std::abs(back.p) < 1e-12);

  // Constant slice 1: a z + b = b z + 1 for all z forces a = b = 1.
  const GammaPoint one = recover_h_from_slice(z, {1.0, 1.0, 1.0});
  CHECK(std::abs(one.s + 2.0) < 1e-12);
  CHECK(std::abs(one.p - 1.0) < 1e-12);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(magic_phi(z[k] * 0.5, one) - 1.0) < 1e-12);

  CHECK_THROWS_AS(recover_h_from_slice(z, {0.0, 1.0, 5.0}), Error);

  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const cplx u = testing::random_disc_point(rng, 0.99);
    const cplx w = testing::random_disc_point(rng, 0.99);
    const GammaPoint p{u + w, u * w};
    for (int k = 0; k < 3; ++k) g[k] = magic_phi(z[k], p);
    const GammaPoint r = recover_h_from_slice(z, g);
    CHECK(std::abs(r.s - p.s) < 1e-10);
    CHECK(std::abs(r.p - p.p) < 1e-10);
  }
}

TEST_CASE("Cayley transform") {
  CHECK(cayley(0.0) == cplx(1.0));
  CHECK(cayley(0.5) == cplx(3.0));
  CHECK_THROWS_AS(cayley(1.0), Error);
  CHECK_THROWS_AS(cayley_inv(-1.0), Error);
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const cplx l = testing::random_disc_point(rng, 0.99);
    CHECK(std::abs(cayley_inv(cayley(l)) - l) < 1e-12);
    CHECK(cayley(l).real() > 0.0);
  }
}

TEST_CASE("problem validation") {
  SpectralProblem sp;
  sp.nodes = {0.0, 0.5};
  sp.targets = {mat(0, 0, -5, r3 - 2), mat(0, 0.5, 0, 2 - r3)};
  CHECK(validate(sp).empty());

  SpectralProblem dup = sp;
  dup.nodes = {0.0, 0.0};
  CHECK_THROWS_WITH_AS(validate(dup), doctest::Contains("coincide"), Error);

  SpectralProblem scalar = sp;
  scalar.targets[1] = 3.0 * Matrix2::Identity();
  try {
    validate(scalar);
    FAIL("scalar target accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScalarTarget);
    CHECK(std::string(e.what()).find("target 1") != std::string::npos);
  }

  SpectralProblem outside = sp;
  outside.nodes[1] = 1.0;
  CHECK_THROWS_AS(validate(outside), Error);

  SpectralProblem nearly = sp;
  nearly.targets[0] = Matrix2::Identity() * 0.5;
  nearly.targets[0](0, 1) = 1e-9;
  CHECK(validate(nearly).size() == 1);
}

TEST_CASE("reduction to Gamma values") {
  SpectralProblem sp;
  sp.nodes = {0.0, 0.5};
  const double c = 2.0;
  sp.targets = {mat(0, 0, -5, (r3 - 2) * c), mat(0, 0.5, 0, (2 - r3) * c)};
  const GammaProblem gp = to_gamma_problem(sp);
  CHECK(std::abs(gp.values[0].s - 2 * (r3 - 2)) < 1e-15);
  CHECK(std::abs(gp.values[1].s - 2 * (2 - r3)) < 1e-15);
  CHECK(std::abs(gp.values[0].p) < 1e-15);

  SpectralProblem one;
  one.nodes = {0.2};
  one.targets = {mat(0, 1, 0, 0)};
  const GammaProblem g1 = to_gamma_problem(one);
  CHECK(g1.values[0].s == cplx(0.0));
  CHECK(g1.values[0].p == cplx(0.0));

  one.targets = {mat(3, 1, 0, 0)};
  try {
    to_gamma_problem(one);
    FAIL("radius 3 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideGamma);
  }

  GammaProblem empty;
  CHECK_THROWS_AS(validate(empty), Error);
}

TEST_CASE("default z-grid") {
  GammaProblem gp;
  gp.nodes = {0.0, 0.5};
  gp.values = {{r3 - 2, 0.0}, {2 - r3, 0.0}};
  const ZGrid g = default_zgrid(gp);
  CHECK(g.z[0] == cplx(-1.0));
  CHECK(g.z[1] == cplx(0.0));
  CHECK(g.z[2] == cplx(1.0));

  GammaProblem deg;
  deg.nodes = {0.1};
  deg.values = {{2.0, 1.0}};
  const ZGrid moved = default_zgrid(deg);
  CHECK(moved.z[0] == cplx(-1.0));
  CHECK(moved.z[1] == cplx(0.0));
  CHECK(std::abs(moved.z[2]) < 1.0);
  CHECK(moved.z[2].real() > 0.99);
  CHECK(is_admissible(moved, deg));
  CHECK_NOTHROW(validate(moved, deg));
  CHECK_THROWS_AS(validate(ZGrid{}, deg), Error);

  ZGrid twice;
  twice.z = {0.0, 0.0, 1.0};
  CHECK_FALSE(is_admissible(twice, gp));
}
