#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qspectral/generate.hpp"
#include "qspectral/scalc.hpp"

using namespace qspectral;

namespace {

HMatrix generated(std::size_t n, std::size_t nil, std::uint64_t seed) {
  Rng rng(seed);
  GeneratorOptions o;
  o.n = n;
  o.nilpotent_dim = nil;
  return generate_matrix(o, rng).a;
}

}  // namespace

TEST_SUITE("scalc") {

TEST_CASE("intrinsic reflection") {
  const IntrinsicFn e = fn::exp();
  for (const cplx z : {cplx(0.3, 0.7), cplx(-1.0, 2.0), cplx(0.5, -0.25)}) {
    CHECK(std::abs(e(std::conj(z)) - std::conj(e(z))) <= 1e-15);
    CHECK(std::abs(e(z) - std::exp(z)) <= 1e-14 * std::abs(std::exp(z)));
  }
  CHECK(e(cplx(0.7, 0.0)).imag() == 0.0);
  CHECK(e.f0(0.5, 1.0) == doctest::Approx(std::exp(0.5) * std::cos(1.0)));
  CHECK(e.f1(0.5, 1.0) == doctest::Approx(std::exp(0.5) * std::sin(1.0)));
}

TEST_CASE("holomorphy residual") {
  for (const auto& f : {fn::exp(), fn::poly({1.0, -2.0, 0.5}), fn::recip()})
    CHECK(holomorphy_residual(f, {0.7, 0.4}) <= 1e-6);
  const IntrinsicFn bar("conj", [](cplx z) { return std::conj(z); });
  CHECK(holomorphy_residual(bar, {0.7, 0.4}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("parse") {
  CHECK(fn::parse("poly:1,0,2")(cplx(2.0, 0.0)) == cplx(9.0, 0.0));
  CHECK(fn::parse("recip")(cplx(0.0, 2.0)) == cplx(0.0, -0.5));
  CHECK(fn::parse("exp")(cplx(0.0, 0.0)) == cplx(1.0, 0.0));
  CHECK(fn::parse("id")(cplx(1.0, 2.0)) == cplx(1.0, 2.0));
  CHECK(fn::parse("one")(cplx(1.0, 2.0)) == cplx(1.0, 0.0));
  CHECK_THROWS_AS(fn::parse("sin"), FormatError);
  CHECK_THROWS_AS(fn::parse("poly:"), FormatError);
  CHECK_THROWS_AS(fn::parse("poly:1,x"), FormatError);
}

TEST_CASE("admissibility") {
  const IntrinsicFn r = fn::recip();
  CHECK(r.admits({2.0, 0.0}, 1.0));
  CHECK_FALSE(r.admits({0.5, 0.0}, 1.0));
  const IntrinsicFn sel = fn::drazin_selector(0.1);
  CHECK(sel.admits({0.0, 0.0}, 0.05));
  CHECK(sel.admits({1.0, 0.0}, 0.5));
  CHECK_FALSE(sel.admits({0.0, 0.0}, 0.2));
  const IntrinsicFn g = fn::compose(fn::recip(), fn::poly({1.0, 1.0}));
  CHECK(g.admits({0.0, 0.0}, 0.5));
  CHECK_FALSE(g.admits({-1.0, 0.0}, 0.1));
}

TEST_CASE("contours") {
  const Spectrum s = s_spectrum(HMatrix::diagonal({Quaternion{}, Quaternion{2.0}}));
  const std::vector<EigenSphere> zero{{0.0, 0.0}};
  const SliceContour c = build_contours(s, zero);
  REQUIRE(c.circles.size() == 1);
  CHECK(std::abs(c.circles[0].center) <= 1e-12);
  CHECK(c.circles[0].radius <= 2.0 / 3.0);

  const SliceContour u = build_contours(s_spectrum(HMatrix::diagonal({kUnitJ})));
  REQUIRE(u.circles.size() == 2);
  CHECK(std::abs(u.circles[0].center - std::conj(u.circles[1].center)) <= 1e-12);
  CHECK(std::abs(std::abs(u.circles[0].center.imag()) - 1.0) <= 1e-12);

  ContourOptions bad;
  bad.radius = 1.5;
  CHECK_THROWS_WITH_AS(build_contours(s, zero, bad), doctest::Contains("radius"), MathError);
  const std::vector<EigenSphere> absent{{5.0, 0.0}};
  CHECK_THROWS_WITH_AS(build_contours(s, absent), "sphere is not part of the spectrum", MathError);

  Spectrum close;
  close.spheres = {{{0.0, 0.0}, 1}, {{1e-7, 0.0}, 1}};
  close.tol_sphere = 1e-12;
  CHECK_THROWS_WITH_AS(build_contours(close), "spectral sets not separated", MathError);

  // fitting halves a circle that would cross the pole of 1/z
  SliceContour wide;
  wide.circles.push_back({{1.0, 0.0}, 1.5, 64});
  const SliceContour fitted = fit_contours(wide, fn::recip());
  CHECK(fitted.circles[0].radius < 1.0);
}

TEST_CASE("unit and identity") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const HMatrix a = generated(4, 1, seed);
    CHECK(relative_deviation(HMatrix::identity(4), func_calc(fn::constant(1.0), a)) <= 1e-10);
    CHECK(relative_deviation(a, func_calc(fn::identity(), a)) <= 1e-9);
  }
}

TEST_CASE("normalization on random matrices") {
  Rng rng(32);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 6);
    HMatrix a = random_matrix(n, rng);
    const double r = s_spectrum(a).max_radius();
    if (r > 4.0) a = (4.0 / r) * a;
    CHECK(relative_deviation(HMatrix::identity(n), func_calc(fn::constant(1.0), a)) <= 1e-10);
  }
}

TEST_CASE("polynomials, exp and reciprocal against oracles") {
  Rng rng(30);
  for (int t = 0; t < 5; ++t) {
    const HMatrix a = generated(3, 0, 100 + static_cast<std::uint64_t>(t));
    const std::vector<double> c{0.5, -1.0, 0.25, 2.0};
    CHECK(relative_deviation(oracle::poly(c, a), func_calc(fn::poly(c), a)) <= 1e-8);
    CHECK(relative_deviation(a * a, func_calc(fn::poly({0.0, 0.0, 1.0}), a)) <= 1e-8);
    CHECK(relative_deviation(oracle::exp(a), func_calc(fn::exp(), a)) <= 1e-8);
    CHECK(relative_deviation(oracle::inverse(a), func_calc(fn::recip(), a)) <= 1e-8);
  }
}

TEST_CASE("independent of the contour radius") {
  const HMatrix a = generated(5, 2, 7);
  ContourOptions narrow;
  narrow.margin = 1.0 / 6.0;
  const HMatrix x = func_calc(fn::exp(), a);
  const HMatrix y = func_calc(fn::exp(), a, narrow);
  CHECK(relative_deviation(x, y) <= 1e-9);
}

TEST_CASE("quadrature failure reports the last delta") {
  // pole just outside the unit circle: the trapezoid rule converges too slowly
  const double p = 0.5 * (1.0 + 1e-5);
  const IntrinsicFn f("near-pole", [p](cplx z) { return 1.0 / (z - p); }, {cplx(p, 0.0)});
  SliceContour c;
  c.circles.push_back({{0.0, 0.0}, 0.5, 64});
  try {
    (void)func_calc(f, HMatrix::zero(2), c);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::string(e.what()).find("quadrature failed") != std::string::npos);
    CHECK(e.last_delta() > 0.0);
  }
}

TEST_CASE("Riesz projections") {
  const std::vector<EigenSphere> zero{{0.0, 0.0}};
  const HMatrix p = riesz_projection(HMatrix::diagonal({Quaternion{}, Quaternion{2.0}}), zero);
  CHECK(oracle::max_abs_diff(p, HMatrix::diagonal({Quaternion{1.0}, Quaternion{}})) <= 1e-10);

  const std::vector<EigenSphere> upper{{0.0, 1.0}};
  const HMatrix q = riesz_projection(HMatrix::diagonal({kUnitI, Quaternion{2.0}}), upper);
  CHECK(oracle::max_abs_diff(q, HMatrix::diagonal({Quaternion{1.0}, Quaternion{}})) <= 1e-10);

  const HMatrix a = generated(5, 2, 9);
  const Spectrum s = s_spectrum(a);
  std::vector<EigenSphere> all;
  for (const auto& e : s.spheres) all.push_back(e.sphere);
  CHECK(relative_deviation(HMatrix::identity(5), riesz_projection(a, all)) <= 1e-10);

  const std::vector<EigenSphere> first{all.front()};
  const std::vector<EigenSphere> rest(all.begin() + 1, all.end());
  const HMatrix p1 = riesz_projection(a, first);
  const HMatrix p2 = riesz_projection(a, rest);
  CHECK(relative_deviation(p1, p1 * p1) <= 1e-9);
  CHECK(relative_deviation(p1 * a, a * p1) <= 1e-9);
  CHECK(relative_deviation(HMatrix::identity(5), p1 + p2) <= 1e-9);
  CHECK(frobenius_norm(p1 * p2) <= 1e-9 * (1.0 + frobenius_norm(p1)));
}

TEST_CASE("spectral mapping examples") {
  const auto id = spectral_mapping_check(fn::identity(), HMatrix::diagonal({kUnitI, Quaternion{2.0}}));
  CHECK(id.match.ok(1e-7));

  const auto sq = spectral_mapping_check(fn::poly({0.0, 0.0, 1.0}), HMatrix::diagonal({Quaternion{1.0, 1.0}, Quaternion{}}));
  CHECK(sq.match.ok(1e-7));
  CHECK(sq.computed.contains({0.0, 2.0}, 1e-7));
  CHECK(sq.computed.contains({0.0, 0.0}, 1e-7));

  const auto rc = spectral_mapping_check(fn::recip(), HMatrix::diagonal({Quaternion{2.0}, kUnitI}));
  CHECK(rc.match.ok(1e-7));
  CHECK(rc.computed.contains({0.5, 0.0}, 1e-7));
  CHECK(rc.computed.contains({0.0, 1.0}, 1e-7));
}

TEST_CASE("composition examples") {
  Rng rng(31);
  const HMatrix a = random_matrix(2, rng);
  const auto sq = fn::poly({0.0, 0.0, 1.0});
  const CompositionReport r = composition_check(sq, sq, a);
  CHECK(relative_deviation(power(a, 4), r.nested) <= 1e-7);
  CHECK(relative_deviation(power(a, 4), r.composed) <= 1e-7);

  const HMatrix b = generated(3, 0, 44);
  const auto shift = fn::poly({1.0, 1.0});
  const CompositionReport s = composition_check(shift, fn::recip(), b);
  CHECK(relative_deviation(oracle::inverse(b + HMatrix::identity(3)), s.composed) <= 1e-8);
  CHECK(s.deviation <= 1e-8);

  const CompositionReport t = composition_check(fn::identity(), fn::exp(), b);
  CHECK(t.deviation <= 1e-9);
}

TEST_CASE("product rule") {
  const HMatrix a = generated(4, 1, 55);
  const auto f = fn::poly({1.0, 2.0});
  const auto g = fn::exp();
  const HMatrix fg = func_calc(fn::product(f, g), a);
  CHECK(relative_deviation(fg, func_calc(f, a) * func_calc(g, a)) <= 1e-8);
  // exp(z)^2 = exp(2z)
  const HMatrix e = func_calc(fn::exp(), a);
  CHECK(relative_deviation(func_calc(fn::exp(), 2.0 * a), e * e) <= 1e-8);
}

}
