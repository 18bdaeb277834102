#include <doctest.h>

#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "qspectral/generate.hpp"
#include "qspectral/quat.hpp"

using namespace qspectral;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool close(const Quaternion& p, const Quaternion& q, double tol) { return norm(p - q) <= tol; }

}  // namespace

TEST_SUITE("quat") {

TEST_CASE("basis products") {
  const Quaternion one{1.0};
  CHECK(kUnitI * kUnitI == -one);
  CHECK(kUnitJ * kUnitJ == -one);
  CHECK(kUnitK * kUnitK == -one);
  CHECK(kUnitI * kUnitJ * kUnitK == -one);
  CHECK(kUnitI * kUnitJ == kUnitK);
  CHECK(kUnitJ * kUnitI == -kUnitK);
  CHECK(kUnitJ * kUnitK == kUnitI);
  CHECK(kUnitK * kUnitI == kUnitJ);
}

TEST_CASE("product agrees with the multiplication table") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    CHECK(close(p * q, oracle::basis_mul(p, q), 8.0 * kEps * norm(p) * norm(q)));
  }
}

TEST_CASE("norm is multiplicative and conj gives the squared norm") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    CHECK(std::abs(norm(p * q) - norm(p) * norm(q)) <= 8.0 * kEps * norm(p) * norm(q));
    const Quaternion pp = p * conj(p);
    CHECK(std::abs(pp.a - norm2(p)) <= 4.0 * kEps * norm2(p));
    CHECK(im_norm(pp) <= 4.0 * kEps * norm2(p));
  }
}

TEST_CASE("associative, distributive, not commutative") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    const Quaternion r = random_quaternion(rng);
    const double s = 8.0 * kEps * norm(p) * norm(q) * norm(r);
    CHECK(close((p * q) * r, p * (q * r), s));
    CHECK(close(p * (q + r), p * q + p * r, s));
    CHECK(close(conj(p * q), conj(q) * conj(p), s));
  }
  CHECK_FALSE(kUnitI * kUnitJ == kUnitJ * kUnitI);
}

TEST_CASE("small examples") {
  CHECK(Quaternion{1.0, 1.0} * Quaternion{1.0, -1.0} == Quaternion{2.0});
  CHECK(norm(Quaternion{1.0, 1.0, 1.0, 1.0}) == 2.0);
  CHECK(inv(kUnitI) == -kUnitI);
  CHECK(conj(Quaternion{2.0, 0.0, 3.0}) == Quaternion{2.0, 0.0, -3.0});
  CHECK(sphere_of(Quaternion{1.0, 2.0}) == EigenSphere{1.0, 2.0});
  CHECK(sphere_of(Quaternion{5.0}) == EigenSphere{5.0, 0.0});
  CHECK(sphere_of(kUnitJ) == sphere_of(kUnitK));
  CHECK(slice_point(3.0, 0.0) == cplx(3.0, 0.0));
}

TEST_CASE("inverse") {
  CHECK_THROWS_AS(inv(Quaternion{}), MathError);
  CHECK_THROWS_WITH(inv(Quaternion{}), "zero divisor");
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const Quaternion q = random_quaternion(rng);
    CHECK(close(inv(q) * q, Quaternion{1.0}, 8.0 * kEps));
    CHECK(close(q * inv(q), Quaternion{1.0}, 8.0 * kEps));
  }
}

TEST_CASE("spheres") {
  const EigenSphere s = sphere_of(Quaternion{1.0, 1.0, 1.0, 0.0});
  CHECK(s.u == 1.0);
  CHECK(s.v == doctest::Approx(std::sqrt(2.0)));
  CHECK(slice_point(s) == cplx(1.0, std::sqrt(2.0)));
  CHECK_THROWS_AS(slice_point(1.0, -0.5), std::invalid_argument);

  // every point of u + v S lies on the sphere
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Quaternion w = random_unit_quaternion(rng);
    const Quaternion unit_imag = im(w) / im_norm(w);
    const Quaternion q = Quaternion{2.0} + 3.0 * unit_imag;
    CHECK(on_sphere(q, {2.0, 3.0}, 1e-14));
    // conjugation keeps the sphere
    const Quaternion h = random_quaternion(rng);
    CHECK(on_sphere(h * q * inv(h), {2.0, 3.0}, 1e-13));
  }
  CHECK(sphere_of(cplx(1.0, -2.0)) == EigenSphere{1.0, 2.0});
  CHECK(sphere_distance({0.0, 0.0}, {3.0, 4.0}) == 5.0);
  CHECK(same_sphere({1.0, 1.0}, {1.0 + 1e-9, 1.0}, 1e-8));
  CHECK_FALSE(same_sphere({1.0, 1.0}, {1.0, 1.1}, 1e-8));
}

TEST_CASE("printing") {
  std::ostringstream os;
  os << Quaternion{1.0, 2.0, -3.0, 4.0};
  CHECK(os.str() == "1 + 2i - 3j + 4k");
  std::ostringstream ss;
  ss << EigenSphere{0.5, 2.0};
  CHECK(ss.str().find("u=0.5") != std::string::npos);
}

}
