#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

#include "qspectral/error.hpp"

namespace qspectral {

using cplx = std::complex<double>;

/// Real quaternion a + b i + c j + d k.
struct Quaternion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double a_, double b_ = 0.0, double c_ = 0.0, double d_ = 0.0)
      : a(a_), b(b_), c(c_), d(d_) {}

  constexpr Quaternion& operator+=(const Quaternion& q) {
    a += q.a; b += q.b; c += q.c; d += q.d;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& q) {
    a -= q.a; b -= q.b; c -= q.c; d -= q.d;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline constexpr Quaternion kUnitI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kUnitJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kUnitK{0.0, 0.0, 0.0, 1.0};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b, -q.c, -q.d}; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator/(Quaternion q, double s) { return q *= (1.0 / s); }

/// Hamilton product.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
  return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
          p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
          p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
          p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }

constexpr Quaternion conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }
constexpr double re(const Quaternion& q) { return q.a; }
constexpr Quaternion im(const Quaternion& q) { return {0.0, q.b, q.c, q.d}; }
constexpr double norm2(const Quaternion& q) { return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d; }
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }
inline double im_norm(const Quaternion& q) { return std::sqrt(q.b * q.b + q.c * q.c + q.d * q.d); }

/// Multiplicative inverse; throws MathError("zero divisor") for q = 0.
inline Quaternion inv(const Quaternion& q) {
  const double n2 = norm2(q);
  if (n2 == 0.0) throw MathError("zero divisor");
  return conj(q) / n2;
}

/// Embeds a point of the canonical slice plane C_i.
constexpr Quaternion from_slice(const cplx& z) { return {z.real(), z.imag(), 0.0, 0.0}; }

/// The conjugacy class [q] = u + v S, stored as (u, v) with v >= 0.
struct EigenSphere {
  double u = 0.0;
  double v = 0.0;

  friend constexpr bool operator==(const EigenSphere&, const EigenSphere&) = default;
};

inline EigenSphere sphere_of(const Quaternion& q) { return {q.a, im_norm(q)}; }
inline EigenSphere sphere_of(const cplx& z) { return {z.real(), std::abs(z.imag())}; }

/// Canonical upper-half-plane representative u + v i of the sphere (u, v).
inline cplx slice_point(double u, double v) {
  if (v < 0.0) throw std::invalid_argument("slice_point: imaginary magnitude must be >= 0");
  return {u, v};
}
inline cplx slice_point(const EigenSphere& s) { return slice_point(s.u, s.v); }

/// Distance between the upper representatives; both spheres meet C_i in
/// conjugate pairs, so this is the slice-plane distance between the sets.
inline double sphere_distance(const EigenSphere& p, const EigenSphere& q) {
  return std::hypot(p.u - q.u, p.v - q.v);
}

inline bool same_sphere(const EigenSphere& p, const EigenSphere& q, double tol) {
  return std::abs(p.u - q.u) <= tol && std::abs(p.v - q.v) <= tol;
}

inline bool on_sphere(const Quaternion& q, const EigenSphere& s, double tol) {
  return same_sphere(sphere_of(q), s, tol);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const EigenSphere& s);

}  // namespace qspectral
