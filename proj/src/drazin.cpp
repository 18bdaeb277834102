#include "qspectral/drazin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "linalg.hpp"
#include "qspectral/geninv.hpp"

namespace qspectral {

namespace {

constexpr double kSubspaceTol = 1e-6;
// Contour routes need the zero sphere at least this far (relative to ||A||)
// from the nonzero spectrum.
constexpr double kMinZeroGap = 1e-3;
constexpr double kCommuteTol = 1e-10;

HMatrix identity_minus(const HMatrix& m) { return HMatrix::identity(m.size()) - m; }

DrazinResult finish(const HMatrix& a, HMatrix b, unsigned k, const char* route) {
  DrazinResult r;
  // Index 0 means A is invertible and the projection vanishes exactly.
  r.projection = k == 0 ? HMatrix::zero(a.size()) : identity_minus(a * b);
  r.inverse = std::move(b);
  r.index = k;
  r.route = route;
  return r;
}

DrazinResult deferred(const HMatrix& a, const char* route) {
  DrazinResult r = drazin_algebraic(a);
  r.route = route;
  r.deferred = true;
  return r;
}

}  // namespace

unsigned index(const HMatrix& a, double scale) {
  const std::size_t n = a.size();
  int prev = static_cast<int>(n);
  for (unsigned k = 0; k <= n; ++k) {
    const int next = power_rank(a, k + 1, scale);
    if (next == prev) return k;
    prev = next;
  }
  return static_cast<unsigned>(n);
}

unsigned ascent(const HMatrix& a) {
  const std::size_t n = a.size();
  std::vector<QVector> prev = range_kernel_basis(a, 0).kernel;
  for (unsigned k = 0; k <= n; ++k) {
    std::vector<QVector> next = range_kernel_basis(a, k + 1).kernel;
    if (next.size() == prev.size() && subspace_distance(n, prev, next) <= kSubspaceTol) return k;
    prev = std::move(next);
  }
  return static_cast<unsigned>(n);
}

unsigned descent(const HMatrix& a) {
  const std::size_t n = a.size();
  std::vector<QVector> prev = range_kernel_basis(a, 0).range;
  for (unsigned k = 0; k <= n; ++k) {
    std::vector<QVector> next = range_kernel_basis(a, k + 1).range;
    if (next.size() == prev.size() && subspace_distance(n, prev, next) <= kSubspaceTol) return k;
    prev = std::move(next);
  }
  return static_cast<unsigned>(n);
}

DecompositionReport decomposition_check(const HMatrix& a, unsigned k) {
  const std::size_t n = a.size();
  const RangeKernel rk = range_kernel_basis(a, k);
  DecompositionReport r;
  r.range_dim = rk.range.size();
  r.kernel_dim = rk.kernel.size();
  if (r.range_dim + r.kernel_dim != n || n == 0) return r;

  std::vector<QVector> cols = rk.range;
  cols.insert(cols.end(), rk.kernel.begin(), rk.kernel.end());
  r.min_singular = smallest_singular_value(HMatrix::from_columns(cols));

  const HMatrix ak = power(a, k);
  const double na = operator_norm(a);
  double kernel_res = 0.0;
  for (const auto& x : rk.kernel) {
    double s = 0.0;
    for (const auto& y : qspectral::apply(ak, x)) s += norm2(y);
    kernel_res = std::max(kernel_res, std::sqrt(s));
  }
  r.kernel_residual = scaled_residual(kernel_res, std::pow(na, static_cast<double>(k)));

  const HMatrix off = identity_minus(orthogonal_projector(n, rk.range));
  double inv_res = 0.0;
  for (const auto& x : rk.range) {
    double s = 0.0;
    for (const auto& y : qspectral::apply(off, qspectral::apply(a, x))) s += norm2(y);
    inv_res = std::max(inv_res, std::sqrt(s));
  }
  r.invariance = scaled_residual(inv_res, na);
  return r;
}

unsigned nilpotency_index(const HMatrix& m, double scale) {
  const std::size_t n = m.size();
  const double nm = operator_norm(m);
  HMatrix mk = m;
  for (unsigned k = 1; k <= n; ++k) {
    const double s = std::max(operator_norm(mk), std::pow(std::max(scale, nm), static_cast<double>(k)));
    if (rank(mk, rank_tolerance(n, s)) == 0) return k;
    mk = mk * m;
  }
  return static_cast<unsigned>(n + 1);
}

unsigned nilpotent_part_index(const HMatrix& a, const HMatrix& b) {
  const HMatrix p = identity_minus(a * b);
  if (rank(p, rank_tolerance(a.size(), 1.0)) == 0) return 0;
  return nilpotency_index(a - a * a * b, operator_norm(a));
}

DrazinResult drazin_algebraic(const HMatrix& a, double scale) {
  const std::size_t n = a.size();
  if (n == 0) return finish(a, a, 0, "algebraic");
  const unsigned k = index(a, scale);
  if (k == 0) return finish(a, inverse(a), 0, "algebraic");

  const auto core = static_cast<Eigen::Index>(power_rank(a, k, scale));
  const auto nn = static_cast<Eigen::Index>(n);
  if (core == 0) return finish(a, HMatrix::zero(n), k, "algebraic");

  detail::Schur s = detail::schur(complex_adjoint(a).matrix());
  const Eigen::Index dim = 2 * nn;
  // The 2 (n - core) smallest eigenvalues form the nilpotent block.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::abs(s.t(x, x)) < std::abs(s.t(y, y));
  });
  std::vector<bool> trailing(static_cast<std::size_t>(dim), false);
  for (Eigen::Index i = 0; i < 2 * (nn - core); ++i) trailing[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
  detail::move_to_bottom(s, trailing);

  const Eigen::Index p = 2 * core;
  const Eigen::Index q = dim - p;
  const CMatrix t11 = s.t.topLeftCorner(p, p);
  const CMatrix t12 = s.t.topRightCorner(p, q);
  const CMatrix nil = s.t.bottomRightCorner(q, q);
  const CMatrix t11_inv = t11.triangularView<Eigen::Upper>().solve(CMatrix::Identity(p, p));

  // Off-diagonal block sum_{j<k} T11^-(j+2) T12 N^j.
  CMatrix y = CMatrix::Zero(p, q);
  CMatrix left = t11_inv * t11_inv;
  CMatrix right = CMatrix::Identity(q, q);
  for (unsigned j = 0; j < k; ++j) {
    y += left * t12 * right;
    left = left * t11_inv;
    right = right * nil;
  }
  CMatrix td = CMatrix::Zero(dim, dim);
  td.topLeftCorner(p, p) = t11_inv;
  td.topRightCorner(p, q) = y;
  const CMatrix xd = s.u * td * s.u.adjoint();
  return finish(a, from_adjoint(xd, 1e-7 * (1.0 + xd.norm())), k, "algebraic");
}

double zero_gap(const Spectrum& spectrum) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& s : spectrum.spheres) {
    if (same_sphere(s.sphere, {0.0, 0.0}, spectrum.tol_sphere)) continue;
    gap = std::min(gap, std::hypot(s.sphere.u, s.sphere.v));
  }
  return gap;
}

DrazinResult drazin_via_projection(const HMatrix& a, const ContourOptions& options) {
  const std::size_t n = a.size();
  const Spectrum spectrum = s_spectrum(a);
  if (n == 0 || !spectrum.has_zero()) {
    DrazinResult r = finish(a, inverse(a), 0, "projection");
    r.projection = HMatrix::zero(n);
    return r;
  }
  if (spectrum.spheres.size() == 1) {
    // Only the zero sphere: the projection is the identity and A^D = 0.
    DrazinResult r = finish(a, HMatrix::zero(n), index(a), "projection");
    r.projection = HMatrix::identity(n);
    return r;
  }
  if (zero_gap(spectrum) < kMinZeroGap * operator_norm(a)) return deferred(a, "projection");

  const std::vector<EigenSphere> zero{{0.0, 0.0}};
  const HMatrix p = riesz_projection(a, zero, options);
  DrazinResult r;
  r.inverse = inverse(a + p) * identity_minus(p);
  r.projection = p;
  r.index = index(a);
  r.route = "projection";
  return r;
}

DrazinResult drazin_via_funcalc(const HMatrix& a, const ContourOptions& options) {
  const std::size_t n = a.size();
  const Spectrum spectrum = s_spectrum(a);
  std::vector<EigenSphere> nonzero;
  for (const auto& s : spectrum.spheres)
    if (!same_sphere(s.sphere, {0.0, 0.0}, spectrum.tol_sphere)) nonzero.push_back(s.sphere);
  if (n == 0 || nonzero.empty()) return finish(a, HMatrix::zero(n), index(a), "funcalc");
  if (spectrum.has_zero() && zero_gap(spectrum) < kMinZeroGap * operator_norm(a)) return deferred(a, "funcalc");

  const IntrinsicFn f = fn::recip();
  const SliceContour contour = fit_contours(build_contours(spectrum, nonzero, options), f);
  return finish(a, func_calc(f, a, contour), index(a), "funcalc");
}

DrazinRoute parse_route(const std::string& name) {
  if (name == "algebraic") return DrazinRoute::algebraic;
  if (name == "projection") return DrazinRoute::projection;
  if (name == "funcalc") return DrazinRoute::funcalc;
  throw FormatError("unknown route '" + name + "' (expected algebraic, projection or funcalc)");
}

const char* route_name(DrazinRoute route) {
  switch (route) {
    case DrazinRoute::algebraic: return "algebraic";
    case DrazinRoute::projection: return "projection";
    case DrazinRoute::funcalc: return "funcalc";
  }
  return "?";
}

DrazinResult drazin(const HMatrix& a, DrazinRoute route, const ContourOptions& options) {
  switch (route) {
    case DrazinRoute::projection: return drazin_via_projection(a, options);
    case DrazinRoute::funcalc: return drazin_via_funcalc(a, options);
    case DrazinRoute::algebraic: break;
  }
  return drazin_algebraic(a);
}

double DrazinResiduals::max() const { return std::max({commute, square, power, nilpotent}); }

DrazinResiduals verify_drazin(const HMatrix& a, const HMatrix& b, unsigned k) {
  if (a.size() != b.size()) throw DimensionError("verify_drazin: size mismatch");
  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  const double kd = static_cast<double>(k);
  const HMatrix ak = power(a, k);
  DrazinResiduals r;
  r.commute = scaled_residual(operator_norm(a * b - b * a), na * nb);
  r.square = scaled_residual(operator_norm(a * b * b - b), na * nb * nb + nb);
  r.power = scaled_residual(operator_norm(a * ak * b - ak), std::pow(na, kd + 1.0) * nb + std::pow(na, kd));
  const unsigned kn = std::max(k, 1u);
  const HMatrix nil = a - a * a * b;
  r.nilpotent = scaled_residual(operator_norm(power(nil, kn)), std::pow(na + na * na * nb, static_cast<double>(kn)));
  return r;
}

double ProjectionResiduals::max() const { return std::max({idempotent, commute, nilpotent, lemma}); }

ProjectionResiduals verify_projection(const HMatrix& a, const DrazinResult& d) {
  const HMatrix& p = d.projection;
  const double na = operator_norm(a);
  const double np = operator_norm(p);
  ProjectionResiduals r;
  r.idempotent = scaled_residual(operator_norm(p * p - p), np * np + np);
  r.commute = scaled_residual(operator_norm(p * a - a * p), 2.0 * na * np);
  const unsigned kn = std::max(d.index, 1u);
  r.nilpotent = scaled_residual(operator_norm(power(a * p, kn)), std::pow(na * np, static_cast<double>(kn)));
  r.lemma = relative_deviation(d.inverse, inverse(a + p) * identity_minus(p));
  return r;
}

double IdentityReport::max() const { return std::max({power, double_d, triple_d, mixed}); }

IdentityReport identity_suite(const HMatrix& a, unsigned k) {
  IdentityReport r;
  const HMatrix d = drazin_algebraic(a).inverse;
  const double na = operator_norm(a);
  HMatrix dj = d;
  for (unsigned j = 1; j <= k; ++j) {
    // A^j can be pure rounding noise; rank decisions use ||A||^j.
    const double scale = std::pow(na, static_cast<double>(j));
    r.power = std::max(r.power, relative_deviation(dj, drazin_algebraic(power(a, j), scale).inverse));
    dj = dj * d;
  }
  const HMatrix dd = drazin_algebraic(d).inverse;
  r.double_d = relative_deviation(a * a * d, dd);
  r.triple_d = relative_deviation(d, drazin_algebraic(dd).inverse);
  r.mixed = relative_deviation(a * d, d * dd);
  return r;
}

ProductReport commuting_product_check(const HMatrix& a, const HMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("commuting_product_check: size mismatch");
  ProductReport r;
  r.commute_residual = scaled_residual(operator_norm(a * b - b * a), operator_norm(a) * operator_norm(b));
  if (r.commute_residual > kCommuteTol) {
    std::ostringstream msg;
    msg << "operands do not commute (residual " << r.commute_residual << ")";
    throw MathError(msg.str());
  }
  const HMatrix lhs = drazin_algebraic(a * b).inverse;
  r.deviation = relative_deviation(lhs, drazin_algebraic(a).inverse * drazin_algebraic(b).inverse);
  return r;
}

HMatrix left_multiplication_operator(const HMatrix& a) {
  const std::size_t n = a.size();
  if (n > 4) throw DimensionError("left_multiplication_operator: n must be at most 4");
  HMatrix l(n * n);
  for (std::size_t blk = 0; blk < n; ++blk)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) l(blk * n + i, blk * n + j) = a(i, j);
  return l;
}

LeftMultReport left_mult_check(const HMatrix& a) {
  const HMatrix l = left_multiplication_operator(a);
  LeftMultReport r;
  r.index_a = index(a);
  r.index_l = index(l);
  r.deviation = relative_deviation(left_multiplication_operator(drazin_algebraic(a).inverse),
                                   drazin_algebraic(l).inverse);
  return r;
}

}  // namespace qspectral
