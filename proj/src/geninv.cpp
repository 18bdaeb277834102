#include "qspectral/geninv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linalg.hpp"

namespace qspectral {

namespace {

constexpr double kGroupVerifyTol = 1e-10;

double power_scale(const HMatrix& a, unsigned k, const HMatrix& ak) {
  return std::max(operator_norm(ak), std::pow(operator_norm(a), static_cast<double>(k)));
}

std::string residual_message(const std::string& what, double value) {
  std::ostringstream msg;
  msg << what << " (residual " << value << ")";
  return msg.str();
}

}  // namespace

GenInvResult make_gen_inv_result(const HMatrix& a, HMatrix b) {
  GenInvResult r;
  r.ab = a * b;
  r.ba = b * a;
  r.b = std::move(b);
  return r;
}

double GenInvReport::max_residual() const {
  return std::max({aba, bab, ab_idempotent, ba_idempotent, range_ab, kernel_ba, range_ba, kernel_ab});
}

GenInvReport check_generalized_inverse(const HMatrix& a, const HMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("check_generalized_inverse: size mismatch");
  const std::size_t n = a.size();
  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  const HMatrix ab = a * b;
  const HMatrix ba = b * a;
  const double nab = operator_norm(ab);
  const double nba = operator_norm(ba);

  GenInvReport r;
  r.aba = scaled_residual(operator_norm(ab * a - a), na * na * nb + na);
  r.bab = scaled_residual(operator_norm(ba * b - b), nb * nb * na + nb);
  r.ab_idempotent = scaled_residual(operator_norm(ab * ab - ab), nab * nab + nab);
  r.ba_idempotent = scaled_residual(operator_norm(ba * ba - ba), nba * nba + nba);

  const RangeKernel sa = range_kernel_basis(a, 1);
  const RangeKernel sb = range_kernel_basis(b, 1);
  const RangeKernel sab = range_kernel_basis(ab, 1);
  const RangeKernel sba = range_kernel_basis(ba, 1);
  r.range_ab = subspace_distance(n, sab.range, sa.range);
  r.kernel_ba = subspace_distance(n, sba.kernel, sa.kernel);
  r.range_ba = subspace_distance(n, sba.range, sb.range);
  r.kernel_ab = subspace_distance(n, sab.kernel, sb.kernel);
  r.ranks_agree = sa.range.size() == sb.range.size() && sa.range.size() == sab.range.size() &&
                  sa.range.size() == sba.range.size();
  return r;
}

HMatrix moore_penrose(const HMatrix& a) {
  if (a.empty()) return a;
  const CMatrix m = complex_adjoint(a).matrix();
  const double tol = rank_tolerance(a.size(), operator_norm(a));
  const CMatrix pinv = detail::pseudo_inverse(m, tol);
  return from_adjoint(pinv, 1e-9 * (1.0 + pinv.norm()));
}

HMatrix gen_inverse_from(const HMatrix& b, const HMatrix& p, const HMatrix& q, const HMatrix& a, double tol) {
  const std::size_t n = a.size();
  if (b.size() != n || p.size() != n || q.size() != n) throw DimensionError("gen_inverse_from: size mismatch");

  const GenInvReport rb = check_generalized_inverse(a, b);
  if (!(std::max(rb.aba, rb.bab) <= tol)) throw MathError(residual_message("B is not a generalized inverse of A", std::max(rb.aba, rb.bab)));

  const double nq = operator_norm(q);
  const double q_idem = scaled_residual(operator_norm(q * q - q), nq * nq + nq);
  if (!(q_idem <= tol)) throw MathError(residual_message("Q is not a projection", q_idem));
  const double q_range = subspace_distance(n, range_kernel_basis(q, 1).range, range_kernel_basis(a, 1).range);
  if (!(q_range <= tol)) throw MathError(residual_message("R(Q) differs from R(A)", q_range));

  const double np = operator_norm(p);
  const double p_idem = scaled_residual(operator_norm(p * p - p), np * np + np);
  if (!(p_idem <= tol)) throw MathError(residual_message("P is not a projection", p_idem));
  const double p_kernel = subspace_distance(n, range_kernel_basis(p, 1).kernel, range_kernel_basis(a, 1).kernel);
  if (!(p_kernel <= tol)) throw MathError(residual_message("N(P) differs from N(A)", p_kernel));

  return p * b * q;
}

HMatrix group_inverse_by_splitting(const HMatrix& a) {
  const std::size_t n = a.size();
  const RangeKernel rk = range_kernel_basis(a, 1);
  const std::size_t r = rk.range.size();
  if (r == 0) return HMatrix::zero(n);
  std::vector<QVector> cols = rk.range;
  cols.insert(cols.end(), rk.kernel.begin(), rk.kernel.end());
  const HMatrix m = HMatrix::from_columns(cols);
  HMatrix m_inv;
  try {
    m_inv = inverse(m);
  } catch (const SingularError&) {
    throw MathError("no commuting generalized inverse (index > 1)");
  }
  const HMatrix c = m_inv * a * m;
  HMatrix t(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) t(i, j) = c(i, j);
  const HMatrix t_inv = inverse(t);
  HMatrix core(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) core(i, j) = t_inv(i, j);
  return m * core * m_inv;
}

HMatrix group_inverse(const HMatrix& a) {
  const std::size_t n = a.size();
  const int r1 = rank(a);
  if (r1 != power_rank(a, 2)) throw MathError("no commuting generalized inverse (index > 1)");
  if (r1 == 0) return HMatrix::zero(n);

  const HMatrix a3 = power(a, 3);
  const CMatrix pinv3 = detail::pseudo_inverse(complex_adjoint(a3).matrix(), rank_tolerance(n, power_scale(a, 3, a3)));
  const HMatrix b = a * from_adjoint(pinv3, 1e-9 * (1.0 + pinv3.norm())) * a;

  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  const double commute = scaled_residual(operator_norm(a * b - b * a), 2.0 * na * nb);
  const GenInvReport rep = check_generalized_inverse(a, b);
  if (commute <= kGroupVerifyTol && rep.aba <= kGroupVerifyTol && rep.bab <= kGroupVerifyTol) return b;
  return group_inverse_by_splitting(a);
}

ReciprocalSpectrumReport reciprocal_spectrum_check(const HMatrix& a, const HMatrix& b) {
  ReciprocalSpectrumReport r;
  const Spectrum sa = s_spectrum(a);
  for (const auto& s : sa.spheres) {
    if (same_sphere(s.sphere, {0.0, 0.0}, sa.tol_sphere)) continue;
    const cplx w = 1.0 / slice_point(s.sphere);
    add_sphere(r.expected, sphere_of(w), s.mult, 1e-9 * (1.0 + std::abs(w)));
  }
  const Spectrum sb = s_spectrum(b);
  for (const auto& s : sb.spheres)
    if (!same_sphere(s.sphere, {0.0, 0.0}, sb.tol_sphere)) r.computed.push_back(s);
  r.match = match_spheres(r.expected, r.computed);
  return r;
}

ReciprocalSpectrumReport group_inverse_spectrum_check(const HMatrix& a) {
  return reciprocal_spectrum_check(a, group_inverse(a));
}

}  // namespace qspectral
