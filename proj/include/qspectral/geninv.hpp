#pragma once

#include <limits>
#include <vector>

#include "qspectral/hmat.hpp"
#include "qspectral/sspec.hpp"

namespace qspectral {

/// A generalized inverse B of A with the cached products AB and BA.
struct GenInvResult {
  HMatrix b;
  HMatrix ab;
  HMatrix ba;
};

GenInvResult make_gen_inv_result(const HMatrix& a, HMatrix b);

/// Residuals of the defining identities and of the range/kernel
/// relations. Identity residuals are divided by the product of the factor
/// norms (e.g. ||ABA - A|| / (||A||^2 ||B|| + ||A||)); subspace residuals
/// are projector distances.
struct GenInvReport {
  double aba = 0.0;             ///< ||ABA - A||
  double bab = 0.0;             ///< ||BAB - B||
  double ab_idempotent = 0.0;   ///< ||(AB)^2 - AB||
  double ba_idempotent = 0.0;   ///< ||(BA)^2 - BA||
  double range_ab = 0.0;        ///< R(AB) vs R(A)
  double kernel_ba = 0.0;       ///< N(BA) vs N(A)
  double range_ba = 0.0;        ///< R(BA) vs R(B)
  double kernel_ab = 0.0;       ///< N(AB) vs N(B)
  bool ranks_agree = true;      ///< rank AB = rank BA = rank A = rank B

  double max_residual() const;
  bool ok(double tol) const { return ranks_agree && max_residual() <= tol; }
};

GenInvReport check_generalized_inverse(const HMatrix& a, const HMatrix& b);

/// Pull-back of the complex pseudoinverse of the adjoint.
HMatrix moore_penrose(const HMatrix& a);

/// P B Q for a generalized inverse B of A, a projection Q onto R(A) and a
/// projection P with N(P) = N(A). Precondition violations raise MathError
/// naming the failing residual.
HMatrix gen_inverse_from(const HMatrix& b, const HMatrix& p, const HMatrix& q, const HMatrix& a,
                         double tol = 1e-8);

/// The commuting generalized inverse. Throws MathError
/// ("no commuting generalized inverse (index > 1)") when rank A != rank A^2.
HMatrix group_inverse(const HMatrix& a);

/// Group inverse by explicit R(A) + N(A) splitting (no pseudoinverse).
HMatrix group_inverse_by_splitting(const HMatrix& a);

/// Compares the nonzero spheres of B's spectrum with the spheres of the
/// reciprocals of A's nonzero spectral points.
struct ReciprocalSpectrumReport {
  std::vector<SphereEntry> expected;
  std::vector<SphereEntry> computed;
  SpectrumMatchReport match;
};

ReciprocalSpectrumReport reciprocal_spectrum_check(const HMatrix& a, const HMatrix& b);
ReciprocalSpectrumReport group_inverse_spectrum_check(const HMatrix& a);

/// diff / scale, with 0/0 read as 0.
inline double scaled_residual(double diff, double scale) {
  if (diff == 0.0) return 0.0;
  return scale > 0.0 ? diff / scale : std::numeric_limits<double>::infinity();
}

}  // namespace qspectral
