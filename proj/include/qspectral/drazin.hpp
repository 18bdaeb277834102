#pragma once

#include <string>
#include <vector>

#include "qspectral/hmat.hpp"
#include "qspectral/scalc.hpp"

namespace qspectral {

/// On H^n every quasinilpotent matrix is nilpotent, so the generalized
/// (Koliha) Drazin inverse and the Drazin inverse coincide; one code path
/// serves both.
struct DrazinResult {
  HMatrix inverse;
  unsigned index = 0;
  HMatrix projection;  ///< I - A A^D
  std::string route;
  /// Set when a contour route found the zero sphere too close to the rest
  /// of the spectrum and returned the algebraic result instead.
  bool deferred = false;
};

/// Smallest k >= 0 with rank A^k = rank A^(k+1); scale as in power_rank.
unsigned index(const HMatrix& a, double scale = 0.0);
/// Smallest k >= 0 with N(A^k) = N(A^(k+1)), compared as subspaces.
unsigned ascent(const HMatrix& a);
/// Smallest k >= 0 with R(A^k) = R(A^(k+1)), compared as subspaces.
unsigned descent(const HMatrix& a);

/// Checks that R(A^k) and N(A^k) split H^n.
struct DecompositionReport {
  std::size_t range_dim = 0;
  std::size_t kernel_dim = 0;
  double min_singular = 0.0;      ///< of the basis matrix [R | N]
  double kernel_residual = 0.0;   ///< ||A^k N|| / ||A||^k
  double invariance = 0.0;        ///< ||(I - P_R) A R|| / ||A||
  bool ok(std::size_t n, double tol) const {
    return range_dim + kernel_dim == n && min_singular > tol && kernel_residual <= tol && invariance <= tol;
  }
};
DecompositionReport decomposition_check(const HMatrix& a, unsigned k);

/// Smallest k >= 1 with N^k = 0, ranks measured against
/// max(||N^k||, scale^k); size + 1 when N is not nilpotent.
unsigned nilpotency_index(const HMatrix& n, double scale);
/// Nilpotency index of A - A^2 B as an operator on R(I - AB); 0 when that
/// subspace is trivial.
unsigned nilpotent_part_index(const HMatrix& a, const HMatrix& b);

/// Core-nilpotent split of the adjoint via a reordered Schur form. scale
/// is passed to the rank decisions (see power_rank).
DrazinResult drazin_algebraic(const HMatrix& a, double scale = 0.0);

/// Distance from 0 to the nearest nonzero spectral point (infinity if none).
double zero_gap(const Spectrum& spectrum);

/// (A + P)^-1 (I - P) with P the Riesz projection onto the zero sphere.
DrazinResult drazin_via_projection(const HMatrix& a, const ContourOptions& options = {});

/// 1/s integrated over contours around the nonzero spheres only.
DrazinResult drazin_via_funcalc(const HMatrix& a, const ContourOptions& options = {});

enum class DrazinRoute { algebraic, projection, funcalc };
DrazinRoute parse_route(const std::string& name);
const char* route_name(DrazinRoute route);
DrazinResult drazin(const HMatrix& a, DrazinRoute route = DrazinRoute::algebraic,
                    const ContourOptions& options = {});

/// Defining-identity residuals, each divided by the product of factor norms:
///   commute    ||AB - BA||          / (||A|| ||B||)
///   square     ||AB^2 - B||         / (||A|| ||B||^2 + ||B||)
///   power      ||A^(k+1)B - A^k||   / (||A||^(k+1) ||B|| + ||A||^k)
///   nilpotent  ||(A - A^2 B)^k||    / (||A|| + ||A||^2 ||B||)^k  (k >= 1)
struct DrazinResiduals {
  double commute = 0.0;
  double square = 0.0;
  double power = 0.0;
  double nilpotent = 0.0;
  double max() const;
  bool ok(double tol) const { return max() <= tol; }
};
DrazinResiduals verify_drazin(const HMatrix& a, const HMatrix& b, unsigned k);

/// P^2 = P, PA = AP, (AP)^k = 0 and (A + P)^-1 (I - P) = A^D.
struct ProjectionResiduals {
  double idempotent = 0.0;
  double commute = 0.0;
  double nilpotent = 0.0;
  double lemma = 0.0;
  double max() const;
};
ProjectionResiduals verify_projection(const HMatrix& a, const DrazinResult& r);

/// Max relative deviation for each of the four power identities.
struct IdentityReport {
  double power = 0.0;        ///< (A^j)^D vs (A^D)^j, j = 1..k
  double double_d = 0.0;     ///< (A^D)^D vs A^2 A^D
  double triple_d = 0.0;     ///< ((A^D)^D)^D vs A^D
  double mixed = 0.0;        ///< A^D (A^D)^D vs A A^D
  double max() const;
};
IdentityReport identity_suite(const HMatrix& a, unsigned k = 3);

struct ProductReport {
  double commute_residual = 0.0;
  double deviation = 0.0;  ///< (AB)^D vs A^D B^D
};
/// Rejects (MathError) operands whose commutator exceeds 1e-10 relative.
ProductReport commuting_product_check(const HMatrix& a, const HMatrix& b);

/// Matrix of B -> AB on column-vectorized n x n matrices: n diagonal copies
/// of A. Requires n <= 4.
HMatrix left_multiplication_operator(const HMatrix& a);

struct LeftMultReport {
  unsigned index_a = 0;
  unsigned index_l = 0;
  double deviation = 0.0;  ///< (L_A)^D vs L_(A^D)
};
LeftMultReport left_mult_check(const HMatrix& a);

}  // namespace qspectral
