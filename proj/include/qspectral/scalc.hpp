#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qspectral/hmat.hpp"
#include "qspectral/sspec.hpp"

namespace qspectral {

/// Intrinsic slice function, represented by its restriction to the upper
/// half of the slice plane C_i. Lower-half values are the reflection
/// conj(f(conj z)), so the intrinsic condition holds by construction.
class IntrinsicFn {
 public:
  using SliceMap = std::function<cplx(cplx)>;
  /// Extra admissibility test for a closed disk (center, radius).
  using DiskTest = std::function<bool(cplx, double)>;

  IntrinsicFn(std::string name, SliceMap upper, std::vector<cplx> poles = {}, DiskTest disk_test = {});

  const std::string& name() const noexcept { return name_; }
  const std::vector<cplx>& poles() const noexcept { return poles_; }
  bool has_disk_test() const noexcept { return static_cast<bool>(disk_test_); }

  cplx operator()(cplx z) const;

  /// True when the closed disk lies in the holomorphy domain: no pole (or
  /// its conjugate) inside, and the extra test (if any) passes.
  bool admits(cplx center, double radius) const;

  /// f0 and f1 of the slice decomposition f(u + v i) = f0(u, v) + i f1(u, v).
  double f0(double u, double v) const;
  double f1(double u, double v) const;

 private:
  std::string name_;
  SliceMap upper_;
  std::vector<cplx> poles_;
  DiskTest disk_test_;
};

namespace fn {

IntrinsicFn constant(double c);
/// Real-coefficient polynomial sum_k coeffs[k] z^k.
IntrinsicFn poly(std::vector<double> coeffs);
IntrinsicFn identity();
IntrinsicFn recip();
IntrinsicFn exp();
/// 0 on |z| < zero_radius, 1/z outside. Disks crossing |z| = zero_radius
/// are not admitted.
IntrinsicFn drazin_selector(double zero_radius);
/// g o f. Requires g to have point singularities only; a disk is admitted
/// when f admits it and f - p has no zero inside for every pole p of g.
IntrinsicFn compose(const IntrinsicFn& g, const IntrinsicFn& f);
IntrinsicFn product(const IntrinsicFn& f, const IntrinsicFn& g);

/// Parses "poly:c0,c1,...", "recip", "exp" (and "id", "one"). The
/// "drazin-selector" specifier depends on a spectrum and is resolved by
/// callers that have one.
IntrinsicFn parse(const std::string& spec);

}  // namespace fn

/// Cauchy-Riemann residual |df/dx + i df/dy| / 2 at z by central differences.
double holomorphy_residual(const IntrinsicFn& f, cplx z, double h = 1e-5);

struct ContourCircle {
  cplx center;
  double radius = 0.0;
  int nodes = 64;
};

/// Positively oriented circles in C_i, closed under conjugation.
struct SliceContour {
  std::vector<ContourCircle> circles;
};

struct ContourOptions {
  /// Fixed radius for every circle; must keep the separation margin.
  std::optional<double> radius;
  int nodes = 64;
  /// Radius = margin * gap, capped by max_radius.
  double margin = 1.0 / 3.0;
  double max_radius = 0.5;
};

/// Minimal slice distance between distinct points of the conjugate-closed
/// representative set of the spectrum (infinity for a single point).
double spectral_gap(const Spectrum& spectrum);

/// One circle per real sphere in subset, two (about z and conj z) per
/// non-real sphere. Throws MathError("spectral sets not separated") when
/// the gap is below 1e-6.
SliceContour build_contours(const Spectrum& spectrum, std::span<const EigenSphere> subset,
                            const ContourOptions& options = {});
SliceContour build_contours(const Spectrum& spectrum, const ContourOptions& options = {});

/// Halves circle radii until f admits every disk (at most 20 halvings).
SliceContour fit_contours(SliceContour contour, const IntrinsicFn& f);

struct QuadratureStats {
  int nodes_per_circle = 0;
  double last_delta = 0.0;
};

/// f(A) = (1/2pi) sum over circles of S_L^{-1}(s, A) ds_i f(s), composite
/// trapezoid with node doubling until successive results differ by at
/// most 1e-10 (1 + ||result||). Throws QuadratureError past 2^14 nodes.
HMatrix func_calc(const IntrinsicFn& f, const HMatrix& a, const SliceContour& contour,
                  QuadratureStats* stats = nullptr);

/// Contours around the full spectrum, fitted to f.
HMatrix func_calc(const IntrinsicFn& f, const HMatrix& a, const ContourOptions& options = {});

HMatrix riesz_projection(const HMatrix& a, std::span<const EigenSphere> subset,
                         const ContourOptions& options = {});

struct SpectralMappingReport {
  HMatrix value;                   ///< f(A)
  std::vector<SphereEntry> image;  ///< spheres of f at the spectral points
  Spectrum computed;               ///< s_spectrum(f(A))
  SpectrumMatchReport match;
};

SpectralMappingReport spectral_mapping_check(const IntrinsicFn& f, const HMatrix& a,
                                             const ContourOptions& options = {});

struct CompositionReport {
  HMatrix nested;    ///< g(f(A))
  HMatrix composed;  ///< (g o f)(A)
  double deviation = 0.0;
};

CompositionReport composition_check(const IntrinsicFn& f, const IntrinsicFn& g, const HMatrix& a,
                                    const ContourOptions& options = {});

}  // namespace qspectral
