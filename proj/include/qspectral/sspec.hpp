#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qspectral/hmat.hpp"

namespace qspectral {

struct SphereEntry {
  EigenSphere sphere;
  int mult = 0;
};

/// Computed S-spectrum: spheres with multiplicities summing to n, sorted by
/// (u, v).
struct Spectrum {
  std::vector<SphereEntry> spheres;
  double tol_sphere = 0.0;

  int total_multiplicity() const;
  double max_radius() const;
  /// Index of the sphere matching s within tol (default tol_sphere), or -1.
  int find(const EigenSphere& s, double tol = -1.0) const;
  bool contains(const EigenSphere& s, double tol = -1.0) const { return find(s, tol) >= 0; }
  bool has_zero() const { return contains({0.0, 0.0}); }
};

struct SpectrumOptions {
  /// Sphere merge / real-snap tolerance; default 1e-8 * (1 + ||A||).
  std::optional<double> tol_sphere;
  /// Scales the defect-aware cluster radius (see cluster_eigenvalues).
  double cluster_safety = 4.0;
};

double default_sphere_tolerance(const HMatrix& a);

/// Group of numerically coalesced eigenvalues of the adjoint.
struct EigenCluster {
  cplx centroid;
  double radius = 0.0;
  std::vector<int> members;
};

/// Partitions eigenvalues into clusters. A set of m eigenvalues counts as
/// one cluster when it lies within radius
///   max(tol_sphere, safety * norm * (2500 eps)^min(1, p/m))
/// of its centroid (p = 2 for clusters on the real axis, 1 otherwise),
/// its spread is consistent with the ring pattern of perturbed Jordan
/// blocks, and every other eigenvalue is farther from the centroid than the
/// radius. This covers the eps^(1/k) splitting of a defective eigenvalue.
/// Largest admissible clusters are extracted first.
std::vector<EigenCluster> cluster_eigenvalues(std::span<const cplx> eigs, double norm, double tol_sphere,
                                              double safety = 4.0);

/// Eigenvalues of the adjoint (2n values).
std::vector<cplx> adjoint_eigenvalues(const HMatrix& a);

/// Q_q(A) = A^2 - 2 Re(q) A + |q|^2 I.
HMatrix q_pencil(const HMatrix& a, const Quaternion& q);

Spectrum s_spectrum(const HMatrix& a, const SpectrumOptions& options = {});

/// Converts adjoint eigenvalue clusters into spheres. Upper-half clusters
/// map 1:1, real clusters 2:1, lower-half clusters are mirrors and skipped.
Spectrum spectrum_from_clusters(std::span<const EigenCluster> clusters, double tol_sphere);

/// S_L^{-1}(s, A) = -Q_s(A)^{-1} (A - conj(s) I).
HMatrix s_resolvent_left(const Quaternion& s, const HMatrix& a);

struct GelfandSequence {
  std::vector<unsigned> exponents;
  std::vector<double> estimates;  ///< ||A^k||^(1/k) for each exponent
  double value() const { return estimates.empty() ? 0.0 : estimates.back(); }
};

/// ||A^k||^(1/k) for k = 1, 2, 4, ... <= n_max, formed by repeated squaring
/// with running renormalization so large exponents do not overflow.
GelfandSequence spectral_radius_gelfand(const HMatrix& a, unsigned n_max);

struct SeriesResult {
  HMatrix value;
  unsigned terms = 0;
};

/// Partial sums of sum_n A^n a_n with a_n = sum_{k=0}^n conj(q)^(-k-1) q^(-n+k-1)
/// acting on the right. Stops once the term bound ||A^n|| (n+1) |q|^(-n-2)
/// stays below tol * ||partial sum|| for three consecutive n.
SeriesResult pseudo_resolvent_series(const Quaternion& q, const HMatrix& a, double tol = 1e-16,
                                     unsigned max_terms = 100000);

bool is_quasinilpotent(const HMatrix& a);

/// Multiset comparison of two sphere lists (multiplicity-expanded, nearest
/// unused partner). Used by the spectral mapping and reciprocity checks.
struct SphereMatch {
  EigenSphere expected;
  EigenSphere computed;
  double deviation = 0.0;
};

struct SpectrumMatchReport {
  std::vector<SphereMatch> pairs;
  int expected_count = 0;
  int computed_count = 0;
  double max_deviation = 0.0;
  bool ok(double tol) const { return expected_count == computed_count && max_deviation <= tol; }
};

SpectrumMatchReport match_spheres(std::span<const SphereEntry> expected, std::span<const SphereEntry> computed);

/// Adds s with multiplicity m, merging into an existing entry within tol.
void add_sphere(std::vector<SphereEntry>& list, const EigenSphere& s, int mult, double tol);

}  // namespace qspectral
