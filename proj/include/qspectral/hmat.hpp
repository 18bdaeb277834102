#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "qspectral/quat.hpp"

namespace qspectral {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using QVector = std::vector<Quaternion>;

/// n x n quaternionic matrix, the right-linear operator u -> A u on H^n.
/// Entries are stored row-major.
class HMatrix {
 public:
  HMatrix() = default;
  explicit HMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  HMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static HMatrix identity(std::size_t n);
  static HMatrix zero(std::size_t n) { return HMatrix(n); }
  static HMatrix diagonal(std::span<const Quaternion> diag);
  static HMatrix diagonal(std::initializer_list<Quaternion> diag) {
    return diagonal(std::span<const Quaternion>(diag.begin(), diag.size()));
  }
  /// Square matrix whose columns are the given vectors.
  static HMatrix from_columns(std::span<const QVector> columns);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Quaternion& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Quaternion& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  std::span<const Quaternion> entries() const noexcept { return entries_; }
  std::span<Quaternion> entries() noexcept { return entries_; }

  QVector column(std::size_t j) const;

  HMatrix& operator+=(const HMatrix& other);
  HMatrix& operator-=(const HMatrix& other);
  HMatrix& operator*=(double s);

  friend bool operator==(const HMatrix&, const HMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Quaternion> entries_;
};

HMatrix operator+(HMatrix lhs, const HMatrix& rhs);
HMatrix operator-(HMatrix lhs, const HMatrix& rhs);
HMatrix operator-(HMatrix m);
HMatrix operator*(double s, HMatrix m);
HMatrix operator*(const HMatrix& lhs, const HMatrix& rhs);
inline HMatrix matmul(const HMatrix& lhs, const HMatrix& rhs) { return lhs * rhs; }

/// Left scalar action q A = (q I) A.
HMatrix scale_left(const Quaternion& q, const HMatrix& a);
/// Right scalar action A q = A (q I).
HMatrix scale_right(const HMatrix& a, const Quaternion& q);
/// A^k by repeated squaring; A^0 = I.
HMatrix power(const HMatrix& a, unsigned k);

QVector apply(const HMatrix& a, std::span<const Quaternion> x);
/// Quaternionic conjugate transpose.
HMatrix adjoint(const HMatrix& a);

/// The 2n x 2n complex image [[A1, A2], [-conj(A2), conj(A1)]] of
/// A = A1 + A2 j with A1, A2 complex in the slice plane C_i.
class ComplexAdjoint {
 public:
  ComplexAdjoint() = default;
  explicit ComplexAdjoint(CMatrix m);

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t quaternion_dim() const noexcept { return static_cast<std::size_t>(m_.rows() / 2); }

  /// Frobenius norm of J M J^-1 - conj(M); zero for every valid image.
  double structure_residual() const;

 private:
  CMatrix m_;
};

ComplexAdjoint complex_adjoint(const HMatrix& a);
/// Left inverse of complex_adjoint. The two copies of A1 and A2 carried by
/// M are averaged. Throws Error("not a quaternionic-adjoint matrix") when
/// the structure residual exceeds tol (default 1e-9 * ||M||_F).
HMatrix from_adjoint(const ComplexAdjoint& m, double tol = -1.0);
HMatrix from_adjoint(const CMatrix& m, double tol = -1.0);

/// Column image x -> [x1; -conj(x2)] of x = x1 + x2 j.
CVector embed_vector(std::span<const Quaternion> x);
QVector pull_vector(const CVector& c);

/// Singular values of the adjoint, descending (2n values, each appearing twice).
std::vector<double> singular_values(const HMatrix& a);
double operator_norm(const HMatrix& a);
double smallest_singular_value(const HMatrix& a);

/// Multiplier applied to the 2n * eps * scale rank threshold. Products of
/// floating-point similarity transforms leave residual singular values a
/// few orders above eps, so the bare backward-error bound is too tight.
inline constexpr double kRankSafety = 1e4;

double rank_tolerance(std::size_t n, double scale);
int rank(const HMatrix& a);
int rank(const HMatrix& a, double tol);
/// rank(A^k) with the threshold scaled by max(||A^k||, max(||A||, scale)^k),
/// so that rounding noise in a power of a nilpotent part is not counted.
/// A positive scale supplies the magnitude of the problem A came from when
/// A itself may be pure rounding noise.
int power_rank(const HMatrix& a, unsigned k, double scale = 0.0);

HMatrix inverse(const HMatrix& a);
QVector solve(const HMatrix& a, std::span<const Quaternion> b);

/// Orthonormal bases of R(A^k) and N(A^k) over H (right spans).
struct RangeKernel {
  std::vector<QVector> range;
  std::vector<QVector> kernel;
};
RangeKernel range_kernel_basis(const HMatrix& a, unsigned k);

/// Orthonormal basis (right H-span) of the J-closed complex subspace spanned
/// by the columns of c. The complex dimension must be even.
std::vector<QVector> quaternionic_basis(const CMatrix& c);
/// Orthogonal projector onto the right span of an orthonormal basis.
HMatrix orthogonal_projector(std::size_t n, std::span<const QVector> basis);
/// ||P_a - P_b||_2 for the orthogonal projectors onto two right spans;
/// 0 for equal subspaces, 1 when the dimensions differ.
double subspace_distance(std::size_t n, std::span<const QVector> a, std::span<const QVector> b);
/// Projector onto span(range) along span(kernel). Throws SingularError when
/// the two spans do not form a direct sum of H^n.
HMatrix oblique_projector(std::size_t n, std::span<const QVector> range, std::span<const QVector> kernel);

double frobenius_norm(const HMatrix& a);
/// ||A - B||_2 / max(1, ||A||_2).
double relative_deviation(const HMatrix& a, const HMatrix& b);

}  // namespace qspectral
