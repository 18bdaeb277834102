#include "qspectral/hmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "linalg.hpp"

namespace qspectral {

namespace {

void require_same_size(const HMatrix& a, const HMatrix& b, const char* op) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << a.size() << " vs " << b.size() << ")";
    throw DimensionError(msg.str());
  }
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

HMatrix::HMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows)
    : n_(rows.size()), entries_(rows.size() * rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("HMatrix: rows must form a square grid");
    std::copy(row.begin(), row.end(), entries_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    ++i;
  }
}

HMatrix HMatrix::identity(std::size_t n) {
  HMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

HMatrix HMatrix::diagonal(std::span<const Quaternion> diag) {
  HMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

HMatrix HMatrix::from_columns(std::span<const QVector> columns) {
  const std::size_t n = columns.size();
  HMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != n) throw DimensionError("from_columns: columns must have length n");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

QVector HMatrix::column(std::size_t j) const {
  QVector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

HMatrix& HMatrix::operator+=(const HMatrix& other) {
  require_same_size(*this, other, "add");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

HMatrix& HMatrix::operator-=(const HMatrix& other) {
  require_same_size(*this, other, "subtract");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

HMatrix& HMatrix::operator*=(double s) {
  for (auto& q : entries_) q *= s;
  return *this;
}

HMatrix operator+(HMatrix lhs, const HMatrix& rhs) { return lhs += rhs; }
HMatrix operator-(HMatrix lhs, const HMatrix& rhs) { return lhs -= rhs; }
HMatrix operator-(HMatrix m) { return m *= -1.0; }
HMatrix operator*(double s, HMatrix m) { return m *= s; }

HMatrix operator*(const HMatrix& lhs, const HMatrix& rhs) {
  require_same_size(lhs, rhs, "matmul");
  const std::size_t n = lhs.size();
  HMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Quaternion& l = lhs(i, k);
      if (l == Quaternion{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
    }
  return out;
}

HMatrix scale_left(const Quaternion& q, const HMatrix& a) {
  HMatrix out = a;
  for (auto& e : out.entries()) e = q * e;
  return out;
}

HMatrix scale_right(const HMatrix& a, const Quaternion& q) {
  HMatrix out = a;
  for (auto& e : out.entries()) e = e * q;
  return out;
}

HMatrix power(const HMatrix& a, unsigned k) {
  HMatrix result = HMatrix::identity(a.size());
  HMatrix base = a;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

QVector apply(const HMatrix& a, std::span<const Quaternion> x) {
  if (x.size() != a.size()) throw DimensionError("apply: vector length mismatch");
  QVector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

HMatrix adjoint(const HMatrix& a) {
  HMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out(j, i) = conj(a(i, j));
  return out;
}

// --- complex adjoint -------------------------------------------------------

ComplexAdjoint::ComplexAdjoint(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() % 2 != 0)
    throw DimensionError("ComplexAdjoint: matrix must be square with even dimension");
}

double ComplexAdjoint::structure_residual() const {
  const Eigen::Index n = m_.rows() / 2;
  // J M J^-1 = [[M22, -M21], [-M12, M11]] for J = [[0, I], [-I, 0]].
  const auto m11 = m_.topLeftCorner(n, n);
  const auto m12 = m_.topRightCorner(n, n);
  const auto m21 = m_.bottomLeftCorner(n, n);
  const auto m22 = m_.bottomRightCorner(n, n);
  const double r1 = (m22 - m11.conjugate()).squaredNorm();
  const double r2 = (m21 + m12.conjugate()).squaredNorm();
  return std::sqrt(2.0 * (r1 + r2));
}

ComplexAdjoint complex_adjoint(const HMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  CMatrix m(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Quaternion& q = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      const cplx a1(q.a, q.b);
      const cplx a2(q.c, q.d);
      m(i, j) = a1;
      m(i, j + n) = a2;
      m(i + n, j) = -std::conj(a2);
      m(i + n, j + n) = std::conj(a1);
    }
  return ComplexAdjoint(std::move(m));
}

HMatrix from_adjoint(const CMatrix& m, double tol) {
  return from_adjoint(ComplexAdjoint(m), tol);
}

HMatrix from_adjoint(const ComplexAdjoint& adj, double tol) {
  const CMatrix& m = adj.matrix();
  if (tol < 0.0) tol = 1e-9 * m.norm();
  const double residual = adj.structure_residual();
  if (residual > tol) {
    std::ostringstream msg;
    msg << "not a quaternionic-adjoint matrix (structure residual " << residual << ")";
    throw Error(msg.str());
  }
  const auto n = static_cast<Eigen::Index>(adj.quaternion_dim());
  HMatrix out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx a1 = 0.5 * (m(i, j) + std::conj(m(i + n, j + n)));
      const cplx a2 = 0.5 * (m(i, j + n) - std::conj(m(i + n, j)));
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = {a1.real(), a1.imag(), a2.real(), a2.imag()};
    }
  return out;
}

CVector embed_vector(std::span<const Quaternion> x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  CVector c(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Quaternion& q = x[static_cast<std::size_t>(i)];
    c(i) = cplx(q.a, q.b);
    c(i + n) = -std::conj(cplx(q.c, q.d));
  }
  return c;
}

QVector pull_vector(const CVector& c) {
  const Eigen::Index n = c.size() / 2;
  QVector x(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx x2 = -std::conj(c(i + n));
    x[static_cast<std::size_t>(i)] = {c(i).real(), c(i).imag(), x2.real(), x2.imag()};
  }
  return x;
}

// --- spectral quantities ----------------------------------------------------

std::vector<double> singular_values(const HMatrix& a) {
  if (a.empty()) return {};
  Eigen::JacobiSVD<CMatrix> solver(complex_adjoint(a).matrix());
  const auto& s = solver.singularValues();
  return {s.data(), s.data() + s.size()};
}

double operator_norm(const HMatrix& a) {
  if (a.empty()) return 0.0;
  return singular_values(a).front();
}

double smallest_singular_value(const HMatrix& a) {
  if (a.empty()) return 0.0;
  return singular_values(a).back();
}

double rank_tolerance(std::size_t n, double scale) {
  return 2.0 * static_cast<double>(n) * kEps * kRankSafety * scale;
}

int rank(const HMatrix& a, double tol) {
  if (a.empty()) return 0;
  const auto s = singular_values(a);
  Eigen::VectorXd sigma = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  return detail::quaternionic_rank(sigma, tol);
}

int rank(const HMatrix& a) {
  if (a.empty()) return 0;
  const auto s = singular_values(a);
  Eigen::VectorXd sigma = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  return detail::quaternionic_rank(sigma, rank_tolerance(a.size(), s.front()));
}

namespace {

double power_scale(const HMatrix& a, unsigned k, const HMatrix& ak, double scale = 0.0) {
  return std::max(operator_norm(ak), std::pow(std::max(operator_norm(a), scale), static_cast<double>(k)));
}

}  // namespace

int power_rank(const HMatrix& a, unsigned k, double scale) {
  if (k == 0) return static_cast<int>(a.size());
  const HMatrix ak = power(a, k);
  return rank(ak, rank_tolerance(a.size(), power_scale(a, k, ak, scale)));
}

HMatrix inverse(const HMatrix& a) {
  if (a.empty()) return a;
  const CMatrix m = complex_adjoint(a).matrix();
  const auto s = singular_values(a);
  if (detail::quaternionic_rank(Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size())),
                                rank_tolerance(a.size(), s.front())) < static_cast<int>(a.size())) {
    std::ostringstream msg;
    msg << "operator not invertible (smallest singular value " << s.back() << ")";
    throw SingularError(msg.str(), s.back());
  }
  const CMatrix minv = m.partialPivLu().inverse();
  return from_adjoint(minv, 1e-7 * minv.norm());
}

QVector solve(const HMatrix& a, std::span<const Quaternion> b) {
  if (b.size() != a.size()) throw DimensionError("solve: right-hand side length mismatch");
  return qspectral::apply(inverse(a), b);
}

// --- subspaces --------------------------------------------------------------

std::vector<QVector> quaternionic_basis(const CMatrix& c) {
  const Eigen::Index rows = c.rows();
  const Eigen::Index n = rows / 2;
  CMatrix work = c;
  std::vector<QVector> basis;
  const Eigen::Index target = c.cols() / 2;
  for (Eigen::Index step = 0; step < target; ++step) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < work.cols(); ++j) {
      const double nj = work.col(j).norm();
      if (nj > best_norm) { best_norm = nj; best = j; }
    }
    if (best_norm <= 0.0) break;
    CVector v = work.col(best) / best_norm;
    // phi(v) = [-conj(v2); conj(v1)] is the image of the same quaternion
    // vector times j; it is orthogonal to v.
    CVector w(rows);
    w.head(n) = -v.tail(n).conjugate();
    w.tail(n) = v.head(n).conjugate();
    work -= v * (v.adjoint() * work);
    work -= w * (w.adjoint() * work);
    basis.push_back(pull_vector(v));
  }
  return basis;
}

HMatrix orthogonal_projector(std::size_t n, std::span<const QVector> basis) {
  HMatrix p(n);
  for (const auto& x : basis)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += x[i] * conj(x[j]);
  return p;
}

double subspace_distance(std::size_t n, std::span<const QVector> a, std::span<const QVector> b) {
  return operator_norm(orthogonal_projector(n, a) - orthogonal_projector(n, b));
}

HMatrix oblique_projector(std::size_t n, std::span<const QVector> range, std::span<const QVector> kernel) {
  if (range.size() + kernel.size() != n)
    throw DimensionError("oblique_projector: dimensions do not add up to n");
  std::vector<QVector> cols(range.begin(), range.end());
  cols.insert(cols.end(), kernel.begin(), kernel.end());
  const HMatrix m = HMatrix::from_columns(cols);
  HMatrix keep(n);
  for (std::size_t i = 0; i < range.size(); ++i) keep(i, i) = Quaternion{1.0};
  return m * keep * inverse(m);
}

RangeKernel range_kernel_basis(const HMatrix& a, unsigned k) {
  const std::size_t n = a.size();
  RangeKernel out;
  if (n == 0) return out;
  const HMatrix ak = power(a, k);
  const detail::Svd s = detail::svd(complex_adjoint(ak).matrix());
  const double tol = k == 0 ? 0.0 : rank_tolerance(n, power_scale(a, k, ak));
  const int r = k == 0 ? static_cast<int>(n) : detail::quaternionic_rank(s.sigma, tol);
  const auto nn = static_cast<Eigen::Index>(n);
  out.range = quaternionic_basis(s.u.leftCols(2 * r));
  out.kernel = quaternionic_basis(s.v.rightCols(2 * (nn - r)));
  return out;
}

double frobenius_norm(const HMatrix& a) {
  double s = 0.0;
  for (const auto& q : a.entries()) s += norm2(q);
  return std::sqrt(s);
}

double relative_deviation(const HMatrix& a, const HMatrix& b) {
  return operator_norm(a - b) / std::max(1.0, operator_norm(a));
}

}  // namespace qspectral
