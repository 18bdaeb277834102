#include "linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qspectral::detail {

Svd svd(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

int quaternionic_rank(const Eigen::VectorXd& sigma, double tol) {
  int count = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] > tol) ++count;
  return (count + 1) / 2;
}

CMatrix pseudo_inverse(const CMatrix& m, double tol) {
  const Svd s = svd(m);
  CMatrix result = CMatrix::Zero(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < s.sigma.size(); ++i) {
    if (s.sigma[i] <= tol) break;
    result += s.v.col(i) * (1.0 / s.sigma[i]) * s.u.col(i).adjoint();
  }
  return result;
}

Schur schur(const CMatrix& m) {
  Eigen::ComplexSchur<CMatrix> solver(m);
  return {solver.matrixT(), solver.matrixU()};
}

void swap_schur_diagonal(Schur& s, Eigen::Index k) {
  const cplx a = s.t(k, k);
  const cplx b = s.t(k + 1, k + 1);
  const cplx c = s.t(k, k + 1);
  // First column of the rotation is the eigenvector of [[a, c], [0, b]]
  // belonging to b.
  const double r = std::hypot(std::abs(c), std::abs(b - a));
  if (r == 0.0) return;
  const cplx x1 = c / r;
  const cplx x2 = (b - a) / r;
  Eigen::Matrix2cd g;
  g << x1, -std::conj(x2), x2, std::conj(x1);

  // T <- G^* T G on rows/cols k, k+1.
  s.t.middleRows(k, 2) = (g.adjoint() * s.t.middleRows(k, 2)).eval();
  s.t.middleCols(k, 2) = (s.t.middleCols(k, 2) * g).eval();
  s.u.middleCols(k, 2) = (s.u.middleCols(k, 2) * g).eval();
  s.t(k + 1, k) = 0.0;
  s.t(k, k) = b;
  s.t(k + 1, k + 1) = a;
}

void move_to_bottom(Schur& s, std::vector<bool> trailing) {
  const Eigen::Index n = s.t.rows();
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (trailing[static_cast<std::size_t>(k)] && !trailing[static_cast<std::size_t>(k + 1)]) {
        swap_schur_diagonal(s, k);
        std::swap(trailing[static_cast<std::size_t>(k)], trailing[static_cast<std::size_t>(k + 1)]);
        swapped = true;
      }
    }
  }
}

std::vector<cplx> eigenvalues(const CMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

CMatrix slice_scalar(std::size_t n, const cplx& z) {
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix d = CMatrix::Zero(2 * nn, 2 * nn);
  d.topLeftCorner(nn, nn).diagonal().setConstant(z);
  d.bottomRightCorner(nn, nn).diagonal().setConstant(std::conj(z));
  return d;
}

}  // namespace qspectral::detail
