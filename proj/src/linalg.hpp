#pragma once

// Complex dense kernels used behind the quaternionic API. Everything here
// works on adjoint images (2n x 2n complex matrices).

#include <vector>

#include <Eigen/Core>

#include "qspectral/hmat.hpp"

namespace qspectral::detail {

struct Svd {
  CMatrix u;
  Eigen::VectorXd sigma;
  CMatrix v;
};

Svd svd(const CMatrix& m);

/// Number of complex singular values above tol, rounded to the quaternionic
/// rank (pairs).
int quaternionic_rank(const Eigen::VectorXd& sigma, double tol);

CMatrix pseudo_inverse(const CMatrix& m, double tol);

/// Schur form M = U T U^* with T upper triangular.
struct Schur {
  CMatrix t;
  CMatrix u;
};
Schur schur(const CMatrix& m);

/// Swaps adjacent diagonal entries k and k+1 of the triangular factor by a
/// unitary rotation, keeping M = U T U^*.
void swap_schur_diagonal(Schur& s, Eigen::Index k);

/// Reorders the Schur form so that entries with trailing[i] == true occupy
/// the bottom-right block, preserving the relative order within each group.
void move_to_bottom(Schur& s, std::vector<bool> trailing);

std::vector<cplx> eigenvalues(const CMatrix& m);

/// chi(q I_n) = diag(z I, conj(z) I) for q in C_i is the same as the
/// right multiplier used by the contour sums.
CMatrix slice_scalar(std::size_t n, const cplx& z);

}  // namespace qspectral::detail
