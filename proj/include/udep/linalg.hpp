// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "udep/complex_matrix.hpp"
#include "udep/rng.hpp"

namespace udep {

/// Full spectral decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEig {
  std::vector<double> eigenvalues;
  CMat eigenvectors;  // columns
};

/// Eigendecomposition of a unitary matrix: U = V diag(exp(j phi)) V^H,
/// phases in the principal branch (-pi, pi].
struct UnitaryEig {
  std::vector<double> phases;
  CMat eigenvectors;
};

/// Economy SVD A = left * diag(singulars) * right^H, singulars non-increasing.
struct SvdResult {
  CMat left;
  std::vector<double> singulars;
  CMat right;
};

/// Cyclic Jacobi with complex rotations. Converged when the off-diagonal
/// Frobenius norm falls below 1e-12 * ||A||_F; hard cap 40 sweeps.
HermitianEig hermitian_eig(const CMat& a);

/// EVD of a unitary matrix via the commuting Hermitian pair
/// H = (U + U^H)/2, K = (U - U^H)/(2j). Eigenvalues of H with relative gap
/// below cluster_tol are grouped and split by diagonalizing the projected K.
UnitaryEig unitary_eig(const CMat& u, double cluster_tol = 1e-8);

/// Principal matrix logarithm of a unitary matrix; output is skew-Hermitian
/// with eigenvalues j*phi, phi in (-pi, pi] (eigenvalue -1 maps to j*pi).
CMat matrix_log_unitary(const CMat& u);

/// Matrix exponential of a skew-Hermitian matrix; output is unitary.
CMat matrix_exp_skew(const CMat& x);

SvdResult svd(const CMat& a);

/// Extends a matrix with orthonormal columns to a full square unitary.
CMat complete_unitary(const CMat& partial);

/// Frobenius-closest unitary matrix U_svd * V_svd^H.
CMat nearest_unitary(const CMat& a);

/// ||A^H A - I||_F.
double unitarity_defect(const CMat& a);

/// Haar-distributed unitary: QR of i.i.d. complex Gaussians with R-diagonal
/// phase correction.
CMat haar_unitary(std::size_t n, Rng& rng);

/// Haar-distributed rotation (real orthogonal, det +1).
CMat haar_rotation(std::size_t n, Rng& rng);

/// Determinant via LU with partial pivoting.
cplx determinant(const CMat& a);

}  // namespace udep
