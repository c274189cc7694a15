#pragma once

#include <Eigen/Dense>

namespace mcdiff {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Inverse through LU with partial pivoting. Throws SingularMatrix when the
/// reciprocal condition estimate falls below `rcond_floor`.
Matrix lu_inverse(const Matrix& a, double rcond_floor = 1e-14);

/// Solves a x = b through LU with partial pivoting (same singularity test).
Vector lu_solve(const Matrix& a, const Vector& b, double rcond_floor = 1e-14);

/// True when the Cholesky factorization of the symmetric part succeeds.
bool cholesky_succeeds(const Matrix& a);

/// ||A - A^T||_inf / ||A||_inf (0 for the zero matrix).
double relative_asymmetry(const Matrix& a);

/// Infinity norm (max absolute row sum).
double inf_norm(const Matrix& a);

/// Numerical rank from singular values: sigma_k > threshold * sigma_max.
int numerical_rank(const Matrix& a, double threshold = 1e-10);

/// Orthonormal basis (as columns) for the null space of `a`, same rank rule.
Matrix null_space_basis(const Matrix& a, double threshold = 1e-10);

/// Smallest eigenvalue of the symmetric part.
double min_symmetric_eigenvalue(const Matrix& a);

/// Orthogonal projector onto the column span of an orthonormal basis.
Matrix projector(const Matrix& orthonormal_basis);

} // namespace mcdiff
