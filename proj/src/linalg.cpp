#include "mcdiff/linalg.hpp"

#include "mcdiff/errors.hpp"

#include <string>

namespace mcdiff {

namespace {

Eigen::PartialPivLU<Matrix> checked_lu(const Matrix& a, double rcond_floor) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw SingularMatrix("LU requested for a non-square or empty matrix");
  }
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > rcond_floor)) {
    throw SingularMatrix("matrix is numerically singular (rcond = " +
                         std::to_string(rcond) + ")");
  }
  return lu;
}

} // namespace

Matrix lu_inverse(const Matrix& a, double rcond_floor) {
  return checked_lu(a, rcond_floor).inverse();
}

Vector lu_solve(const Matrix& a, const Vector& b, double rcond_floor) {
  return checked_lu(a, rcond_floor).solve(b);
}

bool cholesky_succeeds(const Matrix& a) {
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::LLT<Matrix> llt(sym);
  return llt.info() == Eigen::Success;
}

double inf_norm(const Matrix& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

double relative_asymmetry(const Matrix& a) {
  const double scale = inf_norm(a);
  if (scale == 0.0) {
    return 0.0;
  }
  return inf_norm(a - a.transpose()) / scale;
}

int numerical_rank(const Matrix& a, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) {
    return 0;
  }
  const double cut = threshold * s(0);
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) {
      ++rank;
    }
  }
  return rank;
}

Matrix null_space_basis(const Matrix& a, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cut = s.size() > 0 ? threshold * s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) {
      ++rank;
    }
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

double min_symmetric_eigenvalue(const Matrix& a) {
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Matrix projector(const Matrix& orthonormal_basis) {
  return orthonormal_basis * orthonormal_basis.transpose();
}

} // namespace mcdiff
