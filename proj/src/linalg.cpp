#include "fdist/linalg.hpp"

#include <cmath>

#include "fdist/error.hpp"

namespace fdist {

double schatten_norm(const Matrix& x, Schatten p) {
  if (!x.allFinite()) fail(ErrorKind::Numeric, "schatten_norm: non-finite matrix entry");
  if (x.size() == 0) return 0.0;
  if (p == Schatten::Two) return x.norm();
  Eigen::JacobiSVD<Matrix> svd(x);
  const auto& s = svd.singularValues();
  return p == Schatten::One ? s.sum() : s(0);
}

double spectral_norm(const Matrix& x) {
  if (x.rows() == 1 && x.cols() == 1) return std::abs(x(0, 0));
  if (x.rows() == 2 && x.cols() == 2) {
    // Largest eigenvalue of the Gram matrix [[a, b], [b*, c]]; this form
    // avoids the cancellation of the trace/determinant formula near
    // unitaries.
    const double a = x.col(0).squaredNorm(), c = x.col(1).squaredNorm();
    const cplx b = x.col(0).dot(x.col(1));
    const double half = 0.5 * (a - c);
    return std::sqrt(0.5 * (a + c) + std::sqrt(half * half + std::norm(b)));
  }
  if (x.size() == 0) return 0.0;
  const Matrix gram = x.rows() <= x.cols() ? Matrix(x * x.adjoint()) : Matrix(x.adjoint() * x);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

Matrix clip_to_spectral_ball(const Matrix& x, double radius) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues().cwiseMin(radius);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

Matrix polar_unitary(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

SingularPair top_singular_pair(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues()(0), svd.matrixU().col(0), svd.matrixV().col(0)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

Matrix haar_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace fdist
