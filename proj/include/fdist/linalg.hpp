#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace fdist {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

enum class Schatten { One, Two, Inf };

/// p = 1: trace norm, p = 2: Frobenius, p = inf: operator norm.
/// Throws `Error(Numeric)` on non-finite entries.
double schatten_norm(const Matrix& x, Schatten p);

/// Largest singular value. Closed form for 1x1 and 2x2, otherwise the top
/// eigenvalue of x* x.
double spectral_norm(const Matrix& x);

/// Nearest point (Frobenius metric) of the operator-norm ball of the given
/// radius: singular values are clipped at `radius`.
Matrix clip_to_spectral_ball(const Matrix& x, double radius = 1.0);

/// Unitary factor W V* of the polar decomposition x = (W V*)(V S V*).
Matrix polar_unitary(const Matrix& x);

struct SingularPair {
  double value = 0.0;
  Vector left;   // x * right = value * left
  Vector right;
};

SingularPair top_singular_pair(const Matrix& x);

Matrix kron(const Matrix& a, const Matrix& b);

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
Matrix gaussian_matrix(int rows, int cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) folded back into Q.
Matrix haar_unitary(int dim, Rng& rng);

}  // namespace fdist
