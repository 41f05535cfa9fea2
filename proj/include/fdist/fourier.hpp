#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdist/group.hpp"
#include "fdist/irreps.hpp"
#include "fdist/linalg.hpp"

namespace fdist {

/// A complex function on a finite group, i.e. an element of A(G).
struct AFunction {
  AFunction(FiniteGroup g, std::vector<cplx> v);

  FiniteGroup group;
  std::vector<cplx> values;  // values[g] = f(g)
};

/// sum_g c_g lambda_g in the group von Neumann algebra VN(G).
struct GroupAlgebraElement {
  GroupAlgebraElement(FiniteGroup g, std::vector<cplx> c);

  FiniteGroup group;
  std::vector<cplx> coeffs;

  /// lambda_g itself.
  static GroupAlgebraElement basis(const FiniteGroup& g, int element);
};

/// One block per irrep, in `IrrepTable` order.
struct FourierBlocks {
  std::vector<Matrix> blocks;
};

/// F_pi = sum_g f(g) pi(g)^*.
FourierBlocks fourier_transform(const AFunction& f, const IrrepTable& table);

/// f(g) = (1/|G|) sum_pi d_pi Tr(pi(g) F_pi), the exact inverse of
/// `fourier_transform`.
AFunction fourier_inverse(const FourierBlocks& b, const IrrepTable& table);

/// Per-irrep terms (d_pi / |G|) ||F_pi||_1 of the Fourier algebra norm.
std::vector<double> a_norm_contributions(const AFunction& f, const IrrepTable& table);

/// ||f||_A = sum_pi (d_pi / |G|) ||F_pi||_1, normalized so ||delta_e|| = 1.
double a_norm(const AFunction& f, const IrrepTable& table);

/// X_pi = sum_g c_g pi(g).
std::vector<Matrix> vn_blocks(const GroupAlgebraElement& x, const IrrepTable& table);

/// Inverse of `vn_blocks`: c_g = (1/|G|) sum_pi d_pi Tr(X_pi pi(g)^*).
std::vector<cplx> vn_coefficients(std::span<const Matrix> blocks, const IrrepTable& table);

/// max_pi ||X_pi||_inf, the operator norm on l2(G).
double vn_norm(const GroupAlgebraElement& x, const IrrepTable& table);

/// Operator norm of sum_g c_g lambda_g as an explicit |G| x |G| matrix.
/// Independent of any irrep table; used as a cross-check.
double vn_norm_regular(const GroupAlgebraElement& x);

/// <x, f> = sum_g c_g f(g).
cplx pairing(const GroupAlgebraElement& x, const AFunction& f);

AFunction pointwise_product(const AFunction& a, const AFunction& b);

/// h -> f(g h)
AFunction translate_left(const AFunction& f, int g);

/// Convolution product in VN(G): (sum a_g lambda_g)(sum b_h lambda_h).
GroupAlgebraElement vn_product(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

/// f = sum_j a_j chi_j with chi_j(k) = exp(2 pi i j k / n) indexed by element
/// index k. For Z_n this is the character expansion; on other groups of the
/// same order it transports that expansion through the index identification.
AFunction from_cyclic_expansion(const FiniteGroup& g, std::span<const cplx> coeffs);

/// Projected gradient ascent of |<x, f>| over the VN unit ball (blocks
/// clipped to operator norm 1). Returns the value after each iteration; the
/// sequence is nondecreasing and approaches a_norm(f).
std::vector<double> dual_norm_ascent(const AFunction& f, const IrrepTable& table, int iterations,
                                     double step, std::uint64_t seed);

}  // namespace fdist
