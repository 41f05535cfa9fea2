#pragma once

#include <cstdint>
#include <vector>

#include "fdist/group.hpp"
#include "fdist/linalg.hpp"

namespace fdist {

/// Tolerance for representation invariants after unitary re-normalization.
inline constexpr double kRepTolerance = 1e-8;

struct Irrep {
  int dim = 0;
  std::vector<Matrix> matrices;  // one unitary dim x dim matrix per group element

  cplx character(int g) const { return matrices[g].trace(); }
};

/// A complete set of pairwise-inequivalent irreducible unitary
/// representations. Construction does not validate; see `check_irrep_table`.
class IrrepTable {
 public:
  IrrepTable(FiniteGroup group, std::vector<Irrep> irreps) : group_(std::move(group)), irreps_(std::move(irreps)) {}

  const FiniteGroup& group() const { return group_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  int size() const { return static_cast<int>(irreps_.size()); }
  std::vector<int> dims() const;
  int max_dim() const;
  int dim_sum() const;

 private:
  FiniteGroup group_;
  std::vector<Irrep> irreps_;
};

struct IrrepDiagnostics {
  double homomorphism_error = 0;   // max |pi(gh) - pi(g) pi(h)|
  double unitarity_error = 0;      // max |pi(g) pi(g)* - I|
  double character_norm_error = 0; // max |<chi, chi> - 1|
  double orthogonality_error = 0;  // max |<chi_a, chi_b>| over a != b
  int dim_square_sum = 0;

  bool valid(int order, double tol = kRepTolerance) const {
    return homomorphism_error <= tol && unitarity_error <= tol && character_norm_error <= tol &&
           orthogonality_error <= tol && dim_square_sum == order;
  }
};

IrrepDiagnostics check_irrep_table(const IrrepTable& table);

/// n x n permutation matrices of left translation, (lambda_g)_{gh, h} = 1.
std::vector<Matrix> regular_representation(const FiniteGroup& g);

/// Number of fresh seeds tried before giving up on a degenerate split.
inline constexpr int kIrrepMaxAttempts = 8;

/// Splits the regular representation with the eigenspaces of a random
/// Hermitian element of its commutant, keeps one representative per
/// character, and re-unitarizes. Output is sorted by dimension, then by
/// character vector (descending, rounded to 1e-6), so the trivial
/// representation is first. Deterministic in (g, seed).
IrrepTable irreps_of(const FiniteGroup& g, std::uint64_t seed = 0);

/// Rows follow `table.irreps()`, columns follow `group().conjugacy_classes()`.
Matrix character_table(const IrrepTable& table);

}  // namespace fdist
