#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fdist/fourier.hpp"
#include "fdist/group.hpp"
#include "fdist/irreps.hpp"
#include "fdist/parallel.hpp"

namespace fdist {

/// Optimizer budget for norm estimates.
struct Effort {
  int restarts = 64;
  int iterations = 500;
  double step = 0.1;
  long samples = 100000;       // random-sampling oracle at level 1
  long level_samples = 20000;  // random-sampling oracle at levels >= 2

  static Effort low();
  static Effort standard();
  static Effort high();
  /// "low" | "default" | "high"
  static Effort from_name(std::string_view name);
  Effort scaled(double factor) const;
};

/// The algebra isomorphism T: A(G) -> A(H), T(f) = f o t, induced by a
/// bijection t: H -> G. Its adjoint T*: VN(H) -> VN(G) sends lambda_h to
/// lambda_{t(h)}.
class InducedHom {
 public:
  /// `source_table` is for G = t.target(), `target_table` for H = t.source().
  InducedHom(GroupBijection t, IrrepTable source_table, IrrepTable target_table);

  const GroupBijection& bijection() const { return t_; }
  const IrrepTable& source_table() const { return source_; }
  const IrrepTable& target_table() const { return target_; }

  /// T^{-1}: A(H) -> A(G), induced by t^{-1}.
  InducedHom inverse() const;

  /// |G| x |H| matrix of T* on the lambda bases: column h is e_{t(h)}.
  Matrix adjoint_matrix() const;

  AFunction apply(const AFunction& f) const;

 private:
  GroupBijection t_;
  IrrepTable source_;
  IrrepTable target_;
};

/// T*(x): the coefficient of lambda_h moves to lambda_{t(h)}.
GroupAlgebraElement adjoint_image(const InducedHom& hom, const GroupAlgebraElement& x);

/// A linear map VN(H) -> VN(G) given on the lambda bases by a |G| x |H|
/// matrix M (lambda_h -> sum_g M(g, h) lambda_g), amplified to M_k.
///
/// Elements of M_k(VN(H)) are held as irrep blocks X_sigma of size
/// k d_sigma, laid out as sum_h C_h (x) sigma(h) with C_h in M_k.
class AmplifiedMap {
 public:
  using Blocks = std::vector<Matrix>;

  AmplifiedMap(const IrrepTable& domain, const IrrepTable& codomain, Matrix basis_map, int level);

  int level() const { return k_; }
  int domain_order() const { return n_dom_; }

  /// C_h = (1/|H|) sum_sigma d_sigma Tr_2[X_sigma (I (x) sigma(h)^*)].
  std::vector<Matrix> coefficients(const Blocks& x) const;
  /// sum_h C_h (x) sigma(h) for every domain irrep.
  Blocks domain_blocks(const std::vector<Matrix>& coeffs) const;
  /// sum_g (sum_h M(g,h) C_h) (x) pi(g) for every codomain irrep.
  Blocks image_blocks(const std::vector<Matrix>& coeffs) const;

  /// ||L(x)|| / ||x|| with both norms the max block operator norm.
  double ratio(const Blocks& x) const;
  /// Supergradient of ||L(x)|| at x (top singular pair of the largest image
  /// block pulled back through L*).
  Blocks ascent_direction(const Blocks& x) const;

  Blocks basis_blocks(int h) const;
  Blocks random_unitary_blocks(Rng& rng) const;
  Blocks embed(const std::vector<Matrix>& lower_level_coeffs) const;

 private:
  int k_;
  int n_dom_;
  int n_cod_;
  std::vector<int> dom_dims_;
  std::vector<int> cod_dims_;
  std::vector<std::vector<Matrix>> dom_mats_;  // [sigma][h]
  std::vector<std::vector<Matrix>> cod_mats_;  // [pi][g]
  Matrix map_;
};

struct OptimizerMeta {
  int restarts = 0;
  long total_iterations = 0;
  int converged_restarts = 0;
  long samples = 0;
  double ascent_value = 0;    // best over restarts
  double sampling_value = 0;  // best over random samples
  std::string source;         // "ascent" | "sampling" | "lower-level"
};

/// A certified lower bound: `value` is attained by `witness`, the M_k
/// coefficients C_h of an element of the domain unit ball.
struct NormResult {
  int level = 1;
  double value = 0;
  std::vector<Matrix> witness;
  OptimizerMeta meta;
};

/// Multi-start projected gradient ascent (blocks clipped to the spectral
/// unit ball) plus a random-sampling oracle over Haar-unitary blocks; the
/// larger of the two is returned. Restarts and sample chunks are independent
/// work items merged in index order.
NormResult maximize_amplified_norm(const AmplifiedMap& map, const Effort& effort, std::uint64_t seed,
                                   Execution exec, const std::vector<AmplifiedMap::Blocks>& extra_starts = {});

/// Ratio ||sum_g E_g (x) lambda_g|| / ||sum_h C_h (x) lambda_h|| with explicit
/// regular representations (E_g = sum_h M(g,h) C_h). Independent of irreps.
double amplified_ratio_regular(const FiniteGroup& domain, const FiniteGroup& codomain, const Matrix& basis_map,
                               const std::vector<Matrix>& coeffs);

/// Largest d_pi times level accepted by the amplified optimizer.
inline constexpr int kMaxAmplifiedBlock = 64;
/// Largest sum of irrep dimensions accepted by `cb_norm`.
inline constexpr int kMaxCbLevel = 8;

/// ||id_{M_k} (x) T|| = ||id_{M_k} (x) T*||, as a lower bound.
NormResult level_k_norm(const InducedHom& hom, int k, const Effort& effort, std::uint64_t seed,
                        Execution exec = Execution::Parallel);
inline NormResult op_norm(const InducedHom& hom, const Effort& effort, std::uint64_t seed,
                          Execution exec = Execution::Parallel) {
  return level_k_norm(hom, 1, effort, seed, exec);
}

/// Level-k norms for the requested levels, made nondecreasing in k by
/// carrying a lower level's witness upward (padded with zeros).
std::map<int, NormResult> level_norms(const InducedHom& hom, std::vector<int> levels, const Effort& effort,
                                      std::uint64_t seed, Execution exec = Execution::Parallel);

struct CbResult {
  double value = 0;
  int level = 0;  // sum of irrep dimensions of G
  std::vector<NormResult> levels;  // k = 1..level
};

/// Level-m norm with m = sum_pi d_pi(G): T* lands in VN(G), which embeds in
/// M_m, so the cb-norm is attained there.
CbResult cb_norm(const InducedHom& hom, const Effort& effort, std::uint64_t seed,
                 Execution exec = Execution::Parallel);

/// T*(ab) + T*(ba) - T*(a)T*(b) - T*(b)T*(a).
GroupAlgebraElement jordan_image(const InducedHom& hom, const GroupAlgebraElement& a, const GroupAlgebraElement& b);

/// vn_norm of the Jordan image of (lambda_h, lambda_k).
double jordan_basis_defect(const InducedHom& hom, int h, int k);

struct JordanResult {
  double value = 0;        // best over basis pairs, random pairs, refinement
  double basis_value = 0;  // best over lambda-basis pairs
  int basis_h = 0;
  int basis_k = 0;
  std::vector<cplx> witness_a;
  std::vector<cplx> witness_b;
};

/// Lower bound for sup ||T^J(a, b)|| over the VN(H) unit ball: every
/// lambda-basis pair, `samples` Haar-random pairs, then alternating ascent
/// (the defect is linear in each argument separately).
JordanResult jordan_defect(const InducedHom& hom, long samples, std::uint64_t seed,
                           Execution exec = Execution::Parallel);

struct LevelPair {
  NormResult forward;  // id (x) T
  NormResult inverse;  // id (x) T^{-1}
};

struct HomNormReport {
  std::vector<int> bijection;
  double norm_T = 0;
  double norm_Tinv = 0;
  double distortion = 0;
  std::map<int, LevelPair> levels;  // always contains level 1
};

HomNormReport hom_norm_report(const InducedHom& hom, std::vector<int> levels, const Effort& effort,
                              std::uint64_t seed, Execution exec = Execution::Parallel);

}  // namespace fdist
