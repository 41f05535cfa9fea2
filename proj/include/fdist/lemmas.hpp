#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdist/homspace.hpp"

namespace fdist {

enum class LemmaId { InvMult, UnitMult, NormGap, JordanRho };

std::string lemma_name(LemmaId id);

/// Slack is reported, never a proof: worst_margin is the minimum over trials
/// of (bound - observed), so a negative value beyond `tolerance` is a
/// counterexample and its witness is kept.
struct LemmaReport {
  LemmaId id = LemmaId::InvMult;
  std::string scope;  // "dim=4" or a group label
  long trials = 0;
  long discarded = 0;
  double tolerance = 0;
  double worst_margin = 0;
  std::optional<double> adversarial_margin;  // best (lowest) margin found by descent
  std::optional<double> min_nonzero_four_term;
  std::optional<std::vector<Matrix>> counterexample;

  bool passed() const { return !counterexample.has_value(); }
};

inline constexpr double kBlockLemmaTolerance = 1e-9;
inline constexpr double kNormGapTolerance = 1e-10;
inline constexpr int kMaxLemmaDim = 8;

struct BlockLemmaOptions {
  int dim = 4;
  long trials = 10000;
  std::uint64_t seed = 0;
  Execution exec = Execution::Parallel;
  int adversarial_starts = 8;   // worst random trials refined by descent
  int adversarial_iterations = 200;
};

/// ||[[u, 1], [-1, x]]|| <= c sqrt(2) implies ||x - u*|| <= 2 sqrt(c^2 - 1),
/// for Haar-random unitary u and x drawn near u*, as a random matrix, or as
/// a random unitary. Trials with c < 1 are discarded.
LemmaReport verify_invmult(const BlockLemmaOptions& opts);

/// ||[[u, x], [-1, v]]|| <= c sqrt(2) implies ||x - uv|| <= 2 sqrt(c^2 - 1).
LemmaReport verify_unitmult(const BlockLemmaOptions& opts);

/// Margins of single configurations (no sampling).
double invmult_margin(const Matrix& u, const Matrix& x);
double unitmult_margin(const Matrix& u, const Matrix& v, const Matrix& x);

/// Exhaustive four-term dichotomy ||l1 + l2 - l3 - l4|| in {0} u [sqrt 2, inf)
/// plus random instances of ||sum c_j lambda_{g_j}|| >= (sum |c_j|^2)^{1/2}.
LemmaReport verify_norm_gap(const IrrepTable& table, long random_trials = 10000, std::uint64_t seed = 0,
                            Execution exec = Execution::Parallel);

struct RhoPoint {
  std::vector<int> bijection;
  double distortion_excess = 0;  // ||T|| ||T^-1|| - 1
  double jordan_defect = 0;
};

struct RhoRow {
  double eta = 0;
  int count = 0;  // homs with defect >= eta
  std::optional<double> min_excess;  // empirical upper bound on admissible rho(eta)
  std::optional<double> max_excess;  // nonincreasing in eta
};

std::vector<RhoPoint> rho_points(const std::vector<InducedHom>& homs, const Effort& effort, long jordan_samples,
                                 std::uint64_t seed, Execution exec = Execution::Parallel);

/// Exploratory table: for each eta, the distortion excesses of homs whose
/// Jordan defect is at least eta.
std::vector<RhoRow> estimate_jordan_rho(const std::vector<double>& eta_grid, const std::vector<RhoPoint>& points);

}  // namespace fdist
