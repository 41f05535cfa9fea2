#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdist/homspace.hpp"

namespace fdist {

/// Orders above this switch from exhaustive enumeration to sampling.
inline constexpr int kMaxExhaustiveOrder = 8;
inline constexpr long kDefaultBijectionSamples = 10000;

struct BijectionSet {
  std::vector<std::vector<int>> maps;  // map[h] = t(h), t: H -> G
  bool exhaustive = true;
  long sample_size = 0;  // nonzero only in sampling mode
};

struct EnumerateOptions {
  bool canonical = true;       // only t(e_H) = e_G
  bool reduce_automorphisms = false;  // one representative per Aut(G) x Aut(H) orbit
  long sample_size = kDefaultBijectionSamples;
  std::uint64_t seed = 0;
};

/// Bijections t: H -> G in lexicographic order of `map`. Identity-fixing
/// bijections suffice since translations act by complete isometries; under
/// `reduce_automorphisms` each orbit of t -> a o t o b is represented by its
/// lexicographically smallest member.
BijectionSet enumerate_bijections(const FiniteGroup& g, const FiniteGroup& h, const EnumerateOptions& opts = {});

struct ThresholdVerdict {
  std::string name;
  double threshold = 0;
  bool pass = true;
  bool advisory = false;
  double margin = 0;  // signed slack of the checked inequality
  std::string detail;
};

/// Counts of computed level-2 norms (both directions) by interval. Note
/// sqrt(5)/2 < sqrt(3/2).
struct GapHistogram {
  int isometric = 0;  // |v - 1| <= delta
  int below_gap = 0;  // (1 + delta, sqrt(5)/2)
  int between = 0;    // [sqrt(5)/2, sqrt(3/2))
  int above = 0;      // >= sqrt(3/2)
};

/// Minima treat values within 1e-9 as tied; ties go to the lexicographically
/// smallest bijection.
struct SearchResult {
  FiniteGroup g;
  FiniteGroup h;
  bool isomorphic = false;
  bool exhaustive = true;
  long sample_size = 0;
  std::vector<HomNormReport> records;
  double min_distortion = 0;
  std::vector<int> argmin_distortion;
  double min_level2 = 0;  // smallest level-2 norm over all records and both directions
  std::vector<int> argmin_level2;
  GapHistogram histogram;
  std::vector<ThresholdVerdict> verdicts;

  const ThresholdVerdict* verdict(const std::string& name) const;
};

struct ScanOptions {
  std::vector<int> levels{1};
  Effort effort;
  std::uint64_t seed = 0;
  Execution exec = Execution::Parallel;
  bool reduce_automorphisms = false;
  double gap_delta = 1e-6;      // isometric window around 1
  double gap_tolerance = 1e-3;  // slack below sqrt(5)/2 for the advisory gap verdict
  double threshold_tolerance = 1e-3;
  long sample_size = kDefaultBijectionSamples;
};

inline constexpr double kSqrtThreeHalves = 1.2247448713915890491;  // sqrt(3/2)
inline constexpr double kSqrtFiveHalf = 1.1180339887498948482;     // sqrt(5)/2

/// Computes a HomNormReport for every enumerated bijection (work items run
/// in parallel; each uses a serial optimizer) and evaluates the verdicts.
SearchResult scan_bijections(const FiniteGroup& g, const FiniteGroup& h, const ScanOptions& opts);

/// Level-1 scan: norms both ways and distortion per bijection.
SearchResult min_distortion(const FiniteGroup& g, const FiniteGroup& h, const Effort& effort, std::uint64_t seed,
                            Execution exec = Execution::Parallel);

/// Level-1 and level-k scan with the isomorphism-threshold and gap verdicts.
SearchResult norm_gap_scan(const FiniteGroup& g, const FiniteGroup& h, int level, const Effort& effort,
                           std::uint64_t seed, Execution exec = Execution::Parallel);

struct EpsilonBound {
  double bound = 0;  // min over pairs of (min distortion - 1)
  std::vector<std::pair<std::string, double>> pair_minima;
};

/// Empirical upper bound for the distortion constant below which algebra
/// isomorphisms force group isomorphisms. Pairs must be non-isomorphic.
EpsilonBound epsilon_zero_bound(const std::vector<std::pair<FiniteGroup, FiniteGroup>>& corpus, const Effort& effort,
                                std::uint64_t seed, Execution exec = Execution::Parallel);

}  // namespace fdist
