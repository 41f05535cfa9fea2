#include "fdist/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fdist/error.hpp"

namespace fdist {

namespace {

// Values this close count as tied; records are visited in lexicographic
// order, so ties resolve to the smallest bijection.
constexpr double kTieTolerance = 1e-9;

std::vector<int> orbit_representative(const std::vector<int>& t, const std::vector<std::vector<int>>& aut_g,
                                      const std::vector<std::vector<int>>& aut_h) {
  std::vector<int> best = t, cand(t.size());
  for (const auto& a : aut_g)
    for (const auto& b : aut_h) {
      for (std::size_t x = 0; x < t.size(); ++x) cand[x] = a[t[b[x]]];
      if (cand < best) best = cand;
    }
  return best;
}

}  // namespace

BijectionSet enumerate_bijections(const FiniteGroup& g, const FiniteGroup& h, const EnumerateOptions& opts) {
  const int n = g.order();
  if (h.order() != n) fail(ErrorKind::InvalidArgument, "enumerate_bijections: groups have different orders");

  BijectionSet out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const auto first_free = opts.canonical ? perm.begin() + 1 : perm.begin();

  if (n <= kMaxExhaustiveOrder) {
    do {
      out.maps.push_back(perm);
    } while (std::next_permutation(first_free, perm.end()));
  } else {
    out.exhaustive = false;
    out.sample_size = opts.sample_size;
    Rng rng(opts.seed);
    for (long s = 0; s < opts.sample_size; ++s) {
      std::shuffle(first_free, perm.end(), rng);
      out.maps.push_back(perm);
    }
  }

  if (opts.reduce_automorphisms) {
    if (!opts.canonical) fail(ErrorKind::InvalidArgument, "automorphism reduction requires canonical bijections");
    const auto aut_g = automorphisms(g);
    const auto aut_h = automorphisms(h);
    std::vector<std::vector<int>> reps;
    for (const auto& t : out.maps)
      if (orbit_representative(t, aut_g, aut_h) == t) reps.push_back(t);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    out.maps = std::move(reps);
  }
  return out;
}

const ThresholdVerdict* SearchResult::verdict(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

SearchResult scan_bijections(const FiniteGroup& g, const FiniteGroup& h, const ScanOptions& opts) {
  if (g.order() != h.order()) fail(ErrorKind::InvalidArgument, "scan: groups have different orders");

  EnumerateOptions eo;
  eo.reduce_automorphisms = opts.reduce_automorphisms;
  eo.sample_size = opts.sample_size;
  eo.seed = derive_seed(opts.seed, 0x454E554DULL);
  const BijectionSet set = enumerate_bijections(g, h, eo);

  const IrrepTable tg = irreps_of(g, opts.seed);
  const IrrepTable th = irreps_of(h, opts.seed);

  SearchResult res{g, h, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  res.isomorphic = g.order() <= kMaxSearchOrder && are_isomorphic(g, h);
  res.exhaustive = set.exhaustive;
  res.sample_size = set.sample_size;
  res.records.resize(set.maps.size());

  for_each_index(static_cast<long>(set.maps.size()), opts.exec, [&](long i) {
    InducedHom hom(GroupBijection(h, g, set.maps[i]), tg, th);
    res.records[i] = hom_norm_report(hom, opts.levels, opts.effort, derive_seed(opts.seed, static_cast<std::uint64_t>(i)),
                                     Execution::Serial);
  });

  res.min_distortion = std::numeric_limits<double>::infinity();
  for (const auto& r : res.records) {
    if (r.distortion < res.min_distortion - kTieTolerance) {
      res.min_distortion = r.distortion;
      res.argmin_distortion = r.bijection;
    }
  }

  if (res.isomorphic) {
    ThresholdVerdict v{"isomorphic_pair_distortion_one", 1.0, true, false, 0.0, {}};
    v.margin = 1.0 + 1e-6 - res.min_distortion;
    GroupBijection best(h, g, res.argmin_distortion);
    v.pass = v.margin >= 0 && (best.is_homomorphism() || best.is_anti_homomorphism());
    v.detail = "minimum distortion must be 1, attained by an (anti-)isomorphism";
    res.verdicts.push_back(v);
  }

  int gap_level = 0;
  for (int k : opts.levels)
    if (k >= 2) gap_level = gap_level == 0 ? k : std::min(gap_level, k);
  if (gap_level == 0) return res;

  res.min_level2 = std::numeric_limits<double>::infinity();
  double worst_pair_max = std::numeric_limits<double>::infinity();
  std::vector<int> worst_pair;
  double forbidden_worst = 0;  // how deep into the forbidden interval
  double gap_worst = std::numeric_limits<double>::infinity();
  const double delta = opts.gap_delta;
  const double tol = opts.threshold_tolerance;

  for (const auto& r : res.records) {
    const auto& lp = r.levels.at(gap_level);
    const double vals[2] = {lp.forward.value, lp.inverse.value};
    for (double v : vals) {
      if (v < res.min_level2 - kTieTolerance) {
        res.min_level2 = v;
        res.argmin_level2 = r.bijection;
      }
      if (std::abs(v - 1.0) <= delta) ++res.histogram.isometric;
      else if (v < kSqrtFiveHalf) ++res.histogram.below_gap;
      else if (v < kSqrtThreeHalves) ++res.histogram.between;
      else ++res.histogram.above;

      if (v > 1.0 + tol && v < kSqrtThreeHalves - tol)
        forbidden_worst = std::max(forbidden_worst, std::min(v - 1.0 - tol, kSqrtThreeHalves - tol - v));
      if (std::abs(v - 1.0) > delta) gap_worst = std::min(gap_worst, v - (kSqrtFiveHalf - opts.gap_tolerance));
    }
    const double pair_max = std::max(vals[0], vals[1]);
    if (pair_max < worst_pair_max - kTieTolerance) {
      worst_pair_max = pair_max;
      worst_pair = r.bijection;
    }
  }

  const std::string lvl = std::to_string(gap_level);
  if (!res.isomorphic) {
    ThresholdVerdict v{"level" + lvl + "_isomorphism_threshold", kSqrtThreeHalves, true, false, 0.0, {}};
    v.margin = worst_pair_max - kSqrtThreeHalves;
    v.pass = v.margin >= -tol;
    std::ostringstream d;
    d << "every bijection needs max(level-" << lvl << " norm of T, of T^-1) >= sqrt(3/2); tightest bijection [";
    for (std::size_t i = 0; i < worst_pair.size(); ++i) d << (i ? "," : "") << worst_pair[i];
    d << "]";
    v.detail = d.str();
    res.verdicts.push_back(v);
  }
  {
    ThresholdVerdict v{"level" + lvl + "_forbidden_interval", kSqrtThreeHalves, true, false, 0.0, {}};
    v.margin = forbidden_worst > 0 ? -forbidden_worst : 0.0;
    v.pass = forbidden_worst == 0;
    v.detail = "no computed level-" + lvl + " norm in (1 + tol, sqrt(3/2) - tol)";
    res.verdicts.push_back(v);
  }
  {
    ThresholdVerdict v{"norm_gap_advisory", kSqrtFiveHalf, true, false, 0.0, {}};
    v.advisory = true;
    v.margin = std::isinf(gap_worst) ? 0.0 : gap_worst;
    v.pass = v.margin >= 0;
    v.detail = "non-isometric level-" + lvl + " norms should reach sqrt(5)/2; computed values are lower bounds";
    res.verdicts.push_back(v);
  }
  return res;
}

SearchResult min_distortion(const FiniteGroup& g, const FiniteGroup& h, const Effort& effort, std::uint64_t seed,
                            Execution exec) {
  ScanOptions o;
  o.levels = {1};
  o.effort = effort;
  o.seed = seed;
  o.exec = exec;
  return scan_bijections(g, h, o);
}

SearchResult norm_gap_scan(const FiniteGroup& g, const FiniteGroup& h, int level, const Effort& effort,
                           std::uint64_t seed, Execution exec) {
  if (level < 2) fail(ErrorKind::InvalidArgument, "norm_gap_scan needs level >= 2");
  ScanOptions o;
  o.levels = {1, level};
  o.effort = effort;
  o.seed = seed;
  o.exec = exec;
  return scan_bijections(g, h, o);
}

EpsilonBound epsilon_zero_bound(const std::vector<std::pair<FiniteGroup, FiniteGroup>>& corpus, const Effort& effort,
                                std::uint64_t seed, Execution exec) {
  if (corpus.empty()) fail(ErrorKind::InvalidArgument, "epsilon_zero_bound: empty corpus");
  for (const auto& [g, h] : corpus)
    if (are_isomorphic(g, h))
      fail(ErrorKind::InvalidArgument, "epsilon_zero_bound: pair (" + g.label() + ", " + h.label() + ") is isomorphic");
  EpsilonBound out;
  out.bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [g, h] = corpus[i];
    const double excess = min_distortion(g, h, effort, derive_seed(seed, i), exec).min_distortion - 1.0;
    out.pair_minima.emplace_back(g.label() + "/" + h.label(), excess);
    out.bound = std::min(out.bound, excess);
  }
  return out;
}

}  // namespace fdist
