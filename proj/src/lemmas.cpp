#include "fdist/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdist/error.hpp"

namespace fdist {

std::string lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::InvMult: return "invmult";
    case LemmaId::UnitMult: return "unitmult";
    case LemmaId::NormGap: return "norm_gap";
    case LemmaId::JordanRho: return "jordan_rho";
  }
  return "unknown";
}

namespace {

// Which block of the 2x2 block matrix holds the free variable x.
enum class Layout { InvMult, UnitMult };

struct BlockProblem {
  Layout layout;
  Matrix u, v, x;  // v unused for InvMult

  Matrix target() const { return layout == Layout::InvMult ? Matrix(u.adjoint()) : Matrix(u * v); }

  Matrix block() const {
    const auto d = u.rows();
    const Matrix id = Matrix::Identity(d, d);
    Matrix b(2 * d, 2 * d);
    if (layout == Layout::InvMult) b << u, id, -id, x;
    else b << u, x, -id, v;
    return b;
  }
};

// c = ||B|| / sqrt 2; nullopt when c < 1 (trial discarded). Values within
// rounding of 1 are snapped to 1.
std::optional<double> block_constant(const BlockProblem& p) {
  double c = spectral_norm(p.block()) / std::numbers::sqrt2;
  if (c < 1.0 - 1e-12) return std::nullopt;
  return std::max(c, 1.0);
}

std::optional<double> margin_of(const BlockProblem& p) {
  const auto c = block_constant(p);
  if (!c) return std::nullopt;
  return 2.0 * std::sqrt(*c * *c - 1.0) - spectral_norm(p.x - p.target());
}

// Gradient of the margin with respect to x.
Matrix margin_gradient(const BlockProblem& p, double c) {
  const auto d = p.u.rows();
  const SingularPair diff = top_singular_pair(p.x - p.target());
  const SingularPair blk = top_singular_pair(p.block());
  const Matrix outer = blk.left * blk.right.adjoint();
  const Matrix db = p.layout == Layout::InvMult ? Matrix(outer.bottomRightCorner(d, d)) : Matrix(outer.topRightCorner(d, d));
  const double root = std::sqrt(std::max(c * c - 1.0, 1e-300));
  return (std::numbers::sqrt2 * c / root) * db - diff.left * diff.right.adjoint();
}

BlockProblem draw_problem(Layout layout, int dim, std::uint64_t seed) {
  Rng rng(seed);
  BlockProblem p{layout, haar_unitary(dim, rng), Matrix(), Matrix()};
  p.v = layout == Layout::UnitMult ? haar_unitary(dim, rng) : Matrix::Identity(dim, dim);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double pick = unit(rng);
  if (pick < 0.5) {
    // near the equality configuration x = target
    Matrix e = gaussian_matrix(dim, dim, rng);
    e /= spectral_norm(e);
    p.x = p.target() + std::pow(10.0, -6.0 * unit(rng)) * e;
  } else if (pick < 0.75) {
    p.x = 2.0 * unit(rng) * gaussian_matrix(dim, dim, rng);
  } else {
    p.x = haar_unitary(dim, rng);
  }
  return p;
}

struct Trial {
  std::optional<double> margin;
  std::uint64_t seed = 0;
};

double descend(BlockProblem p, int iterations, double& best_margin, BlockProblem& best_problem) {
  auto m = margin_of(p);
  if (!m) return best_margin;
  double alpha = 0.1;
  for (int it = 0; it < iterations && alpha > 1e-14; ++it) {
    const double c = *block_constant(p);
    BlockProblem cand = p;
    cand.x = p.x - alpha * margin_gradient(p, c);
    const auto mc = margin_of(cand);
    if (mc && *mc < *m) {
      p = std::move(cand);
      m = mc;
      alpha *= 1.5;
    } else {
      alpha *= 0.5;
    }
  }
  if (*m < best_margin) {
    best_margin = *m;
    best_problem = p;
  }
  return best_margin;
}

LemmaReport verify_block_lemma(Layout layout, const BlockLemmaOptions& opts) {
  if (opts.dim < 1 || opts.dim > kMaxLemmaDim)
    fail(ErrorKind::SizeLimit, "lemma dimension must be in 1.." + std::to_string(kMaxLemmaDim));
  LemmaReport rep;
  rep.id = layout == Layout::InvMult ? LemmaId::InvMult : LemmaId::UnitMult;
  rep.scope = "dim=" + std::to_string(opts.dim);
  rep.trials = opts.trials;
  rep.tolerance = kBlockLemmaTolerance;

  std::vector<Trial> trials(opts.trials);
  for_each_index(opts.trials, opts.exec, [&](long i) {
    const std::uint64_t s = derive_seed(opts.seed, static_cast<std::uint64_t>(i));
    trials[i] = {margin_of(draw_problem(layout, opts.dim, s)), s};
  });

  std::vector<std::pair<double, long>> ranked;
  for (long i = 0; i < opts.trials; ++i) {
    if (!trials[i].margin) ++rep.discarded;
    else ranked.emplace_back(*trials[i].margin, i);
  }
  std::sort(ranked.begin(), ranked.end());
  rep.worst_margin = ranked.empty() ? 0.0 : ranked.front().first;

  std::optional<BlockProblem> worst;
  if (!ranked.empty()) worst = draw_problem(layout, opts.dim, trials[ranked.front().second].seed);

  // Adversarial descent from the worst random trials.
  const int starts = std::min<int>(opts.adversarial_starts, static_cast<int>(ranked.size()));
  std::vector<double> adv_margin(starts, std::numeric_limits<double>::infinity());
  std::vector<BlockProblem> adv_problem(starts, BlockProblem{layout, {}, {}, {}});
  for_each_index(starts, opts.exec, [&](long s) {
    const BlockProblem p = draw_problem(layout, opts.dim, trials[ranked[s].second].seed);
    adv_margin[s] = *margin_of(p);
    adv_problem[s] = p;
    descend(p, opts.adversarial_iterations, adv_margin[s], adv_problem[s]);
  });
  if (starts > 0) {
    const auto best = std::min_element(adv_margin.begin(), adv_margin.end()) - adv_margin.begin();
    rep.adversarial_margin = adv_margin[best];
    if (adv_margin[best] < rep.worst_margin - rep.tolerance) worst = adv_problem[best];
  }

  const double observed = std::min(rep.worst_margin, rep.adversarial_margin.value_or(rep.worst_margin));
  if (observed < -rep.tolerance && worst) {
    rep.counterexample = layout == Layout::InvMult ? std::vector<Matrix>{worst->u, worst->x}
                                                   : std::vector<Matrix>{worst->u, worst->v, worst->x};
  }
  return rep;
}

}  // namespace

double invmult_margin(const Matrix& u, const Matrix& x) {
  const auto m = margin_of(BlockProblem{Layout::InvMult, u, Matrix::Identity(u.rows(), u.cols()), x});
  return m.value_or(std::numeric_limits<double>::quiet_NaN());
}

double unitmult_margin(const Matrix& u, const Matrix& v, const Matrix& x) {
  const auto m = margin_of(BlockProblem{Layout::UnitMult, u, v, x});
  return m.value_or(std::numeric_limits<double>::quiet_NaN());
}

LemmaReport verify_invmult(const BlockLemmaOptions& opts) { return verify_block_lemma(Layout::InvMult, opts); }
LemmaReport verify_unitmult(const BlockLemmaOptions& opts) { return verify_block_lemma(Layout::UnitMult, opts); }

LemmaReport verify_norm_gap(const IrrepTable& table, long random_trials, std::uint64_t seed, Execution exec) {
  const FiniteGroup& g = table.group();
  const int n = g.order();
  LemmaReport rep;
  rep.id = LemmaId::NormGap;
  rep.scope = g.label();
  rep.tolerance = kNormGapTolerance;
  const long quads = static_cast<long>(n) * n * n * n;
  rep.trials = quads + random_trials;

  struct Slot {
    double margin = std::numeric_limits<double>::infinity();
    double min_nonzero = std::numeric_limits<double>::infinity();
    std::vector<cplx> witness;
  };

  std::vector<Slot> four(n);
  for_each_index(n, exec, [&](long g1) {
    Slot s;
    for (int g2 = 0; g2 < n; ++g2)
      for (int g3 = 0; g3 < n; ++g3)
        for (int g4 = 0; g4 < n; ++g4) {
          std::vector<cplx> c(n, 0.0);
          c[g1] += 1.0;
          c[g2] += 1.0;
          c[g3] -= 1.0;
          c[g4] -= 1.0;
          const double v = vn_norm(GroupAlgebraElement(g, c), table);
          const bool cancels = (g1 == g3 && g2 == g4) || (g1 == g4 && g2 == g3);
          const double margin = cancels ? -v : v - std::numbers::sqrt2;
          if (!cancels) s.min_nonzero = std::min(s.min_nonzero, v);
          if (margin < s.margin) {
            s.margin = margin;
            s.witness = c;
          }
        }
    four[g1] = std::move(s);
  });

  std::vector<Slot> rnd(random_trials);
  for_each_index(random_trials, exec, [&](long i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    std::vector<int> elems(n);
    for (int k = 0; k < n; ++k) elems[k] = k;
    std::shuffle(elems.begin(), elems.end(), rng);
    const int size = std::uniform_int_distribution<int>(1, n)(rng);
    const Matrix coeffs = gaussian_matrix(size, 1, rng);
    std::vector<cplx> c(n, 0.0);
    for (int k = 0; k < size; ++k) c[elems[k]] = coeffs(k, 0);
    const double v = vn_norm(GroupAlgebraElement(g, c), table);
    rnd[i] = {v - coeffs.norm(), std::numeric_limits<double>::infinity(), c};
  });

  Slot worst;
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (const auto* group : {&four, &rnd})
    for (const auto& s : *group) {
      min_nonzero = std::min(min_nonzero, s.min_nonzero);
      if (s.margin < worst.margin) worst = s;
    }
  rep.worst_margin = worst.margin;
  if (!std::isinf(min_nonzero)) rep.min_nonzero_four_term = min_nonzero;
  if (worst.margin < -rep.tolerance) {
    Matrix w(n, 1);
    for (int k = 0; k < n; ++k) w(k, 0) = worst.witness[k];
    rep.counterexample = std::vector<Matrix>{w};
  }
  return rep;
}

std::vector<RhoPoint> rho_points(const std::vector<InducedHom>& homs, const Effort& effort, long jordan_samples,
                                 std::uint64_t seed, Execution exec) {
  std::vector<RhoPoint> pts(homs.size());
  for_each_index(static_cast<long>(homs.size()), exec, [&](long i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    const double fwd = op_norm(homs[i], effort, s, Execution::Serial).value;
    const double inv = op_norm(homs[i].inverse(), effort, derive_seed(s, 1), Execution::Serial).value;
    const double defect = jordan_defect(homs[i], jordan_samples, derive_seed(s, 2), Execution::Serial).value;
    pts[i] = {homs[i].bijection().map(), fwd * inv - 1.0, defect};
  });
  return pts;
}

std::vector<RhoRow> estimate_jordan_rho(const std::vector<double>& eta_grid, const std::vector<RhoPoint>& points) {
  std::vector<RhoRow> rows;
  for (double eta : eta_grid) {
    RhoRow r{eta, 0, std::nullopt, std::nullopt};
    for (const auto& p : points) {
      if (p.jordan_defect < eta) continue;
      ++r.count;
      r.min_excess = r.min_excess ? std::min(*r.min_excess, p.distortion_excess) : p.distortion_excess;
      r.max_excess = r.max_excess ? std::max(*r.max_excess, p.distortion_excess) : p.distortion_excess;
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace fdist
