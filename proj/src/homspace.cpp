#include "fdist/homspace.hpp"

#include <algorithm>
#include <cmath>

#include "fdist/error.hpp"

namespace fdist {

Effort Effort::low() { return {16, 200, 0.1, 10000, 2000}; }
Effort Effort::standard() { return {}; }
Effort Effort::high() { return {256, 1000, 0.1, 1000000, 200000}; }

Effort Effort::from_name(std::string_view name) {
  if (name == "low") return low();
  if (name == "default" || name == "standard") return standard();
  if (name == "high") return high();
  fail(ErrorKind::InvalidArgument, "unknown effort level '" + std::string(name) + "' (expected low, default, high)");
}

Effort Effort::scaled(double factor) const {
  Effort e = *this;
  e.restarts = std::max(1, static_cast<int>(std::lround(restarts * factor)));
  e.samples = static_cast<long>(std::lround(samples * factor));
  e.level_samples = static_cast<long>(std::lround(level_samples * factor));
  return e;
}

InducedHom::InducedHom(GroupBijection t, IrrepTable source_table, IrrepTable target_table)
    : t_(std::move(t)), source_(std::move(source_table)), target_(std::move(target_table)) {
  if (!(t_.target() == source_.group()))
    fail(ErrorKind::InvalidArgument, "InducedHom: source table does not match the bijection's target group");
  if (!(t_.source() == target_.group()))
    fail(ErrorKind::InvalidArgument, "InducedHom: target table does not match the bijection's source group");
}

InducedHom InducedHom::inverse() const { return InducedHom(t_.inverse(), target_, source_); }

Matrix InducedHom::adjoint_matrix() const {
  const int n = t_.source().order();
  Matrix m = Matrix::Zero(n, n);
  for (int h = 0; h < n; ++h) m(t_(h), h) = 1.0;
  return m;
}

AFunction InducedHom::apply(const AFunction& f) const {
  if (!(f.group == source_.group())) fail(ErrorKind::InvalidArgument, "InducedHom::apply: group mismatch");
  const int n = t_.source().order();
  std::vector<cplx> v(n);
  for (int h = 0; h < n; ++h) v[h] = f.values[t_(h)];
  return {t_.source(), std::move(v)};
}

GroupAlgebraElement adjoint_image(const InducedHom& hom, const GroupAlgebraElement& x) {
  const auto& t = hom.bijection();
  if (!(x.group == t.source())) fail(ErrorKind::InvalidArgument, "adjoint_image: element is not over the bijection's source group");
  std::vector<cplx> c(x.coeffs.size(), 0.0);
  for (int h = 0; h < t.source().order(); ++h) c[t(h)] = x.coeffs[h];
  return {t.target(), std::move(c)};
}

// ---------------------------------------------------------------------------
// AmplifiedMap

AmplifiedMap::AmplifiedMap(const IrrepTable& domain, const IrrepTable& codomain, Matrix basis_map, int level)
    : k_(level),
      n_dom_(domain.group().order()),
      n_cod_(codomain.group().order()),
      dom_dims_(domain.dims()),
      cod_dims_(codomain.dims()),
      map_(std::move(basis_map)) {
  if (level < 1) fail(ErrorKind::InvalidArgument, "amplification level must be >= 1");
  if (level * std::max(domain.max_dim(), codomain.max_dim()) > kMaxAmplifiedBlock)
    fail(ErrorKind::SizeLimit, "level " + std::to_string(level) + " times irrep dimension exceeds " +
                                   std::to_string(kMaxAmplifiedBlock));
  if (map_.rows() != n_cod_ || map_.cols() != n_dom_) fail(ErrorKind::InvalidArgument, "basis map has the wrong shape");
  for (const Irrep& p : domain.irreps()) dom_mats_.push_back(p.matrices);
  for (const Irrep& p : codomain.irreps()) cod_mats_.push_back(p.matrices);
}

namespace {

// <A, B>_F = sum_ij A_ij conj(B_ij)
cplx frobenius(const Eigen::Ref<const Matrix>& a, const Matrix& b) { return (a.array() * b.array().conjugate()).sum(); }

// sum_g coeffs[g] (x) mats[g], accumulated blockwise.
Matrix synthesize(const std::vector<Matrix>& coeffs, const std::vector<Matrix>& mats, int k, int d) {
  Matrix y = Matrix::Zero(k * d, k * d);
  for (std::size_t g = 0; g < coeffs.size(); ++g) {
    const Matrix& c = coeffs[g];
    if (c.isZero(0.0)) continue;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (c(a, b) != cplx(0.0)) y.block(a * d, b * d, d, d) += c(a, b) * mats[g];
  }
  return y;
}

// out[g](a, b) += weight * <block_ab(w), mats[g]>_F
void contract(const Matrix& w, const std::vector<Matrix>& mats, int k, int d, double weight, std::vector<Matrix>& out) {
  for (std::size_t g = 0; g < mats.size(); ++g)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) out[g](a, b) += weight * frobenius(w.block(a * d, b * d, d, d), mats[g]);
}

double max_block_norm(const AmplifiedMap::Blocks& blocks) {
  double m = 0;
  for (const Matrix& b : blocks) m = std::max(m, spectral_norm(b));
  return m;
}

}  // namespace

std::vector<Matrix> AmplifiedMap::coefficients(const Blocks& x) const {
  std::vector<Matrix> c(n_dom_, Matrix::Zero(k_, k_));
  for (std::size_t s = 0; s < dom_mats_.size(); ++s)
    contract(x[s], dom_mats_[s], k_, dom_dims_[s], static_cast<double>(dom_dims_[s]) / n_dom_, c);
  return c;
}

AmplifiedMap::Blocks AmplifiedMap::domain_blocks(const std::vector<Matrix>& coeffs) const {
  Blocks out;
  for (std::size_t s = 0; s < dom_mats_.size(); ++s) out.push_back(synthesize(coeffs, dom_mats_[s], k_, dom_dims_[s]));
  return out;
}

AmplifiedMap::Blocks AmplifiedMap::image_blocks(const std::vector<Matrix>& coeffs) const {
  std::vector<Matrix> e(n_cod_, Matrix::Zero(k_, k_));
  for (int g = 0; g < n_cod_; ++g)
    for (int h = 0; h < n_dom_; ++h)
      if (map_(g, h) != cplx(0.0)) e[g] += map_(g, h) * coeffs[h];
  Blocks out;
  for (std::size_t p = 0; p < cod_mats_.size(); ++p) out.push_back(synthesize(e, cod_mats_[p], k_, cod_dims_[p]));
  return out;
}

double AmplifiedMap::ratio(const Blocks& x) const {
  const double dn = max_block_norm(x);
  if (dn == 0) return 0;
  return max_block_norm(image_blocks(coefficients(x))) / dn;
}

AmplifiedMap::Blocks AmplifiedMap::ascent_direction(const Blocks& x) const {
  const Blocks y = image_blocks(coefficients(x));
  std::size_t top = 0;
  double best = -1;
  for (std::size_t p = 0; p < y.size(); ++p) {
    const double s = spectral_norm(y[p]);
    if (s > best) {
      best = s;
      top = p;
    }
  }
  const SingularPair sp = top_singular_pair(y[top]);
  const Matrix w = sp.left * sp.right.adjoint();

  std::vector<Matrix> dprime(n_cod_, Matrix::Zero(k_, k_));
  contract(w, cod_mats_[top], k_, cod_dims_[top], 1.0, dprime);
  std::vector<Matrix> d(n_dom_, Matrix::Zero(k_, k_));
  for (int g = 0; g < n_cod_; ++g)
    for (int h = 0; h < n_dom_; ++h)
      if (map_(g, h) != cplx(0.0)) d[h] += std::conj(map_(g, h)) * dprime[g];

  Blocks grad;
  for (std::size_t s = 0; s < dom_mats_.size(); ++s)
    grad.push_back(static_cast<double>(dom_dims_[s]) / n_dom_ * synthesize(d, dom_mats_[s], k_, dom_dims_[s]));
  return grad;
}

AmplifiedMap::Blocks AmplifiedMap::basis_blocks(int h) const {
  std::vector<Matrix> c(n_dom_, Matrix::Zero(k_, k_));
  c[h] = Matrix::Identity(k_, k_);
  return domain_blocks(c);
}

AmplifiedMap::Blocks AmplifiedMap::random_unitary_blocks(Rng& rng) const {
  Blocks out;
  for (int d : dom_dims_) out.push_back(haar_unitary(k_ * d, rng));
  return out;
}

AmplifiedMap::Blocks AmplifiedMap::embed(const std::vector<Matrix>& lower) const {
  std::vector<Matrix> c(n_dom_, Matrix::Zero(k_, k_));
  for (int h = 0; h < n_dom_; ++h) {
    const auto r = std::min<Eigen::Index>(lower.at(h).rows(), k_);
    c[h].topLeftCorner(r, r) = lower[h].topLeftCorner(r, r);
  }
  return domain_blocks(c);
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {

struct Candidate {
  double value = -1;
  AmplifiedMap::Blocks blocks;
  long iterations = 0;
  bool converged = false;
};

Candidate ascend(const AmplifiedMap& map, AmplifiedMap::Blocks x, const Effort& effort) {
  Candidate c;
  double v = map.ratio(x);
  double alpha = effort.step;
  int stalled = 0;
  long it = 0;
  for (; it < effort.iterations; ++it) {
    const auto grad = map.ascent_direction(x);
    AmplifiedMap::Blocks cand(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) cand[s] = clip_to_spectral_ball(x[s] + alpha * grad[s]);
    const double vc = map.ratio(cand);
    if (vc >= v) {
      stalled = vc - v <= 1e-13 * std::max(1.0, v) ? stalled + 1 : 0;
      x = std::move(cand);
      v = vc;
      alpha = std::min(alpha * 2.0, 1e8);
    } else {
      alpha *= 0.5;
      ++stalled;
    }
    if (stalled >= 10) {
      c.converged = true;
      ++it;
      break;
    }
  }
  c.value = v;
  c.blocks = std::move(x);
  c.iterations = it;
  return c;
}

constexpr long kSampleChunk = 1024;
constexpr std::uint64_t kSamplingStream = 0x5A4D504C494E47ULL;

}  // namespace

NormResult maximize_amplified_norm(const AmplifiedMap& map, const Effort& effort, std::uint64_t seed, Execution exec,
                                   const std::vector<AmplifiedMap::Blocks>& extra_starts) {
  const int fixed = static_cast<int>(extra_starts.size()) + map.domain_order();
  const int total = fixed + std::max(0, effort.restarts);
  std::vector<Candidate> runs(total);
  for_each_index(total, exec, [&](long r) {
    AmplifiedMap::Blocks start;
    if (r < static_cast<long>(extra_starts.size())) {
      start = extra_starts[r];
    } else if (r < fixed) {
      start = map.basis_blocks(static_cast<int>(r - extra_starts.size()));
    } else {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
      start = map.random_unitary_blocks(rng);
    }
    runs[r] = ascend(map, std::move(start), effort);
  });

  const long samples = std::max(0L, map.level() == 1 ? effort.samples : effort.level_samples);
  const long chunks = (samples + kSampleChunk - 1) / kSampleChunk;
  std::vector<Candidate> sampled(chunks);
  for_each_index(chunks, exec, [&](long c) {
    Rng rng(derive_seed(seed ^ kSamplingStream, static_cast<std::uint64_t>(c)));
    const long count = std::min(kSampleChunk, samples - c * kSampleChunk);
    Candidate best;
    for (long i = 0; i < count; ++i) {
      auto x = map.random_unitary_blocks(rng);
      const double v = map.ratio(x);
      if (v > best.value) {
        best.value = v;
        best.blocks = std::move(x);
      }
    }
    sampled[c] = std::move(best);
  });

  NormResult out;
  out.level = map.level();
  out.meta.restarts = total;
  out.meta.samples = samples;
  const Candidate* best_run = nullptr;
  for (const auto& r : runs) {
    out.meta.total_iterations += r.iterations;
    out.meta.converged_restarts += r.converged ? 1 : 0;
    if (!best_run || r.value > best_run->value) best_run = &r;
  }
  const Candidate* best_sample = nullptr;
  for (const auto& s : sampled)
    if (!best_sample || s.value > best_sample->value) best_sample = &s;

  out.meta.ascent_value = best_run ? best_run->value : 0;
  out.meta.sampling_value = best_sample ? best_sample->value : 0;
  const Candidate* winner = best_run;
  out.meta.source = "ascent";
  if (best_sample && (!winner || best_sample->value > winner->value)) {
    winner = best_sample;
    out.meta.source = "sampling";
  }
  if (!winner) fail(ErrorKind::InvalidArgument, "optimizer has no starting points");

  out.value = winner->value;
  const double dn = max_block_norm(winner->blocks);
  out.witness = map.coefficients(winner->blocks);
  for (auto& c : out.witness) c /= dn;
  return out;
}

double amplified_ratio_regular(const FiniteGroup& domain, const FiniteGroup& codomain, const Matrix& basis_map,
                               const std::vector<Matrix>& coeffs) {
  const int k = static_cast<int>(coeffs.front().rows());
  const auto lam_dom = regular_representation(domain);
  const auto lam_cod = regular_representation(codomain);
  Matrix in = Matrix::Zero(k * domain.order(), k * domain.order());
  for (int h = 0; h < domain.order(); ++h) in += kron(coeffs[h], lam_dom[h]);
  Matrix out = Matrix::Zero(k * codomain.order(), k * codomain.order());
  for (int g = 0; g < codomain.order(); ++g) {
    Matrix e = Matrix::Zero(k, k);
    for (int h = 0; h < domain.order(); ++h) e += basis_map(g, h) * coeffs[h];
    out += kron(e, lam_cod[g]);
  }
  return spectral_norm(out) / spectral_norm(in);
}

NormResult level_k_norm(const InducedHom& hom, int k, const Effort& effort, std::uint64_t seed, Execution exec) {
  AmplifiedMap map(hom.target_table(), hom.source_table(), hom.adjoint_matrix(), k);
  return maximize_amplified_norm(map, effort, seed, exec);
}

std::map<int, NormResult> level_norms(const InducedHom& hom, std::vector<int> levels, const Effort& effort,
                                      std::uint64_t seed, Execution exec) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::map<int, NormResult> out;
  const NormResult* prev = nullptr;
  for (int k : levels) {
    AmplifiedMap map(hom.target_table(), hom.source_table(), hom.adjoint_matrix(), k);
    std::vector<AmplifiedMap::Blocks> starts;
    if (prev) starts.push_back(map.embed(prev->witness));
    NormResult r = maximize_amplified_norm(map, effort, derive_seed(seed, static_cast<std::uint64_t>(k)), exec, starts);
    if (prev && r.value < prev->value) {
      const auto padded = map.embed(prev->witness);
      r.value = prev->value;
      r.witness = map.coefficients(padded);
      r.meta.source = "lower-level";
    }
    prev = &(out[k] = std::move(r));
  }
  return out;
}

CbResult cb_norm(const InducedHom& hom, const Effort& effort, std::uint64_t seed, Execution exec) {
  const int m = hom.source_table().dim_sum();
  if (m > kMaxCbLevel)
    fail(ErrorKind::SizeLimit, "cb_norm needs sum of irrep dimensions <= " + std::to_string(kMaxCbLevel) + ", got " +
                                   std::to_string(m));
  std::vector<int> levels(m);
  for (int k = 1; k <= m; ++k) levels[k - 1] = k;
  auto norms = level_norms(hom, levels, effort, seed, exec);
  CbResult out;
  out.level = m;
  for (auto& [k, r] : norms) out.levels.push_back(std::move(r));
  out.value = out.levels.back().value;
  return out;
}

// ---------------------------------------------------------------------------
// Jordan defect

GroupAlgebraElement jordan_image(const InducedHom& hom, const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  const auto ta = adjoint_image(hom, a);
  const auto tb = adjoint_image(hom, b);
  const auto tab = adjoint_image(hom, vn_product(a, b));
  const auto tba = adjoint_image(hom, vn_product(b, a));
  const auto p1 = vn_product(ta, tb);
  const auto p2 = vn_product(tb, ta);
  std::vector<cplx> c(tab.coeffs.size());
  for (std::size_t g = 0; g < c.size(); ++g) c[g] = tab.coeffs[g] + tba.coeffs[g] - p1.coeffs[g] - p2.coeffs[g];
  return {tab.group, std::move(c)};
}

double jordan_basis_defect(const InducedHom& hom, int h, int k) {
  const auto& H = hom.bijection().source();
  return vn_norm(jordan_image(hom, GroupAlgebraElement::basis(H, h), GroupAlgebraElement::basis(H, k)),
                 hom.source_table());
}

namespace {

struct PairCandidate {
  double value = -1;
  std::vector<cplx> a, b;
};

double pair_value(const InducedHom& hom, const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const auto& H = hom.bijection().source();
  GroupAlgebraElement ea(H, a), eb(H, b);
  const double na = vn_norm(ea, hom.target_table()), nb = vn_norm(eb, hom.target_table());
  if (na == 0 || nb == 0) return 0;
  return vn_norm(jordan_image(hom, ea, eb), hom.source_table()) / (na * nb);
}

// Matrix of a -> T^J(a, b) on the lambda bases.
Matrix jordan_partial_map(const InducedHom& hom, const std::vector<cplx>& b) {
  const auto& H = hom.bijection().source();
  const int n = H.order();
  Matrix m(n, n);
  GroupAlgebraElement eb(H, b);
  for (int h = 0; h < n; ++h) {
    const auto col = jordan_image(hom, GroupAlgebraElement::basis(H, h), eb);
    for (int g = 0; g < n; ++g) m(g, h) = col.coeffs[g];
  }
  return m;
}

std::vector<cplx> scalar_coefficients(const std::vector<Matrix>& c) {
  std::vector<cplx> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i](0, 0);
  return out;
}

}  // namespace

JordanResult jordan_defect(const InducedHom& hom, long samples, std::uint64_t seed, Execution exec) {
  const auto& H = hom.bijection().source();
  const int n = H.order();
  JordanResult out;

  std::vector<PairCandidate> basis(n);
  for_each_index(n, exec, [&](long h) {
    PairCandidate best;
    for (int k = 0; k < n; ++k) {
      const double v = jordan_basis_defect(hom, static_cast<int>(h), k);
      if (v > best.value) {
        best.value = v;
        best.a = GroupAlgebraElement::basis(H, static_cast<int>(h)).coeffs;
        best.b = GroupAlgebraElement::basis(H, k).coeffs;
      }
    }
    basis[h] = std::move(best);
  });
  const PairCandidate* best_basis = &basis[0];
  for (const auto& c : basis)
    if (c.value > best_basis->value) best_basis = &c;
  out.basis_value = best_basis->value;
  for (int i = 0; i < n; ++i)
    if (&basis[i] == best_basis) out.basis_h = i;
  for (int k = 0; k < n; ++k)
    if (best_basis->b[k] != cplx(0.0)) out.basis_k = k;

  const long chunks = (std::max(0L, samples) + kSampleChunk - 1) / kSampleChunk;
  std::vector<PairCandidate> sampled(chunks);
  AmplifiedMap probe(hom.target_table(), hom.source_table(), hom.adjoint_matrix(), 1);
  for_each_index(chunks, exec, [&](long c) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const long count = std::min(kSampleChunk, samples - c * kSampleChunk);
    PairCandidate best;
    for (long i = 0; i < count; ++i) {
      auto a = scalar_coefficients(probe.coefficients(probe.random_unitary_blocks(rng)));
      auto b = scalar_coefficients(probe.coefficients(probe.random_unitary_blocks(rng)));
      const double v = pair_value(hom, a, b);
      if (v > best.value) best = {v, std::move(a), std::move(b)};
    }
    sampled[c] = std::move(best);
  });

  PairCandidate best = *best_basis;
  for (const auto& s : sampled)
    if (s.value > best.value) best = s;

  // Alternating refinement: with one argument fixed the defect is linear.
  Effort refine{4, 200, 0.1, 0, 0};
  for (int round = 0; round < 4; ++round) {
    for (int side = 0; side < 2; ++side) {
      const auto& fixed = side == 0 ? best.b : best.a;
      const auto& moving = side == 0 ? best.a : best.b;
      AmplifiedMap map(hom.target_table(), hom.source_table(), jordan_partial_map(hom, fixed), 1);
      std::vector<Matrix> start_coeffs;
      for (cplx c : moving) start_coeffs.push_back(Matrix::Constant(1, 1, c));
      const auto start = map.domain_blocks(start_coeffs);
      NormResult r = maximize_amplified_norm(map, refine, derive_seed(seed, 1000 + 2 * round + side), Execution::Serial,
                                             {start});
      auto updated = scalar_coefficients(r.witness);
      PairCandidate cand = side == 0 ? PairCandidate{0, updated, best.b} : PairCandidate{0, best.a, updated};
      cand.value = pair_value(hom, cand.a, cand.b);
      if (cand.value > best.value) best = std::move(cand);
    }
  }

  out.value = best.value;
  out.witness_a = std::move(best.a);
  out.witness_b = std::move(best.b);
  return out;
}

// ---------------------------------------------------------------------------

HomNormReport hom_norm_report(const InducedHom& hom, std::vector<int> levels, const Effort& effort, std::uint64_t seed,
                              Execution exec) {
  if (std::find(levels.begin(), levels.end(), 1) == levels.end()) levels.push_back(1);
  auto fwd = level_norms(hom, levels, effort, seed, exec);
  auto inv = level_norms(hom.inverse(), levels, effort, derive_seed(seed, 0x494E56ULL), exec);
  HomNormReport rep;
  rep.bijection = hom.bijection().map();
  for (auto& [k, r] : fwd) rep.levels[k] = LevelPair{std::move(r), std::move(inv.at(k))};
  rep.norm_T = rep.levels.at(1).forward.value;
  rep.norm_Tinv = rep.levels.at(1).inverse.value;
  rep.distortion = rep.norm_T * rep.norm_Tinv;
  return rep;
}

}  // namespace fdist
