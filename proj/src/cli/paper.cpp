#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "fdist/cli.hpp"
#include "fdist/lemmas.hpp"
#include "fdist/search.hpp"

namespace fdist {

bool PaperReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const PaperRow& r) { return r.pass; });
}

namespace {

class RowSink {
 public:
  explicit RowSink(std::vector<PaperRow>& rows) : rows_(rows) {}

  void section(std::string name) { section_ = std::move(name); }

  void equal(std::string claim, double expected, double computed, double tol) {
    add(std::move(claim), "=", expected, computed, tol, std::abs(computed - expected) <= tol);
  }
  void at_most(std::string claim, double bound, double computed, double tol) {
    add(std::move(claim), "<=", bound, computed, tol, computed <= bound + tol);
  }
  void at_least(std::string claim, double bound, double computed, double tol) {
    add(std::move(claim), ">=", bound, computed, tol, computed >= bound - tol);
  }

 private:
  void add(std::string claim, const char* rel, double expected, double computed, double tol, bool pass) {
    // NaN never passes
    rows_.push_back({section_, std::move(claim), rel, expected, computed, tol, pass && !std::isnan(computed)});
  }

  std::vector<PaperRow>& rows_;
  std::string section_;
};

const double kSqrt2 = std::numbers::sqrt2;

cplx root_of_unity(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

// pi(s) and pi(r) as printed, extended to S3 = {id, s, r, sr, r^2, sr^2}.
std::vector<Matrix> printed_s3_pi() {
  Matrix s(2, 2), r(2, 2);
  s << 0, 1, 1, 0;
  r << root_of_unity(1.0 / 3), 0, 0, root_of_unity(-1.0 / 3);
  const Matrix id = Matrix::Identity(2, 2);
  return {id, s, r, s * r, r * r, s * r * r};
}

// The printed closed form of pi(f) in terms of expansion coefficients a.
Matrix printed_pi_block(const std::vector<cplx>& a) {
  Matrix p(2, 2);
  p << a[1] + a[4], root_of_unity(-1.0 / 3) * (a[2] - a[5]), std::polar(1.0, -std::numbers::pi / 3) * (a[1] - a[4]),
      a[2] + a[5];
  return p / 2.0;
}

Vector singular_values(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues(); }

const Irrep* irrep_of_dim(const IrrepTable& t, int dim) {
  for (const auto& ir : t.irreps())
    if (ir.dim == dim) return &ir;
  return nullptr;
}

void group_rows(RowSink& sink) {
  sink.section("group");
  const FiniteGroup z6 = make_cyclic(6);
  sink.equal("Z6: 2 + 5 = 1", 1, z6.mul(2, 5), 0);

  const FiniteGroup s3 = make_symmetric(3);
  // Ordering {id, s, r, sr, r^2, sr^2}: count violated defining relations.
  int bad = 0;
  bad += s3.mul(1, 1) != 0;
  bad += s3.mul(2, s3.mul(2, 2)) != 0;
  bad += s3.mul(1, 2) != 3;
  bad += s3.mul(2, 2) != 4;
  bad += s3.mul(1, 4) != 5;
  bad += s3.mul(1, 2) == s3.mul(2, 1);
  sink.equal("S3 ordered {id,s,r,sr,r^2,sr^2}, non-abelian: violated relations", 0, bad, 0);
}

void repr_rows(RowSink& sink, std::uint64_t seed) {
  sink.section("repr");
  const FiniteGroup z6 = make_cyclic(6);
  const IrrepTable tz = irreps_of(z6, seed);
  double worst = tz.size() == 6 ? 0.0 : 1.0;
  for (int j = 0; j < 6; ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ir : tz.irreps()) {
      if (ir.dim != 1) continue;
      double err = 0;
      for (int k = 0; k < 6; ++k) err = std::max(err, std::abs(ir.matrices[k](0, 0) - root_of_unity(j * k / 6.0)));
      best = std::min(best, err);
    }
    worst = std::max(worst, best);
  }
  sink.equal("Z6 characters are exp(i pi j k / 3), j = 0..5", 0, worst, 1e-8);

  const FiniteGroup s3 = make_symmetric(3);
  const IrrepTable ts = irreps_of(s3, seed);
  const auto dims = ts.dims();
  sink.equal("S3 has three irreps", 3, ts.size(), 0);
  sink.equal("S3 irrep dimensions sum of squares (1 + 1 + 4)", 6,
             std::accumulate(dims.begin(), dims.end(), 0, [](int s, int d) { return s + d * d; }), 0);

  const auto pi = printed_s3_pi();
  double hom_err = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) hom_err = std::max(hom_err, (pi[s3.mul(a, b)] - pi[a] * pi[b]).norm());
  sink.equal("printed pi(s), pi(r) define a representation of S3", 0, hom_err, 1e-12);

  const Irrep* two = irrep_of_dim(ts, 2);
  double char_err = two ? 0.0 : 1.0;
  if (two)
    for (int g = 0; g < 6; ++g) char_err = std::max(char_err, std::abs(two->character(g) - pi[g].trace()));
  sink.equal("computed 2-dim irrep has the character of printed pi", 0, char_err, 1e-8);

  // lambda = chi_0 + chi_3 + pi + pi, compared by characters.
  double reg_err = 0;
  for (int g = 0; g < 6; ++g) {
    cplx sum = 0;
    for (const auto& ir : ts.irreps()) sum += static_cast<double>(ir.dim) * ir.character(g);
    reg_err = std::max(reg_err, std::abs(sum - (g == 0 ? 6.0 : 0.0)));
  }
  sink.equal("regular character equals chi_0 + chi_3 + 2 pi", 0, reg_err, 1e-8);
}

void fourier_rows(RowSink& sink, const PaperOptions& opts) {
  sink.section("fourier");
  Matrix footnote(2, 2);
  footnote << 1, 0, std::polar(1.0, -std::numbers::pi / 3), 0;
  sink.equal("||2 pi(f)||_1 for the printed pi(f) of f^ = e_1", kSqrt2, schatten_norm(footnote, Schatten::One),
             1e-12);

  Rng rng(derive_seed(opts.seed, 0x5331));
  double s1_err = 0;
  for (int i = 0; i < 1000; ++i) {
    const Matrix x = gaussian_matrix(2, 2, rng);
    const double rhs = std::sqrt(x.squaredNorm() + 2.0 * std::abs(x.determinant()));
    s1_err = std::max(s1_err, std::abs(schatten_norm(x, Schatten::One) - rhs));
  }
  sink.equal("||x||_1 = (||x||_2^2 + 2|det x|)^(1/2) on 1000 random 2x2", 0, s1_err, 1e-10);

  auto table = [&](const FiniteGroup& g) {
    IrrepTable t = irreps_of(g, opts.seed);
    return opts.fourier_table_hook ? opts.fourier_table_hook(t) : t;
  };
  const FiniteGroup z6 = make_cyclic(6), s3 = make_symmetric(3);
  const IrrepTable tz = table(z6), ts = table(s3);

  const std::vector<cplx> witness{0, 1, 1, 0, 1, -1};
  const std::vector<cplx> e1{0, 1, 0, 0, 0, 0};
  sink.equal("||f||_A(Z6) = 4 for f^ = (0,1,1,0,1,-1)", 4.0, a_norm(from_cyclic_expansion(z6, witness), tz), 1e-8);
  sink.equal("||f||_A(S3) = 2 sqrt 2 for f^ = (0,1,1,0,1,-1)", 2 * kSqrt2,
             a_norm(from_cyclic_expansion(s3, witness), ts), 1e-8);
  sink.equal("||f||_A(Z6) = 1 for f^ = e_1", 1.0, a_norm(from_cyclic_expansion(z6, e1), tz), 1e-8);
  sink.equal("||f||_A(S3) = sqrt 2 for f^ = e_1", kSqrt2, a_norm(from_cyclic_expansion(s3, e1), ts), 1e-8);

  // The printed pi(f) and the computed 2-dim block agree up to unitaries.
  double block_err = 0;
  const Irrep* two = irrep_of_dim(ts, 2);
  if (!two) block_err = 1;
  for (const auto* a : {&witness, &e1}) {
    if (!two) break;
    const FourierBlocks fb = fourier_transform(from_cyclic_expansion(s3, *a), ts);
    const auto pos = std::find_if(ts.irreps().begin(), ts.irreps().end(), [](const Irrep& i) { return i.dim == 2; });
    const Matrix& block = fb.blocks[pos - ts.irreps().begin()];
    block_err = std::max(block_err, (singular_values(block / 6.0) - singular_values(printed_pi_block(*a))).norm());
  }
  sink.equal("singular values of pi(f) match the printed closed form", 0, block_err, 1e-8);

  double formula_err = 0;
  for (int i = 0; i < 100; ++i) {
    const Matrix g = gaussian_matrix(6, 1, rng);
    const std::vector<cplx> a(g.data(), g.data() + 6);
    const double printed = std::abs(a[0]) + std::abs(a[3]) + 2.0 * schatten_norm(printed_pi_block(a), Schatten::One);
    formula_err = std::max(formula_err, std::abs(a_norm(from_cyclic_expansion(s3, a), ts) - printed));
  }
  sink.equal("||f||_A(S3) = |f^_0| + |f^_3| + 2 ||pi(f)||_1 on 100 random f^", 0, formula_err, 1e-8);

  for (const auto* t : {&tz, &ts}) {
    std::vector<cplx> delta(6, 0.0);
    delta[0] = 1;
    sink.equal("||delta_e||_A(" + t->group().label() + ") = 1", 1.0, a_norm(AFunction(t->group(), delta), *t), 1e-12);
  }
}

void homspace_rows(RowSink& sink, const PaperOptions& opts) {
  sink.section("homspace");
  const FiniteGroup z6 = make_cyclic(6), s3 = make_symmetric(3);
  const InducedHom phi(GroupBijection(s3, z6, {0, 1, 2, 3, 4, 5}), irreps_of(z6, opts.seed), irreps_of(s3, opts.seed));
  const HomNormReport rep = hom_norm_report(phi, {1}, opts.effort, opts.seed, opts.exec);
  sink.equal("||Phi|| = sqrt 2 (Z6 -> S3)", kSqrt2, rep.norm_T, 1e-4);
  sink.equal("||Phi^-1|| = sqrt 2", kSqrt2, rep.norm_Tinv, 1e-4);
  sink.equal("distortion of Phi = 2", 2.0, rep.distortion, 2e-4);

  // Jordan defect on (lambda_h, lambda_h^-1) is ||2 lambda_e - S*(h)S*(h^-1) - S*(h^-1)S*(h)||.
  double jordan_err = 0;
  for (int h = 0; h < 6; ++h) {
    const int a = phi.bijection()(h), b = phi.bijection()(s3.inverse(h));
    std::vector<cplx> c(6, 0.0);
    c[0] += 2.0;
    c[z6.mul(a, b)] -= 1.0;
    c[z6.mul(b, a)] -= 1.0;
    const double direct = vn_norm_regular(GroupAlgebraElement(z6, c));
    jordan_err = std::max(jordan_err, std::abs(jordan_basis_defect(phi, h, s3.inverse(h)) - direct));
  }
  sink.equal("Jordan defect on (h, h^-1) matches its closed form", 0, jordan_err, 1e-10);
}

void search_rows(RowSink& sink, const PaperOptions& opts) {
  sink.section("search");
  const FiniteGroup z4 = make_cyclic(4), v4 = parse_group("Z2xZ2");
  const SearchResult kw = min_distortion(z4, v4, opts.effort, opts.seed, opts.exec);
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& r : kw.records)
    if (std::abs(r.norm_T - kSqrt2) < std::abs(closest - kSqrt2)) closest = r.norm_T;
  sink.equal("some T: A(Z4) -> A(Z2xZ2) has norm sqrt 2", kSqrt2, closest, 1e-4);
  sink.equal("min distortion over Z4 <-> Z2xZ2 bijections = 2", 2.0, kw.min_distortion, 1e-3);
  sink.at_most("epsilon_0 bound from (Z4, Z2xZ2)", 1.0, kw.min_distortion - 1.0, 1e-3);
}

void lemma_rows(RowSink& sink, const PaperOptions& opts) {
  sink.section("lemmas");
  Rng rng(derive_seed(opts.seed, 0x4C4D));
  const Matrix u = haar_unitary(4, rng);
  const Matrix id = Matrix::Identity(4, 4);
  Matrix block(8, 8);
  block << u, id, -id, u.adjoint();
  sink.equal("||[[u,1],[-1,u*]]|| / sqrt 2 = 1 for unitary u", 1.0, spectral_norm(block) / kSqrt2, 1e-12);
  const LemmaReport gap = verify_norm_gap(irreps_of(make_cyclic(6), opts.seed), 0, opts.seed, opts.exec);
  sink.at_least("Z6 four-term sums: smallest nonzero norm >= sqrt 2", kSqrt2, gap.min_nonzero_four_term.value_or(0),
                1e-10);
}

}  // namespace

PaperReport reproduce_paper(const PaperOptions& opts) {
  PaperReport rep;
  RowSink sink(rep.rows);
  group_rows(sink);
  repr_rows(sink, opts.seed);
  fourier_rows(sink, opts);
  homspace_rows(sink, opts);
  search_rows(sink, opts);
  lemma_rows(sink, opts);
  return rep;
}

}  // namespace fdist
