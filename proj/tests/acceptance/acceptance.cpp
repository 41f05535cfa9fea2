// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and time budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "fdist/fourier.hpp"
#include "fdist/homspace.hpp"
#include "fdist/lemmas.hpp"
#include "fdist/search.hpp"

using namespace fdist;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds)
    o.require(false, "runtime " + num(secs) + " s exceeds " + num(budget_seconds) + " s");
  failures += !o.pass;
  std::printf("%s [%d] %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

std::vector<FiniteGroup> corpus() {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= 8; ++n) out.push_back(make_cyclic(n));
  for (const char* s : {"Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "S3", "D4", "Q8"}) out.push_back(parse_group(s));
  return out;
}

}  // namespace

int main() {
  const Effort effort = Effort::standard();
  const std::uint64_t seed = 0;
  const auto z4 = make_cyclic(4), z6 = make_cyclic(6), s3 = make_symmetric(3), v4 = parse_group("Z2xZ2");

  criterion(1, "Z6/S3 element identification: norms sqrt 2, distortion 2", 10, [&] {
    Outcome o;
    const InducedHom phi(GroupBijection(s3, z6, {0, 1, 2, 3, 4, 5}), irreps_of(z6, seed), irreps_of(s3, seed));
    const auto r = hom_norm_report(phi, {1}, effort, seed);
    o.require(near(r.norm_T, kSqrt2, 1e-4), "||T|| = " + num(r.norm_T));
    o.require(near(r.norm_Tinv, kSqrt2, 1e-4), "||T^-1|| = " + num(r.norm_Tinv));
    o.require(near(r.distortion, 2.0, 2e-4), "distortion = " + num(r.distortion));
    return o;
  });

  criterion(2, "norm witnesses: 4, 2 sqrt 2, 1, sqrt 2", 1, [&] {
    Outcome o;
    const std::vector<cplx> coeffs{0, 1, 1, 0, 1, -1}, e1{0, 1, 0, 0, 0, 0};
    const auto tz = irreps_of(z6, seed), ts = irreps_of(s3, seed);
    const double a = a_norm(from_cyclic_expansion(z6, coeffs), tz);
    const double b = a_norm(from_cyclic_expansion(s3, coeffs), ts);
    const double c = a_norm(from_cyclic_expansion(z6, e1), tz);
    const double d = a_norm(from_cyclic_expansion(s3, e1), ts);
    o.require(near(a, 4.0, 1e-8), "A(Z6) norm " + num(a));
    o.require(near(b, 2.0 * kSqrt2, 1e-8), "A(S3) norm " + num(b));
    o.require(near(c, 1.0, 1e-8), "A(Z6) norm of e1 " + num(c));
    o.require(near(d, kSqrt2, 1e-8), "A(S3) norm of e1 " + num(d));
    return o;
  });

  criterion(3, "Z4/Z2xZ2: min distortion 2, a norm-sqrt 2 bijection, eps0 <= 1", 30, [&] {
    Outcome o;
    const auto r = min_distortion(z4, v4, effort, seed);
    o.require(r.exhaustive && r.records.size() == 6, "expected 6 canonical bijections");
    o.require(near(r.min_distortion, 2.0, 1e-3), "min distortion " + num(r.min_distortion));
    double closest = std::numeric_limits<double>::infinity();
    for (const auto& rec : r.records)
      if (std::abs(rec.norm_T - kSqrt2) < std::abs(closest - kSqrt2)) closest = rec.norm_T;
    o.require(near(closest, kSqrt2, 1e-4), "closest ||T|| " + num(closest));
    const auto eps = epsilon_zero_bound({{z4, v4}}, effort, seed);
    o.require(eps.bound <= 1.0 + 1e-3, "eps0 bound " + num(eps.bound));
    return o;
  });

  // Shared by criteria 4 and 7.
  std::optional<SearchResult> z6s3;
  criterion(4, "non-isomorphic pairs: max level-2 norm of T, T^-1 >= sqrt(3/2) - 1e-3", 20 * 60, [&] {
    Outcome o;
    const auto kw = norm_gap_scan(z4, v4, 2, effort, seed);
    z6s3 = norm_gap_scan(z6, s3, 2, effort, seed);
    const SearchResult& big = *z6s3;
    for (const SearchResult* r : {&kw, &big}) {
      const std::string pair = r->g.label() + "/" + r->h.label();
      o.require(r->exhaustive, pair + " not exhaustive");
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& rec : r->records) {
        const auto& l2 = rec.levels.at(2);
        worst = std::min(worst, std::max(l2.forward.value, l2.inverse.value));
      }
      o.require(worst >= kSqrtThreeHalves - 1e-3, pair + " worst " + num(worst));
      o.detail += (o.detail.empty() ? "" : ", ") + pair + " " + std::to_string(r->records.size()) +
                  " bijections, min max-level-2 " + num(worst);
    }
    o.require(kw.records.size() == 6 && z6s3->records.size() == 120, "bijection counts");
    return o;
  });

  criterion(5, "block lemmas at dims 2, 4, 8 and the four-term gap on Z6, S3, D4", 5 * 60, [&] {
    Outcome o;
    for (int dim : {2, 4, 8}) {
      BlockLemmaOptions opts;
      opts.dim = dim;
      opts.trials = 10000;
      opts.seed = seed;
      for (const auto& rep : {verify_invmult(opts), verify_unitmult(opts)}) {
        const std::string tag = lemma_name(rep.id) + " " + rep.scope;
        o.require(rep.passed(), tag + " counterexample");
        o.require(rep.worst_margin >= -1e-9, tag + " margin " + num(rep.worst_margin));
        if (rep.adversarial_margin) o.require(*rep.adversarial_margin >= -1e-9, tag + " adversarial margin");
      }
    }
    for (const char* name : {"Z6", "S3", "D4"}) {
      const auto rep = verify_norm_gap(irreps_of(parse_group(name), seed), 10000, seed);
      o.require(rep.passed() && rep.worst_margin >= -1e-10, std::string(name) + " margin " + num(rep.worst_margin));
      o.require(rep.min_nonzero_four_term && *rep.min_nonzero_four_term >= kSqrt2 - 1e-10,
                std::string(name) + " smallest nonzero four-term norm");
    }
    return o;
  });

  criterion(6, "isomorphisms are complete isometries, ||delta_e|| = 1, Fourier round trip", 0, [&] {
    Outcome o;
    for (const auto& g : corpus()) {
      const auto t = irreps_of(g, seed);
      const int n = g.order();
      std::vector<cplx> delta(n, 0.0);
      delta[0] = 1.0;
      const double de = a_norm(AFunction(g, delta), t);
      o.require(near(de, 1.0, 1e-12), g.label() + " ||delta_e|| " + num(de));

      Rng rng(derive_seed(seed, n));
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        const Matrix v = gaussian_matrix(n, 1, rng);
        const AFunction f(g, std::vector<cplx>(v.data(), v.data() + n));
        const AFunction back = fourier_inverse(fourier_transform(f, t), t);
        for (int x = 0; x < n; ++x) worst = std::max(worst, std::abs(back.values[x] - f.values[x]));
      }
      o.require(worst < 1e-9, g.label() + " round trip " + num(worst));

      const auto autos = automorphisms(g);
      for (std::size_t a = 0; a < autos.size() && a < 4; ++a) {
        const InducedHom hom(GroupBijection(g, g, autos[a]), t, t);
        for (const auto& [k, r] : level_norms(hom, {1, 2}, effort, seed))
          o.require(near(r.value, 1.0, 1e-8), g.label() + " level " + std::to_string(k) + " " + num(r.value));
      }
    }
    // between differently presented isomorphic groups
    const auto z2z3 = parse_group("Z2xZ3");
    const auto w = find_isomorphism(z2z3, z6);
    o.require(w.has_value(), "Z2xZ3 ~ Z6");
    if (w) {
      const InducedHom hom(*w, irreps_of(z6, seed), irreps_of(z2z3, seed));
      for (const auto& [k, r] : level_norms(hom, {1, 2}, effort, seed))
        o.require(near(r.value, 1.0, 1e-8), "Z6/Z2xZ3 level " + std::to_string(k));
      for (const auto& [k, r] : level_norms(hom.inverse(), {1, 2}, effort, seed))
        o.require(near(r.value, 1.0, 1e-8), "Z2xZ3/Z6 level " + std::to_string(k));
    }
    return o;
  });

  criterion(7, "advisory gap scan on Z6/S3: no level-2 norm in (1 + 1e-3, sqrt(3/2) - 1e-3)", 0, [&] {
    Outcome o;
    if (!z6s3) z6s3 = norm_gap_scan(z6, s3, 2, effort, seed);
    int forbidden = 0, reported = 0;
    for (const auto& rec : z6s3->records) {
      const auto& l2 = rec.levels.at(2);
      for (double v : {l2.forward.value, l2.inverse.value}) {
        forbidden += v > 1.0 + 1e-3 && v < kSqrtThreeHalves - 1e-3;
        reported += v >= kSqrtFiveHalf && v < kSqrtThreeHalves;
      }
    }
    o.require(forbidden == 0, std::to_string(forbidden) + " values in the forbidden interval");
    const auto& hist = z6s3->histogram;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("histogram isometric ") +
                std::to_string(hist.isometric) + ", below sqrt(5)/2 " + std::to_string(hist.below_gap) +
                ", [sqrt(5)/2, sqrt(3/2)) " + std::to_string(hist.between) + " (reported only: " +
                std::to_string(reported) + "), above " + std::to_string(hist.above) + ", min " +
                num(z6s3->min_level2);
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
