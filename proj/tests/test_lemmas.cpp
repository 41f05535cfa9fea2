#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fdist/error.hpp"
#include "fdist/lemmas.hpp"
#include "oracles.hpp"

using namespace fdist;

TEST(Lemmas, HaarUnitariesAreUnitary) {
  Rng rng(1);
  for (int dim : {1, 2, 4, 8})
    for (int i = 0; i < 50; ++i) {
      const Matrix u = haar_unitary(dim, rng);
      EXPECT_LT(spectral_norm(u * u.adjoint() - Matrix::Identity(dim, dim)), 1e-10);
    }
}

TEST(Lemmas, EqualityConfigurations) {
  Rng rng(2);
  for (int dim : {1, 2, 4}) {
    const Matrix u = haar_unitary(dim, rng), v = haar_unitary(dim, rng);
    // ||[[u, 1], [-1, u*]]|| = sqrt 2 exactly, so the bound is 0 and x = u* attains it
    EXPECT_NEAR(invmult_margin(u, u.adjoint()), 0.0, 1e-6);
    EXPECT_GE(invmult_margin(u, u.adjoint()), -kBlockLemmaTolerance);
    EXPECT_NEAR(unitmult_margin(u, v, u * v), 0.0, 1e-6);
    // the c < 1 branch never occurs: ||B|| >= sqrt 2 whenever u is unitary
    const Matrix id = Matrix::Identity(dim, dim);
    EXPECT_GE(unitmult_margin(id, id, Matrix::Zero(dim, dim)), 0.0);
  }
  const Matrix one = Matrix::Identity(1, 1);
  // u = v = 1, x = 1: [[1, 1], [-1, 1]] = sqrt 2 times a rotation
  EXPECT_NEAR(unitmult_margin(one, one, one), 0.0, 1e-7);
  // u = 1, x = -1: [[1, 1], [-1, -1]] has norm 2, so c = sqrt 2 and the bound 2 meets ||x - 1|| = 2
  EXPECT_NEAR(invmult_margin(one, -one), 0.0, 1e-12);
}

TEST(Lemmas, PerturbationSweep) {
  Rng rng(3);
  const Matrix u = haar_unitary(4, rng);
  Matrix e = gaussian_matrix(4, 4, rng);
  e /= spectral_norm(e);
  for (int p = 1; p <= 12; ++p) {
    const double t = std::pow(10.0, -p / 2.0);
    EXPECT_GE(invmult_margin(u, u.adjoint() + t * e), -kBlockLemmaTolerance) << t;
  }
}

TEST(Lemmas, RandomBlockLemmas) {
  for (int dim : {2, 4, 8}) {
    BlockLemmaOptions o;
    o.dim = dim;
    o.trials = 2000;
    o.seed = 5;
    for (const auto& rep : {verify_invmult(o), verify_unitmult(o)}) {
      SCOPED_TRACE(lemma_name(rep.id) + " " + rep.scope);
      EXPECT_TRUE(rep.passed());
      EXPECT_GE(rep.worst_margin, -kBlockLemmaTolerance);
      ASSERT_TRUE(rep.adversarial_margin.has_value());
      EXPECT_LE(*rep.adversarial_margin, rep.worst_margin);
      EXPECT_GE(*rep.adversarial_margin, -kBlockLemmaTolerance);
      EXPECT_EQ(rep.trials, 2000);
      EXPECT_EQ(rep.discarded, 0);
    }
  }
  BlockLemmaOptions big;
  big.dim = 9;
  EXPECT_THROW(verify_invmult(big), Error);
}

TEST(Lemmas, NormGapDichotomy) {
  for (const char* name : {"Z6", "S3", "D4", "Q8"}) {
    const auto g = parse_group(name);
    const auto rep = verify_norm_gap(irreps_of(g), 1000, 0);
    EXPECT_TRUE(rep.passed()) << name;
    EXPECT_GE(rep.worst_margin, -kNormGapTolerance) << name;
    ASSERT_TRUE(rep.min_nonzero_four_term.has_value());
    EXPECT_GE(*rep.min_nonzero_four_term, std::numbers::sqrt2 - kNormGapTolerance) << name;
  }
  // frozen from the explicit regular representation
  const auto d4 = make_dihedral(4);
  double lo = 1e9;
  const int n = d4.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if ((a == c && b == d) || (a == d && b == c)) continue;
          std::vector<cplx> co(n, 0.0);
          co[a] += 1.0;
          co[b] += 1.0;
          co[c] -= 1.0;
          co[d] -= 1.0;
          lo = std::min(lo, oracle::vn_norm_regular(d4, co));
        }
  EXPECT_NEAR(*verify_norm_gap(irreps_of(d4), 0, 0).min_nonzero_four_term, lo, 1e-9);
  EXPECT_NEAR(lo, 2.0, 1e-9);
  EXPECT_NEAR(*verify_norm_gap(irreps_of(make_cyclic(6)), 0, 0).min_nonzero_four_term, std::sqrt(3.0), 1e-9);
}

TEST(Lemmas, JordanRhoTable) {
  const auto z4 = make_cyclic(4), v = parse_group("Z2xZ2");
  const auto tg = irreps_of(z4), th = irreps_of(v);
  std::vector<InducedHom> homs;
  for (const auto& m : std::vector<std::vector<int>>{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}})
    homs.emplace_back(GroupBijection(v, z4, m), tg, th);
  const auto z4self = irreps_of(z4);
  homs.emplace_back(GroupBijection(z4, z4, {0, 3, 2, 1}), z4self, z4self);
  const auto pts = rho_points(homs, Effort::low(), 100, 0);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_NEAR(pts[3].distortion_excess, 0.0, 1e-8);
  EXPECT_NEAR(pts[3].jordan_defect, 0.0, 1e-8);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(pts[i].distortion_excess, 1.0, 1e-6);
    EXPECT_GE(pts[i].jordan_defect, std::numbers::sqrt2 - 1e-6);
  }
  const auto rows = estimate_jordan_rho({0.0, 0.5, 1.0, 1.5, 100.0}, pts);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].count, 4);
  EXPECT_EQ(rows[1].count, 3);
  EXPECT_NEAR(*rows[1].min_excess, 1.0, 1e-6);
  EXPECT_EQ(rows[4].count, 0);
  EXPECT_FALSE(rows[4].min_excess.has_value());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].count, rows[i - 1].count);
    if (rows[i].max_excess) EXPECT_LE(*rows[i].max_excess, *rows[i - 1].max_excess);
  }
}
