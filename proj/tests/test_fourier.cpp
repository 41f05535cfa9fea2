#include <gtest/gtest.h>

#include <limits>
#include <numbers>

#include "fdist/error.hpp"
#include "fdist/fourier.hpp"
#include "oracles.hpp"

using namespace fdist;

namespace {

std::vector<cplx> random_values(int n, Rng& rng) {
  const Matrix m = gaussian_matrix(n, 1, rng);
  return std::vector<cplx>(m.data(), m.data() + n);
}

std::vector<cplx> delta(int n, int at) {
  std::vector<cplx> v(n, 0.0);
  v[at] = 1.0;
  return v;
}

}  // namespace

TEST(Schatten, Basics) {
  EXPECT_DOUBLE_EQ(schatten_norm(Matrix::Identity(2, 2), Schatten::One), 2.0);
  EXPECT_NEAR(schatten_norm(Matrix::Identity(2, 2), Schatten::Two), std::numbers::sqrt2, 1e-15);
  EXPECT_DOUBLE_EQ(schatten_norm(Matrix::Identity(2, 2), Schatten::Inf), 1.0);
  Matrix x(2, 2);
  x << 1, 0, std::polar(1.0, -std::numbers::pi / 3), 0;
  EXPECT_NEAR(schatten_norm(x, Schatten::One), std::numbers::sqrt2, 1e-12);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    schatten_norm(bad, Schatten::One);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numeric);
  }
}

TEST(Schatten, TwoByTwoTraceNormIdentity) {
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    const Matrix x = gaussian_matrix(2, 2, rng);
    const double rhs = std::sqrt(x.squaredNorm() + 2.0 * std::abs(x.determinant()));
    ASSERT_NEAR(schatten_norm(x, Schatten::One), rhs, 1e-10);
  }
}

TEST(Schatten, SpectralNormMatchesSvd) {
  Rng rng(5);
  for (int d = 1; d <= 6; ++d)
    for (int i = 0; i < 50; ++i) {
      const Matrix x = gaussian_matrix(d, d, rng);
      EXPECT_NEAR(spectral_norm(x), oracle::singular_values(x)(0), 1e-10);
    }
}

TEST(Fourier, TransformOfDeltaIsIdentity) {
  for (const auto& g : oracle::corpus()) {
    const IrrepTable t = irreps_of(g);
    const FourierBlocks b = fourier_transform(AFunction(g, delta(g.order(), 0)), t);
    for (int i = 0; i < t.size(); ++i) EXPECT_TRUE(b.blocks[i].isApprox(Matrix::Identity(t.irreps()[i].dim, t.irreps()[i].dim)));
    EXPECT_NEAR(a_norm(AFunction(g, delta(g.order(), 0)), t), 1.0, 1e-12) << g.label();
  }
}

TEST(Fourier, CharacterTransformOnZ6) {
  const auto z6 = make_cyclic(6);
  const IrrepTable t = irreps_of(z6);
  std::vector<cplx> chi1(6);
  for (int k = 0; k < 6; ++k) chi1[k] = std::polar(1.0, std::numbers::pi * k / 3);
  const FourierBlocks b = fourier_transform(AFunction(z6, chi1), t);
  int sixes = 0;
  for (const auto& blk : b.blocks) {
    const double v = std::abs(blk(0, 0));
    if (std::abs(v - 6.0) < 1e-10) ++sixes;
    else EXPECT_NEAR(v, 0.0, 1e-10);
  }
  EXPECT_EQ(sixes, 1);
}

TEST(Fourier, PublishedNormValues) {
  const auto z6 = make_cyclic(6), s3 = make_symmetric(3);
  const IrrepTable tz = irreps_of(z6), ts = irreps_of(s3);
  const std::vector<cplx> a{0, 1, 1, 0, 1, -1}, e1{0, 1, 0, 0, 0, 0};
  EXPECT_NEAR(a_norm(from_cyclic_expansion(z6, a), tz), 4.0, 1e-8);
  EXPECT_NEAR(a_norm(from_cyclic_expansion(s3, a), ts), 2.0 * std::numbers::sqrt2, 1e-8);
  EXPECT_NEAR(a_norm(from_cyclic_expansion(z6, e1), tz), 1.0, 1e-8);
  EXPECT_NEAR(a_norm(from_cyclic_expansion(s3, e1), ts), std::numbers::sqrt2, 1e-8);
}

// Expansion coefficients are the inverse of the plain character sums: the
// un-normalized transform of delta_0 would give norm 6.
TEST(Fourier, ExpansionCoefficientConvention) {
  const auto z6 = make_cyclic(6);
  const IrrepTable t = irreps_of(z6);
  const std::vector<cplx> ones(6, 1.0);
  const AFunction f = from_cyclic_expansion(z6, ones);
  EXPECT_NEAR(std::abs(f.values[0] - 6.0), 0, 1e-12);
  for (int k = 1; k < 6; ++k) EXPECT_NEAR(std::abs(f.values[k]), 0, 1e-12);
  EXPECT_NEAR(a_norm(f, t), 6.0, 1e-12);
}

TEST(Fourier, S3BlockMatchesPrintedFormula) {
  const auto s3 = make_symmetric(3);
  const IrrepTable t = irreps_of(s3);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_values(6, rng);
    Matrix p(2, 2);
    p << a[1] + a[4], std::polar(1.0, -2 * std::numbers::pi / 3) * (a[2] - a[5]),
        std::polar(1.0, -std::numbers::pi / 3) * (a[1] - a[4]), a[2] + a[5];
    p /= 2.0;
    const FourierBlocks b = fourier_transform(from_cyclic_expansion(s3, a), t);
    const Matrix& blk = b.blocks.back();  // the 2-dim irrep sorts last
    ASSERT_EQ(blk.rows(), 2);
    EXPECT_NEAR((oracle::singular_values(blk / 6.0) - oracle::singular_values(p)).norm(), 0, 1e-10);
  }
}

TEST(Fourier, NormAgreesWithRegularRepresentationOracle) {
  Rng rng(8);
  for (const auto& g : oracle::corpus()) {
    const IrrepTable t = irreps_of(g, 1);
    for (int i = 0; i < 20; ++i) {
      const auto v = random_values(g.order(), rng);
      EXPECT_NEAR(a_norm(AFunction(g, v), t), oracle::a_norm_regular(g, v), 1e-9) << g.label();
    }
  }
}

TEST(Fourier, AbelianNormIsSumOfCoefficients) {
  Rng rng(4);
  for (const char* name : {"Z6", "Z2xZ4", "Z2xZ2xZ2"}) {
    const auto g = parse_group(name);
    const auto chars = oracle::abelian_characters(g);
    ASSERT_EQ(static_cast<int>(chars.size()), g.order());
    const IrrepTable t = irreps_of(g);
    for (int i = 0; i < 20; ++i) {
      const auto v = random_values(g.order(), rng);
      double expected = 0;
      for (const auto& chi : chars) {
        cplx c = 0;
        for (int x = 0; x < g.order(); ++x) c += v[x] * std::conj(chi[x]);
        expected += std::abs(c) / g.order();
      }
      EXPECT_NEAR(a_norm(AFunction(g, v), t), expected, 1e-10);
    }
  }
}

TEST(Fourier, RoundTrip) {
  Rng rng(12);
  for (const auto& g : oracle::corpus()) {
    const IrrepTable t = irreps_of(g, 4);
    for (int i = 0; i < 100; ++i) {
      const AFunction f(g, random_values(g.order(), rng));
      const FourierBlocks b = fourier_transform(f, t);
      const AFunction back = fourier_inverse(b, t);
      double err = 0;
      for (int x = 0; x < g.order(); ++x) err = std::max(err, std::abs(back.values[x] - f.values[x]));
      ASSERT_LT(err, 1e-9) << g.label();
    }
  }
  // delta_e survives exactly enough to keep its norm
  const auto s3 = make_symmetric(3);
  const IrrepTable t = irreps_of(s3);
  const AFunction d(s3, delta(6, 0));
  EXPECT_NEAR(a_norm(fourier_inverse(fourier_transform(d, t), t), t), 1.0, 1e-12);
}

TEST(Fourier, VnNormAgainstRegularOperator) {
  Rng rng(21);
  for (const auto& g : oracle::corpus()) {
    const IrrepTable t = irreps_of(g);
    for (int x = 0; x < g.order(); ++x) EXPECT_NEAR(vn_norm(GroupAlgebraElement::basis(g, x), t), 1.0, 1e-12);
    for (int i = 0; i < 20; ++i) {
      const GroupAlgebraElement e(g, random_values(g.order(), rng));
      EXPECT_NEAR(vn_norm(e, t), oracle::vn_norm_regular(g, e.coeffs), 1e-9);
      EXPECT_NEAR(vn_norm_regular(e), oracle::vn_norm_regular(g, e.coeffs), 1e-9);
    }
  }
}

TEST(Fourier, VnBlocksRoundTrip) {
  Rng rng(2);
  const auto g = make_quaternion();
  const IrrepTable t = irreps_of(g);
  const GroupAlgebraElement e(g, random_values(8, rng));
  const auto blocks = vn_blocks(e, t);
  const auto back = vn_coefficients(blocks, t);
  for (int x = 0; x < 8; ++x) EXPECT_NEAR(std::abs(back[x] - e.coeffs[x]), 0, 1e-12);
}

TEST(Fourier, FourTermValueOnZ6) {
  const auto z6 = make_cyclic(6);
  std::vector<cplx> c{1, 1, -1, -1, 0, 0};
  // brute force over the six characters
  double brute = 0;
  for (int j = 0; j < 6; ++j) {
    cplx s = 0;
    for (int k = 0; k < 6; ++k) s += c[k] * std::polar(1.0, std::numbers::pi * j * k / 3);
    brute = std::max(brute, std::abs(s));
  }
  EXPECT_NEAR(vn_norm(GroupAlgebraElement(z6, c), irreps_of(z6)), brute, 1e-12);
  EXPECT_GE(brute, 2.0 - 1e-12);
}

TEST(Fourier, Duality) {
  Rng rng(30);
  for (const auto& g : oracle::corpus()) {
    const IrrepTable t = irreps_of(g);
    const AFunction f(g, random_values(g.order(), rng));
    const double norm = a_norm(f, t);
    for (int i = 0; i < 1000; ++i) {
      GroupAlgebraElement x(g, random_values(g.order(), rng));
      const double s = vn_norm(x, t);
      ASSERT_LE(std::abs(pairing(x, f)) / s, norm + 1e-9);
    }
    const auto seq = dual_norm_ascent(f, t, 400, 0.1, 1);
    for (std::size_t k = 1; k < seq.size(); ++k) ASSERT_GE(seq[k], seq[k - 1] - 1e-12);
    EXPECT_NEAR(seq.back(), norm, 1e-3) << g.label();
  }
}

TEST(Fourier, AlgebraNormIsSubmultiplicative) {
  Rng rng(31);
  for (const char* name : {"S3", "D4", "Q8", "Z6"}) {
    const auto g = parse_group(name);
    const IrrepTable t = irreps_of(g);
    for (int i = 0; i < 1000; ++i) {
      const AFunction a(g, random_values(g.order(), rng)), b(g, random_values(g.order(), rng));
      ASSERT_LE(a_norm(pointwise_product(a, b), t), a_norm(a, t) * a_norm(b, t) + 1e-9);
    }
  }
}

TEST(Fourier, TranslationInvariance) {
  Rng rng(32);
  for (const auto& g : oracle::corpus()) {
    const IrrepTable t = irreps_of(g);
    const AFunction f(g, random_values(g.order(), rng));
    const double n = a_norm(f, t);
    for (int x = 0; x < g.order(); ++x) EXPECT_NEAR(a_norm(translate_left(f, x), t), n, 1e-10);
  }
}

TEST(Fourier, NormInVnLowerBound) {
  Rng rng(33);
  for (const auto& g : oracle::corpus()) {
    const IrrepTable t = irreps_of(g);
    for (int i = 0; i < 200; ++i) {
      const auto c = random_values(g.order(), rng);
      double l2 = 0;
      for (cplx z : c) l2 += std::norm(z);
      ASSERT_GE(vn_norm(GroupAlgebraElement(g, c), t), std::sqrt(l2) - 1e-10);
    }
  }
}

TEST(Fourier, GroupMismatch) {
  const IrrepTable t = irreps_of(make_cyclic(6));
  const AFunction f(make_symmetric(3), delta(6, 0));
  try {
    a_norm(f, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
  EXPECT_THROW(AFunction(make_cyclic(3), delta(4, 0)), Error);
  EXPECT_THROW(GroupAlgebraElement(make_cyclic(3), delta(4, 0)), Error);
}
