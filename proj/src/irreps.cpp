#include "fdist/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdist/error.hpp"
#include "fdist/parallel.hpp"

namespace fdist {

std::vector<int> IrrepTable::dims() const {
  std::vector<int> d;
  for (const auto& p : irreps_) d.push_back(p.dim);
  return d;
}

int IrrepTable::max_dim() const {
  int m = 0;
  for (const auto& p : irreps_) m = std::max(m, p.dim);
  return m;
}

int IrrepTable::dim_sum() const {
  int s = 0;
  for (const auto& p : irreps_) s += p.dim;
  return s;
}

namespace {

cplx character_inner(const Irrep& a, const Irrep& b, int n) {
  cplx acc = 0;
  for (int g = 0; g < n; ++g) acc += a.character(g) * std::conj(b.character(g));
  return acc / static_cast<double>(n);
}

}  // namespace

IrrepDiagnostics check_irrep_table(const IrrepTable& table) {
  const FiniteGroup& grp = table.group();
  const int n = grp.order();
  IrrepDiagnostics d;
  const auto& irreps = table.irreps();
  for (std::size_t a = 0; a < irreps.size(); ++a) {
    const Irrep& p = irreps[a];
    d.dim_square_sum += p.dim * p.dim;
    if (static_cast<int>(p.matrices.size()) != n) {
      d.homomorphism_error = INFINITY;
      continue;
    }
    const Matrix id = Matrix::Identity(p.dim, p.dim);
    for (int g = 0; g < n; ++g) {
      d.unitarity_error = std::max(d.unitarity_error, (p.matrices[g] * p.matrices[g].adjoint() - id).cwiseAbs().maxCoeff());
      for (int h = 0; h < n; ++h) {
        const double err = (p.matrices[grp.mul(g, h)] - p.matrices[g] * p.matrices[h]).cwiseAbs().maxCoeff();
        d.homomorphism_error = std::max(d.homomorphism_error, err);
      }
    }
    d.character_norm_error = std::max(d.character_norm_error, std::abs(character_inner(p, p, n) - 1.0));
    for (std::size_t b = 0; b < a; ++b)
      d.orthogonality_error = std::max(d.orthogonality_error, std::abs(character_inner(p, irreps[b], n)));
  }
  return d;
}

std::vector<Matrix> regular_representation(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Matrix> lambda(n, Matrix::Zero(n, n));
  for (int x = 0; x < n; ++x)
    for (int h = 0; h < n; ++h) lambda[x](g.mul(x, h), h) = 1.0;
  return lambda;
}

namespace {

struct Attempt {
  std::vector<Irrep> irreps;
  std::string diagnostic;  // empty on success
};

// Restriction of lambda to the orthonormal columns of v: V* lambda_g V, with
// (lambda_g V)_{gh,:} = V_{h,:}.
Irrep restrict_regular(const FiniteGroup& grp, const Matrix& v) {
  const int n = grp.order();
  const int d = static_cast<int>(v.cols());
  Irrep p{d, {}};
  p.matrices.reserve(n);
  Matrix moved(n, d);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) moved.row(grp.mul(g, h)) = v.row(h);
    p.matrices.push_back(polar_unitary(v.adjoint() * moved));
  }
  return p;
}

bool same_character(const Irrep& a, const Irrep& b, int n) {
  if (a.dim != b.dim) return false;
  for (int g = 0; g < n; ++g)
    if (std::abs(a.character(g) - b.character(g)) > 1e-6) return false;
  return true;
}

Attempt split_once(const FiniteGroup& grp, std::uint64_t seed) {
  const int n = grp.order();
  Rng rng(seed);
  const Matrix gauss = gaussian_matrix(n, n, rng);
  const Matrix r = (gauss + gauss.adjoint()) / 2.0;

  // Commutant average (1/n) sum_g lambda_g R lambda_g^{-1}.
  Matrix x = Matrix::Zero(n, n);
  for (int g = 0; g < n; ++g) {
    const int gi = grp.inverse(g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) += r(grp.mul(gi, i), grp.mul(gi, j));
  }
  x /= static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(x);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double cluster_tol = 1e-6 * scale;

  std::vector<std::pair<int, int>> clusters;  // [begin, end)
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && ev(j) - ev(j - 1) <= cluster_tol) ++j;
    clusters.emplace_back(i, j);
    i = j;
  }

  Attempt out;
  std::vector<Irrep> classes;
  std::vector<int> multiplicity;
  for (auto [b, e] : clusters) {
    Irrep p = restrict_regular(grp, eig.eigenvectors().middleCols(b, e - b));
    const double norm = std::abs(character_inner(p, p, n));
    if (std::abs(norm - 1.0) > kRepTolerance) {
      double min_gap = INFINITY;
      for (int i = 1; i < n; ++i)
        if (ev(i) - ev(i - 1) > cluster_tol) min_gap = std::min(min_gap, ev(i) - ev(i - 1));
      std::ostringstream msg;
      msg << "reducible block of dimension " << p.dim << " (character norm " << norm
          << "); smallest separated eigenvalue gap " << min_gap / scale << " relative, cluster threshold 1e-6";
      out.diagnostic = msg.str();
      return out;
    }
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Irrep& q) { return same_character(p, q, n); });
    if (it == classes.end()) {
      classes.push_back(std::move(p));
      multiplicity.push_back(1);
    } else {
      ++multiplicity[it - classes.begin()];
    }
  }

  int square_sum = 0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    square_sum += classes[k].dim * classes[k].dim;
    if (multiplicity[k] != classes[k].dim) {
      out.diagnostic = "irrep of dimension " + std::to_string(classes[k].dim) + " found with multiplicity " +
                       std::to_string(multiplicity[k]);
      return out;
    }
  }
  if (square_sum != n) {
    out.diagnostic = "dimension squares sum to " + std::to_string(square_sum) + ", expected " + std::to_string(n);
    return out;
  }
  out.irreps = std::move(classes);
  return out;
}

long long rounded(double v) { return std::llround(v * 1e6); }

bool canonical_less(const Irrep& a, const Irrep& b, int n) {
  if (a.dim != b.dim) return a.dim < b.dim;
  for (int g = 0; g < n; ++g) {
    const cplx ca = a.character(g), cb = b.character(g);
    if (rounded(ca.real()) != rounded(cb.real())) return rounded(ca.real()) > rounded(cb.real());
    if (rounded(ca.imag()) != rounded(cb.imag())) return rounded(ca.imag()) > rounded(cb.imag());
  }
  return false;
}

}  // namespace

IrrepTable irreps_of(const FiniteGroup& g, std::uint64_t seed) {
  if (g.order() > 120) fail(ErrorKind::SizeLimit, "irrep extraction is limited to order 120");
  std::string last;
  for (int attempt = 0; attempt < kIrrepMaxAttempts; ++attempt) {
    Attempt a = split_once(g, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (!a.diagnostic.empty()) {
      last = a.diagnostic;
      continue;
    }
    const int n = g.order();
    std::stable_sort(a.irreps.begin(), a.irreps.end(),
                     [n](const Irrep& x, const Irrep& y) { return canonical_less(x, y, n); });
    IrrepTable table(g, std::move(a.irreps));
    if (check_irrep_table(table).valid(n)) return table;
    last = "irrep table failed validation";
  }
  fail(ErrorKind::DegenerateSpectrum, "irreps_of(" + g.label() + "): retry cap exceeded: " + last);
}

Matrix character_table(const IrrepTable& table) {
  const auto classes = table.group().conjugacy_classes();
  Matrix chars(table.size(), static_cast<Eigen::Index>(classes.size()));
  for (int a = 0; a < table.size(); ++a)
    for (std::size_t c = 0; c < classes.size(); ++c) chars(a, c) = table.irreps()[a].character(classes[c].front());
  return chars;
}

}  // namespace fdist
