#include "fdist/fourier.hpp"

#include <cmath>
#include <numbers>

#include "fdist/error.hpp"

namespace fdist {

namespace {

void require_same_group(const FiniteGroup& a, const FiniteGroup& b, const char* what) {
  if (!(a == b)) fail(ErrorKind::InvalidArgument, std::string(what) + ": group mismatch (" + a.label() + " vs " + b.label() + ")");
}

}  // namespace

AFunction::AFunction(FiniteGroup g, std::vector<cplx> v) : group(std::move(g)), values(std::move(v)) {
  if (static_cast<int>(values.size()) != group.order())
    fail(ErrorKind::InvalidArgument, "function length does not match group order");
}

GroupAlgebraElement::GroupAlgebraElement(FiniteGroup g, std::vector<cplx> c) : group(std::move(g)), coeffs(std::move(c)) {
  if (static_cast<int>(coeffs.size()) != group.order())
    fail(ErrorKind::InvalidArgument, "coefficient length does not match group order");
}

GroupAlgebraElement GroupAlgebraElement::basis(const FiniteGroup& g, int element) {
  std::vector<cplx> c(g.order(), 0.0);
  c.at(element) = 1.0;
  return {g, std::move(c)};
}

FourierBlocks fourier_transform(const AFunction& f, const IrrepTable& table) {
  require_same_group(f.group, table.group(), "fourier_transform");
  FourierBlocks out;
  for (const Irrep& p : table.irreps()) {
    Matrix acc = Matrix::Zero(p.dim, p.dim);
    for (int g = 0; g < f.group.order(); ++g) acc += f.values[g] * p.matrices[g].adjoint();
    out.blocks.push_back(std::move(acc));
  }
  return out;
}

AFunction fourier_inverse(const FourierBlocks& b, const IrrepTable& table) {
  if (static_cast<int>(b.blocks.size()) != table.size()) fail(ErrorKind::InvalidArgument, "fourier_inverse: block count mismatch");
  const int n = table.group().order();
  for (int k = 0; k < table.size(); ++k) {
    const int d = table.irreps()[k].dim;
    if (b.blocks[k].rows() != d || b.blocks[k].cols() != d) fail(ErrorKind::InvalidArgument, "fourier_inverse: block shape mismatch");
  }
  std::vector<cplx> values(n, 0.0);
  for (int g = 0; g < n; ++g) {
    for (int k = 0; k < table.size(); ++k) {
      const Irrep& p = table.irreps()[k];
      values[g] += static_cast<double>(p.dim) * (p.matrices[g] * b.blocks[k]).trace();
    }
    values[g] /= static_cast<double>(n);
  }
  return {table.group(), std::move(values)};
}

std::vector<double> a_norm_contributions(const AFunction& f, const IrrepTable& table) {
  const auto blocks = fourier_transform(f, table).blocks;
  const double n = table.group().order();
  std::vector<double> out;
  for (int k = 0; k < table.size(); ++k)
    out.push_back(table.irreps()[k].dim / n * schatten_norm(blocks[k], Schatten::One));
  return out;
}

double a_norm(const AFunction& f, const IrrepTable& table) {
  double total = 0;
  for (double c : a_norm_contributions(f, table)) total += c;
  return total;
}

std::vector<Matrix> vn_blocks(const GroupAlgebraElement& x, const IrrepTable& table) {
  require_same_group(x.group, table.group(), "vn_blocks");
  std::vector<Matrix> out;
  for (const Irrep& p : table.irreps()) {
    Matrix acc = Matrix::Zero(p.dim, p.dim);
    for (int g = 0; g < x.group.order(); ++g) acc += x.coeffs[g] * p.matrices[g];
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<cplx> vn_coefficients(std::span<const Matrix> blocks, const IrrepTable& table) {
  if (static_cast<int>(blocks.size()) != table.size()) fail(ErrorKind::InvalidArgument, "vn_coefficients: block count mismatch");
  const int n = table.group().order();
  std::vector<cplx> c(n, 0.0);
  for (int g = 0; g < n; ++g) {
    for (int k = 0; k < table.size(); ++k) {
      const Irrep& p = table.irreps()[k];
      // Tr(X pi(g)^*) = sum_ij X_ij conj(pi(g)_ij)
      c[g] += static_cast<double>(p.dim) * (blocks[k].array() * p.matrices[g].array().conjugate()).sum();
    }
    c[g] /= static_cast<double>(n);
  }
  return c;
}

double vn_norm(const GroupAlgebraElement& x, const IrrepTable& table) {
  double best = 0;
  for (const Matrix& b : vn_blocks(x, table)) best = std::max(best, spectral_norm(b));
  return best;
}

double vn_norm_regular(const GroupAlgebraElement& x) {
  const int n = x.group.order();
  Matrix op = Matrix::Zero(n, n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) op(x.group.mul(g, h), h) += x.coeffs[g];
  return spectral_norm(op);
}

cplx pairing(const GroupAlgebraElement& x, const AFunction& f) {
  require_same_group(x.group, f.group, "pairing");
  cplx acc = 0;
  for (int g = 0; g < f.group.order(); ++g) acc += x.coeffs[g] * f.values[g];
  return acc;
}

AFunction pointwise_product(const AFunction& a, const AFunction& b) {
  require_same_group(a.group, b.group, "pointwise_product");
  std::vector<cplx> v(a.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] * b.values[i];
  return {a.group, std::move(v)};
}

AFunction translate_left(const AFunction& f, int g) {
  std::vector<cplx> v(f.values.size());
  for (int h = 0; h < f.group.order(); ++h) v[h] = f.values[f.group.mul(g, h)];
  return {f.group, std::move(v)};
}

GroupAlgebraElement vn_product(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  require_same_group(a.group, b.group, "vn_product");
  const int n = a.group.order();
  std::vector<cplx> c(n, 0.0);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) c[a.group.mul(g, h)] += a.coeffs[g] * b.coeffs[h];
  return {a.group, std::move(c)};
}

AFunction from_cyclic_expansion(const FiniteGroup& g, std::span<const cplx> coeffs) {
  const int n = g.order();
  if (static_cast<int>(coeffs.size()) != n) fail(ErrorKind::InvalidArgument, "expansion length does not match group order");
  std::vector<cplx> v(n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      v[k] += coeffs[j] * std::polar(1.0, 2.0 * std::numbers::pi * ((j * k) % n) / n);
  return {g, std::move(v)};
}

std::vector<double> dual_norm_ascent(const AFunction& f, const IrrepTable& table, int iterations, double step,
                                     std::uint64_t seed) {
  const auto transform = fourier_transform(f, table).blocks;
  const double n = table.group().order();
  std::vector<Matrix> grad;
  for (int k = 0; k < table.size(); ++k) grad.push_back(table.irreps()[k].dim / n * transform[k].adjoint());

  Rng rng(seed);
  std::vector<Matrix> x;
  for (const Irrep& p : table.irreps()) x.push_back(clip_to_spectral_ball(0.1 * gaussian_matrix(p.dim, p.dim, rng)));

  auto value = [&] {
    GroupAlgebraElement elem(table.group(), vn_coefficients(x, table));
    return std::abs(pairing(elem, f));
  };

  std::vector<double> seq;
  seq.reserve(iterations);
  for (int it = 0; it < iterations; ++it) {
    // Rotate the current pairing onto the positive real axis so the ascent
    // direction for Re<x, f> also increases |<x, f>|.
    GroupAlgebraElement elem(table.group(), vn_coefficients(x, table));
    const cplx current = pairing(elem, f);
    const cplx phase = std::abs(current) > 0 ? std::conj(current) / std::abs(current) : cplx(1.0);
    for (int k = 0; k < table.size(); ++k) {
      x[k] *= phase;
      x[k] = clip_to_spectral_ball(x[k] + step * grad[k]);
    }
    seq.push_back(value());
  }
  return seq;
}

}  // namespace fdist
