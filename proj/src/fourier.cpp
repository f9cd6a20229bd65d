#include "kmt/fourier.hpp"

#include <cmath>

#include "kmt/errors.hpp"

namespace kmt {

std::vector<std::vector<double>> orthonormal_basis(unsigned r) {
  std::vector<std::vector<double>> basis(r, std::vector<double>(r));
  for (unsigned j = 0; j < r; ++j)
    for (unsigned x = 0; x < r; ++x)
      basis[j][x] = std::pow(static_cast<double>(x), static_cast<double>(j));

  auto dot = [r](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (unsigned x = 0; x < r; ++x) s += a[x] * b[x];
    return s / static_cast<double>(r);
  };
  // Modified Gram-Schmidt, run twice for orthogonality well below 1e-12.
  for (int pass = 0; pass < 2; ++pass)
    for (unsigned j = 0; j < r; ++j) {
      for (unsigned i = 0; i < j; ++i) {
        const double c = dot(basis[j], basis[i]);
        for (unsigned x = 0; x < r; ++x) basis[j][x] -= c * basis[i][x];
      }
      const double norm = std::sqrt(dot(basis[j], basis[j]));
      if (norm < 1e-14)
        throw PreconditionViolated("orthonormal_basis: degenerate monomials");
      for (unsigned x = 0; x < r; ++x) basis[j][x] /= norm;
    }
  return basis;
}

namespace {

unsigned nonzero_digits(const DomainSpec& dom, std::uint64_t alpha) {
  unsigned c = 0;
  for (std::uint32_t a = 0; a < dom.dim(); ++a)
    if (dom.coord(alpha, a) != 0) ++c;
  return c;
}

}  // namespace

double FourierTable::weight_above_degree(unsigned t) const {
  double s = 0.0;
  for (std::uint64_t a = 0; a < coeffs.size(); ++a)
    if (nonzero_digits(domain, a) > t) s += coeffs[a] * coeffs[a];
  return s;
}

double FourierTable::total_weight() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return s;
}

FourierTable fourier_transform(const std::vector<double>& values,
                               const DomainSpec& dom) {
  if (values.size() != dom.size())
    throw PreconditionViolated("fourier_transform: size mismatch");
  std::vector<double> work = values;
  std::vector<double> line, out;
  for (std::uint32_t axis = 0; axis < dom.dim(); ++axis) {
    const unsigned r = dom.side(axis);
    const auto basis = orthonormal_basis(r);
    const std::uint64_t stride = dom.stride(axis);
    line.resize(r);
    out.resize(r);
    // contract one axis: w[j] = (1/r) sum_x phi_j(x) v[x]
    for (std::uint64_t base = 0; base < dom.size(); ++base) {
      if (dom.coord(base, axis) != 0) continue;
      for (unsigned x = 0; x < r; ++x) line[x] = work[base + x * stride];
      for (unsigned j = 0; j < r; ++j) {
        double s = 0.0;
        for (unsigned x = 0; x < r; ++x) s += basis[j][x] * line[x];
        out[j] = s / static_cast<double>(r);
      }
      for (unsigned j = 0; j < r; ++j) work[base + j * stride] = out[j];
    }
  }
  return FourierTable{dom, std::move(work)};
}

std::vector<double> inverse_transform(const FourierTable& table,
                                      unsigned max_degree) {
  const DomainSpec& dom = table.domain;
  std::vector<double> work = table.coeffs;
  if (max_degree != ~0u)
    for (std::uint64_t a = 0; a < work.size(); ++a)
      if (nonzero_digits(dom, a) > max_degree) work[a] = 0.0;

  std::vector<double> line, out;
  for (std::uint32_t axis = 0; axis < dom.dim(); ++axis) {
    const unsigned r = dom.side(axis);
    const auto basis = orthonormal_basis(r);
    const std::uint64_t stride = dom.stride(axis);
    line.resize(r);
    out.resize(r);
    for (std::uint64_t base = 0; base < dom.size(); ++base) {
      if (dom.coord(base, axis) != 0) continue;
      for (unsigned j = 0; j < r; ++j) line[j] = work[base + j * stride];
      for (unsigned x = 0; x < r; ++x) {
        double s = 0.0;
        for (unsigned j = 0; j < r; ++j) s += basis[j][x] * line[j];
        out[x] = s;
      }
      for (unsigned x = 0; x < r; ++x) work[base + x * stride] = out[x];
    }
  }
  return work;
}

std::vector<double> influences(const std::vector<double>& pm1_values,
                               const DomainSpec& dom) {
  if (pm1_values.size() != dom.size())
    throw PreconditionViolated("influences: size mismatch");
  std::vector<double> inf(dom.dim(), 0.0);
  for (std::uint32_t axis = 0; axis < dom.dim(); ++axis) {
    const unsigned r = dom.side(axis);
    const std::uint64_t stride = dom.stride(axis);
    double acc = 0.0;
    for (std::uint64_t base = 0; base < dom.size(); ++base) {
      if (dom.coord(base, axis) != 0) continue;
      unsigned plus = 0;
      for (unsigned x = 0; x < r; ++x)
        if (pm1_values[base + x * stride] > 0.0) ++plus;
      acc += static_cast<double>(plus) * (r - plus);
    }
    // 2 Pr[f != f'] with f' an independent resample of this coordinate
    inf[axis] = 4.0 * acc /
                (static_cast<double>(dom.size()) * static_cast<double>(r));
  }
  return inf;
}

double total_influence(const std::vector<double>& pm1_values,
                       const DomainSpec& dom) {
  double t = 0.0;
  for (double i : influences(pm1_values, dom)) t += i;
  return t;
}

}  // namespace kmt
