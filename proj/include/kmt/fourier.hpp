#pragma once

#include <cstdint>
#include <vector>

#include "kmt/domain.hpp"

namespace kmt {

// Orthonormal basis for functions [r] -> R under the uniform measure:
// Gram-Schmidt on the monomials 1, x, x^2, ... with phi_0 = 1. For r = 2
// this is {1, 1-2x} up to sign. basis[j][x] = phi_j(x).
std::vector<std::vector<double>> orthonormal_basis(unsigned r);

// Coefficient table of a real-valued function on a uniform grid [r]^d under
// the product basis: coeffs indexed by the same mixed-radix encoding as the
// domain; |alpha| is the number of nonzero digits.
struct FourierTable {
  DomainSpec domain;
  std::vector<double> coeffs;

  double weight_above_degree(unsigned t) const;  // sum of squares, |a| > t
  double total_weight() const;                   // Parseval sum
};

FourierTable fourier_transform(const std::vector<double>& values,
                               const DomainSpec& dom);

// Reconstruction, optionally truncated to degree <= t.
std::vector<double> inverse_transform(const FourierTable& table,
                                      unsigned max_degree = ~0u);

// Exact coordinate influences of a +-1 valued function: per axis,
// 2 Pr[f(x) != f(x with one coordinate resampled)], by pair counting along
// axis lines. total = sum; equals sum |alpha| fhat(alpha)^2.
std::vector<double> influences(const std::vector<double>& pm1_values,
                               const DomainSpec& dom);
double total_influence(const std::vector<double>& pm1_values,
                       const DomainSpec& dom);

}  // namespace kmt
