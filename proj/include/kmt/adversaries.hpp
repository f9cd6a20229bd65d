#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmt/distance.hpp"
#include "kmt/function.hpp"
#include "kmt/matching.hpp"

namespace kmt {

// A generated instance together with whatever exact or certified distance
// metadata is computable at its scale. Every field is recomputable from the
// function itself.
struct InstanceBundle {
  Function fn;
  std::string family;
  std::string params_json;
  std::uint64_t seed = 0;
  unsigned k = 0;  // the k the metadata refers to

  std::optional<Rational> exact_distance;
  std::optional<DistanceValue> matching_bound;  // greedy lower bound
  std::optional<bool> k_monotone;
};

// Hard family for the one-sided line bound: K = k/eps blocks, odd blocks
// carry independent values that are 0 with probability 6*eps, even blocks
// are 1. Metadata includes the exact DP distance.
InstanceBundle gen_gv_line(std::uint64_t n, unsigned k, double eps,
                           std::uint64_t seed);

// Truncated anti-parity over the coordinates in S: the complement of the
// parity inside the middle levels | |x| - d/2 | <= sqrt(d), zero outside.
InstanceBundle gen_anti_parity(unsigned d, const std::vector<unsigned>& S,
                               unsigned k, std::uint64_t seed);

// (g||h)(x,y) = g(x) xor h(y) where h is a (k-1)-monotone layer-block
// staircase on the half cube. Verifies the block mass bounds and h's
// monotonicity order; throws ConstructionFailed when the greedy layer
// packing cannot meet them.
InstanceBundle gen_compose_gh(const Function& g_half, unsigned k,
                              std::uint64_t seed);

// Random verified k-monotone instance: a random alternating staircase on
// lines; on grids, an at-most-k-alternation pattern over the level sets of
// a (possibly block-inflated) grid.
InstanceBundle gen_random_k_monotone(const DomainSpec& dom, unsigned k,
                                     std::uint64_t seed);

// Flips an exact floor(rho * N) uniformly chosen subset of points.
InstanceBundle gen_noisy(const InstanceBundle& base, double rho,
                         std::uint64_t seed);

// Alternating line function with a given run count; runs have near-equal
// jittered lengths. k-monotone when runs <= k+1, far when runs >> k.
InstanceBundle gen_alternating_line(std::uint64_t n, unsigned runs,
                                    double jitter, unsigned k,
                                    std::uint64_t seed);

// 2-monotone band on [n]^2: ones strictly between two non-increasing
// column profiles, zero first and last rows.
InstanceBundle gen_band2(std::uint32_t n, std::uint64_t seed);

// Vertical stripes of the given width, alternating 1,0,1,...; very far from
// 2-monotone, certified by the greedy matching.
InstanceBundle gen_stripes2(std::uint32_t n, std::uint32_t width,
                            std::uint64_t seed);

// Monotone / far half-cube functions used as the g of gen_compose_gh.
Function make_majority_cube(unsigned d);
Function make_anti_majority_cube(unsigned d);

// Registry used by the function file format: rebuilds a generator-backed
// function from (name, params, seed).
Function make_generator_function(const std::string& name,
                                 const std::string& params_json,
                                 std::uint64_t seed);

}  // namespace kmt
