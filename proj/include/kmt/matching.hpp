#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kmt/distance.hpp"
#include "kmt/function.hpp"

namespace kmt {

// Maximal set of pairwise vertex-disjoint violating (k+1)-chains, found
// greedily in a deterministic scan order. |M| / |P| is a certified lower
// bound on the distance; maximality makes (k+1)|M| / |P| an upper bound
// (the matched vertices form a vertex cover of the violation hypergraph).
DistanceValue greedy_violation_matching(const Function& f, unsigned k,
                                        const ReadBudget& budget = {});

// Exact maximum disjoint-hyperedge matching by exhaustive search.
std::uint32_t max_violation_matching_exact(const Function& f, unsigned k,
                                           const ReadBudget& budget = {});

// All violating (k+1)-chains, as point-index vectors. Test-scale domains.
std::vector<std::vector<std::uint64_t>> enumerate_violating_chains(
    const Function& f, unsigned k, const ReadBudget& budget = {});

// Completes a k-monotone partial assignment (-1 = unassigned) to a total
// k-monotone function by repeatedly giving a minimal unassigned point a
// non-violating value. Throws PreconditionViolated when the assigned part
// already contains the forbidden pattern.
BitTable extend_partial(const DomainSpec& dom, std::span<const int> partial,
                        unsigned k);

}  // namespace kmt
