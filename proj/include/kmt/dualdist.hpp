#pragma once

#include <cstdint>
#include <functional>

#include "kmt/function.hpp"
#include "kmt/rational.hpp"
#include "kmt/rng.hpp"

namespace kmt {

// Dual (sample + capped pmf) access to the interval-length distribution of a
// Boolean line function: the maximal constant intervals I_1, I_2, ... carry
// probability |I_j| / n each. Sampling a uniform position lands in interval
// j with probability exactly D(j); evaluating the mass explores around the
// position under a query cap.
class DualDistribution {
 public:
  // `eval` is the query access; every call is one (counted) query.
  DualDistribution(std::uint64_t n, std::function<bool(std::uint64_t)> eval)
      : n_(n), eval_(std::move(eval)) {}

  struct Handle {
    std::uint64_t position;
    bool value;
  };

  // One query: the position itself.
  Handle sample(Rng& rng) {
    const std::uint64_t i = rng.below(n_);
    return Handle{i, eval_(i)};
  }

  struct CappedMass {
    bool exceeds_cap;
    Rational mass;          // exact interval mass when !exceeds_cap
    std::uint64_t queries;  // queries spent by this evaluation (<= 2w+1)
  };

  // Scans left then right of the handle with a total budget of 2w+1 further
  // queries. An interval of length <= 2w is always determined (its far
  // boundary or the domain edge is reached within budget); EXCEEDS_CAP
  // therefore certifies |I| > 2w.
  CappedMass eval_capped(const Handle& h, std::uint64_t w);

  std::uint64_t domain_size() const { return n_; }

 private:
  std::uint64_t n_;
  std::function<bool(std::uint64_t)> eval_;
};

// Inverse-mass support-size estimator: average of 1 / D(x) over samples
// x ~ D, with capped evaluations contributing 0. Without a binding cap the
// estimate is unbiased (E[1/D] = |supp D|); the cap only lowers it.
// The default sample count ceil(1.5 / eps'^2) gives additive error eps' * n
// with probability 9/10 by Hoeffding over the range [0, n] (values 1/D lie
// in [0, n] since all masses are >= 1/n): failure <= 2 exp(-2 s eps'^2),
// and s = 1.5 / eps'^2 makes that 2 e^-3 < 1/10.
double support_size_estimate(DualDistribution& dual, double eps_prime,
                             std::uint64_t cap_w, Rng& rng,
                             std::uint64_t sample_override = 0);

}  // namespace kmt
