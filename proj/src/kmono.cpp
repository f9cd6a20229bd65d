#include "kmt/kmono.hpp"

namespace kmt {

namespace {

struct TableValue {
  BitTable table;
  int operator()(std::uint64_t i) const { return table.get(i) ? 1 : 0; }
};

}  // namespace

std::uint32_t longest_alternating_chain(const Function& f,
                                        const ReadBudget& budget) {
  require_full_read(f.domain(), budget.full_read_limit,
                    "longest_alternating_chain");
  return longest_alternating_chain_marked(f.domain(), TableValue{f.to_table()});
}

bool is_k_monotone(const Function& f, unsigned k, const ReadBudget& budget) {
  if (k < 1) throw PreconditionViolated("is_k_monotone: k must be >= 1");
  require_full_read(f.domain(), budget.full_read_limit, "is_k_monotone");
  return longest_alternating_chain(f, budget) <= k;
}

std::optional<std::vector<std::uint64_t>> find_violation(
    const Function& f, unsigned k, const ReadBudget& budget) {
  require_full_read(f.domain(), budget.full_read_limit, "find_violation");
  return find_violation_marked(f.domain(), TableValue{f.to_table()}, k);
}

bool chain_is_violation(const Function& f, unsigned k,
                        const std::vector<std::uint64_t>& chain) {
  if (chain.size() != k + 1) return false;
  const auto& dom = f.domain();
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!dom.less(chain[i], chain[i + 1])) return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const bool expected = (i % 2 == 0);  // 1,0,1,...
    if (f.eval(chain[i]) != expected) return false;
  }
  return true;
}

}  // namespace kmt
