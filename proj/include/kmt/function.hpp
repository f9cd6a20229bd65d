#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmt/domain.hpp"
#include "kmt/errors.hpp"

namespace kmt {

// Packed truth table over point indices.
class BitTable {
 public:
  BitTable() = default;
  explicit BitTable(std::uint64_t n, bool fill = false)
      : n_(n), words_((n + 63) / 64, fill ? ~0ULL : 0ULL) {}

  std::uint64_t size() const { return n_; }
  bool get(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }
  void set(std::uint64_t i, bool v) {
    const std::uint64_t mask = 1ULL << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::uint64_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

  std::uint64_t popcount() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  friend bool operator==(const BitTable& a, const BitTable& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Identifies a named seeded generator so function files can round-trip
// without materializing a table.
struct GeneratorSpec {
  std::string name;
  std::string params_json;  // family-specific parameters, serialized
  std::uint64_t seed = 0;
};

// An immutable Boolean function on a hypergrid domain, backed by either an
// explicit table or a point evaluator. Cheap to copy and safe to share
// across threads.
class Function {
 public:
  Function() = default;
  Function(DomainSpec domain, BitTable table)
      : impl_(std::make_shared<Impl>(
            Impl{std::move(domain), std::move(table), nullptr, std::nullopt})) {}
  Function(DomainSpec domain, std::function<bool(std::uint64_t)> eval,
           std::optional<GeneratorSpec> gen = std::nullopt)
      : impl_(std::make_shared<Impl>(
            Impl{std::move(domain), BitTable{}, std::move(eval), std::move(gen)})) {}

  const DomainSpec& domain() const { return impl_->domain; }
  std::uint64_t size() const { return impl_->domain.size(); }

  bool eval(std::uint64_t idx) const {
    return impl_->eval ? impl_->eval(idx) : impl_->table.get(idx);
  }

  bool has_table() const { return !impl_->eval; }
  const std::optional<GeneratorSpec>& generator() const { return impl_->gen; }

  // Materializes the full table (guarded by the caller's budget).
  BitTable to_table() const {
    if (has_table()) return impl_->table;
    BitTable t(size());
    for (std::uint64_t i = 0; i < size(); ++i) t.set(i, impl_->eval(i));
    return t;
  }

 private:
  struct Impl {
    DomainSpec domain;
    BitTable table;
    std::function<bool(std::uint64_t)> eval;
    std::optional<GeneratorSpec> gen;
  };
  std::shared_ptr<const Impl> impl_;
};

// Query-counted read access. Each tester run owns one of these; the counter
// increments by exactly one per query call.
class FunctionOracle {
 public:
  explicit FunctionOracle(Function f) : f_(std::move(f)) {}

  bool query(std::uint64_t idx) {
    ++count_;
    return f_.eval(idx);
  }
  std::uint64_t queries() const { return count_; }
  void reset_counter() { count_ = 0; }

  const DomainSpec& domain() const { return f_.domain(); }
  const Function& function() const { return f_; }

 private:
  Function f_;
  std::uint64_t count_ = 0;
};

// Full-read guard limits (points).
struct ReadBudget {
  std::uint64_t full_read_limit = 1ULL << 24;  // DP, coarsening, matchings
  std::uint64_t bruteforce_limit = 24;         // flip-set enumeration
  std::uint64_t exact_matching_limit = 12;     // exhaustive matching search
};

inline void require_full_read(const DomainSpec& d, std::uint64_t limit,
                              const char* op) {
  if (d.size() > limit)
    throw BudgetExceeded(std::string(op) + ": domain of " +
                         std::to_string(d.size()) +
                         " points exceeds limit " + std::to_string(limit));
}

}  // namespace kmt
