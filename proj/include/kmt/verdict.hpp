#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kmt {

enum class Decision : std::uint8_t { ACCEPT, REJECT };

struct Verdict {
  Decision decision = Decision::ACCEPT;
  std::uint64_t queries = 0;
  std::uint64_t seed = 0;
  // One-sided testers attach a checkable violating chain to every REJECT.
  std::vector<std::uint64_t> witness;
  std::string note;

  bool accepted() const { return decision == Decision::ACCEPT; }
  bool rejected() const { return decision == Decision::REJECT; }
};

}  // namespace kmt
