#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace kmt {

// Named invariant suites runnable from the CLI (`lemma-check --name <id>`)
// and reused by the acceptance tests at larger budgets.
struct LemmaCheck {
  std::string name;
  std::string description;
  std::function<bool(std::ostream&)> run;
};

const std::vector<LemmaCheck>& lemma_checks();
const LemmaCheck* find_lemma_check(const std::string& name);

}  // namespace kmt
