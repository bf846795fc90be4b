#pragma once

#include <string>
#include <vector>

namespace superbim {

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;             // first violation, empty when passing
  std::vector<long> dims;          // dimensions observed, when relevant
  double tolerance = 0.0;          // nonzero only on numeric checks
};

/// Structured verification result: a list of named checks plus the conjunction.
struct Report {
  std::string subject;
  std::vector<Check> checks;

  bool overall() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  Check& add(const std::string& name, bool pass, const std::string& witness = "") {
    checks.push_back(Check{name, pass, witness, {}, 0.0});
    return checks.back();
  }

  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }

  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& c : other.checks) {
      checks.push_back(c);
      if (!prefix.empty()) checks.back().name = prefix + "." + c.name;
    }
  }
};

}  // namespace superbim
