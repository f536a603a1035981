#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sievekit {

enum class VerifyBudget { small, full };

VerifyBudget parse_verify_budget(std::string_view name);

struct VerifyCheck {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyCheck> checks;
  bool passed() const;
  std::vector<VerifyCheck> failures() const;
};

/// Names accepted by run_verify besides "all".
const std::vector<std::string>& verify_suites();

/// Runs the invariant suite(s). Randomized checks draw from a generator
/// seeded with `seed`, so results are reproducible.
VerifyResult run_verify(std::string_view suite, VerifyBudget budget, std::uint64_t seed);

}  // namespace sievekit
