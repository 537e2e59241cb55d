#pragma once

#include <array>
#include <string>
#include <vector>

#include "wallach/decomposition.hpp"

namespace wallach {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Outcome of a battery of residual checks. Failures are entries, never
/// exceptions.
struct StructureReport {
  std::string space;
  std::vector<CheckResult> checks;
  std::vector<ModulePair> commuting_pairs;
  std::array<int, 3> module_dims{};
  int k_dim = 0;
  std::vector<std::string> notes;

  void add(std::string name, double residual, double tolerance);
  /// Appends the checks and notes of another report.
  void merge(const StructureReport& other, const std::string& prefix = {});
  bool pass() const;
  double worst_residual() const;
  const CheckResult* find(const std::string& name) const;
};

}  // namespace wallach
