#include "wallach/report.hpp"

#include <algorithm>
#include <cmath>

namespace wallach {

void StructureReport::add(std::string name, double residual, double tolerance) {
  checks.push_back({std::move(name), residual, tolerance,
                    std::isfinite(residual) && residual <= tolerance});
}

void StructureReport::merge(const StructureReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) {
    checks.push_back({prefix + c.name, c.max_residual, c.tolerance, c.pass});
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool StructureReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double StructureReport::worst_residual() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.max_residual);
  return worst;
}

const CheckResult* StructureReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace wallach
