#include "wallach/decomposition.hpp"

#include <algorithm>

#include "wallach/errors.hpp"

namespace wallach {

namespace {

std::size_t slot(Part p) {
  switch (p) {
    case Part::k: return 0;
    case Part::m: return 1;
    case Part::m1: return 2;
    case Part::m2: return 3;
    case Part::m3: return 4;
  }
  return 0;
}

}  // namespace

Part parse_part(std::string_view name) {
  if (name == "k") return Part::k;
  if (name == "m") return Part::m;
  if (name == "m1") return Part::m1;
  if (name == "m2") return Part::m2;
  if (name == "m3") return Part::m3;
  throw SelectorUndefined("unknown subspace selector '" + std::string(name) + "'");
}

std::string_view part_name(Part p) {
  static constexpr std::array<std::string_view, 5> names = {"k", "m", "m1", "m2", "m3"};
  return names[slot(p)];
}

Part module_part(int i) {
  switch (i) {
    case 1: return Part::m1;
    case 2: return Part::m2;
    case 3: return Part::m3;
    default: throw SelectorUndefined("module index must be 1, 2 or 3");
  }
}

ReductiveDecomposition::ReductiveDecomposition(std::string name, ContextPtr ctx,
                                               std::array<std::vector<int>, 4> parts,
                                               std::string equivalence_note)
    : name_(std::move(name)), ctx_(std::move(ctx)),
      equivalence_note_(std::move(equivalence_note)) {
  const int d = ctx_->dim();
  labels_.assign(d, -1);
  for (int p = 0; p < 4; ++p) {
    for (int i : parts[p]) {
      if (i < 0 || i >= d) {
        throw SchemaError("part index " + std::to_string(i) + " out of range");
      }
      if (labels_[i] != -1) {
        throw SchemaError("basis index " + std::to_string(i) + " assigned to two parts");
      }
      labels_[i] = p;
    }
  }
  if (std::find(labels_.begin(), labels_.end(), -1) != labels_.end()) {
    throw SchemaError("parts do not cover the basis");
  }

  idx_[slot(Part::k)] = parts[0];
  idx_[slot(Part::m1)] = parts[1];
  idx_[slot(Part::m2)] = parts[2];
  idx_[slot(Part::m3)] = parts[3];
  auto& m = idx_[slot(Part::m)];
  for (int p = 1; p < 4; ++p) m.insert(m.end(), parts[p].begin(), parts[p].end());

  for (std::size_t s = 0; s < idx_.size(); ++s) {
    proj_[s] = Eigen::MatrixXd::Zero(d, d);
    for (int i : idx_[s]) proj_[s](i, i) = 1.0;
  }

  const double tol = ctx_->tol_structural();
  for (int a = 1; a <= 3; ++a) {
    for (int b = a + 1; b <= 3; ++b) {
      double worst = 0.0;
      for (int i : indices(module_part(a))) {
        for (int j : indices(module_part(b))) {
          worst = std::max(worst, ctx_->ad_basis(i).col(j).norm());
        }
      }
      if (worst <= tol) commuting_.emplace_back(a, b);
    }
  }
}

const std::vector<int>& ReductiveDecomposition::indices(Part p) const {
  return idx_[slot(p)];
}

const Eigen::MatrixXd& ReductiveDecomposition::projector(Part p) const {
  return proj_[slot(p)];
}

Eigen::VectorXd ReductiveDecomposition::project(const Eigen::VectorXd& x, Part p) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (int i : indices(p)) out[i] = x[i];
  return out;
}

Element project(const Element& x, const ReductiveDecomposition& dec, Part p) {
  require_same_context(x.context(), dec.context(), "project");
  return {x.context(), dec.project(x.coeffs(), p)};
}

}  // namespace wallach
