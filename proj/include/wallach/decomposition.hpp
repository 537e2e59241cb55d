#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wallach/lie_core.hpp"

namespace wallach {

/// Subspace selector for adapted projections.
enum class Part { k, m, m1, m2, m3 };

/// Parses "k", "m", "m1", "m2", "m3"; throws SelectorUndefined otherwise.
Part parse_part(std::string_view name);
std::string_view part_name(Part p);
/// Module index 1..3 to its selector; throws SelectorUndefined otherwise.
Part module_part(int i);

using ModulePair = std::pair<int, int>;

/// An adapted basis partition g = k + m1 + m2 + m3 of an algebra context.
///
/// Every basis element belongs to exactly one part, so the projectors are
/// coordinate selections; they coincide with the B-orthogonal projections
/// whenever the parts are B-orthogonal (checked by verify_structure).
class ReductiveDecomposition {
 public:
  /// parts = {k, m1, m2, m3} index sets into the context basis. Throws
  /// SchemaError unless they are disjoint, in range and cover the basis.
  ReductiveDecomposition(std::string name, ContextPtr ctx,
                         std::array<std::vector<int>, 4> parts,
                         std::string equivalence_note = {});

  const std::string& name() const { return name_; }
  const ContextPtr& context() const { return ctx_; }
  int dim() const { return ctx_->dim(); }

  const std::vector<int>& indices(Part p) const;
  int part_dim(Part p) const { return static_cast<int>(indices(p).size()); }
  int module_dim(int i) const { return part_dim(module_part(i)); }
  /// Diagonal 0/1 projector on coordinate vectors.
  const Eigen::MatrixXd& projector(Part p) const;
  /// Per-coordinate part label: 0 = k, 1..3 = module.
  const std::vector<int>& labels() const { return labels_; }

  Eigen::VectorXd project(const Eigen::VectorXd& x, Part p) const;

  const std::string& equivalence_note() const { return equivalence_note_; }
  /// Module pairs (i, j), i < j, with [m_i, m_j] = 0 to the structural
  /// tolerance.
  const std::vector<ModulePair>& commuting_pairs() const { return commuting_; }
  bool has_commuting_pair() const { return !commuting_.empty(); }

 private:
  std::string name_;
  ContextPtr ctx_;
  std::array<std::vector<int>, 5> idx_;  // k, m, m1, m2, m3
  std::array<Eigen::MatrixXd, 5> proj_;
  std::vector<int> labels_;
  std::string equivalence_note_;
  std::vector<ModulePair> commuting_;
};

using DecompositionPtr = std::shared_ptr<const ReductiveDecomposition>;

/// B-orthogonal projection of an element onto an adapted part.
Element project(const Element& x, const ReductiveDecomposition& dec, Part p);

}  // namespace wallach
