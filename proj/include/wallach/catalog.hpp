#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wallach/decomposition.hpp"
#include "wallach/report.hpp"

namespace wallach {

/// so(N) with basis A_ab = E_ba - E_ab for a < b, in lexicographic order.
/// For N = 3 this is (L3, -L2, L1) in the usual rotation-generator notation.
ContextPtr make_so(int n, double tol = kDefaultStructuralTol);

/// SO(l+m+n)/(SO(l) x SO(m) x SO(n)); m1, m2, m3 are the (1,2), (1,3) and
/// (2,3) off-diagonal blocks. Throws DegenerateSpace when l+m+n < 3.
DecompositionPtr build_so_blocks(int l, int m, int n, double tol = kDefaultStructuralTol);

/// SO(n+2)/SO(n): m1 and m2 pair rows 1 and 2 with columns 3..n+2, m3 is the
/// rotation in the (1,2)-plane. Throws DegenerateSpace when n < 2.
DecompositionPtr build_stiefel(int n, double tol = kDefaultStructuralTol);

/// SU(3)/T_max, with su(3) realified as 6x6 real matrices.
DecompositionPtr build_su3_flag(double tol = kDefaultStructuralTol);

/// (SO(3)/SO(2))^3 inside so(3)+so(3)+so(3), block-diagonal 9x9.
DecompositionPtr build_product_spheres(double tol = kDefaultStructuralTol);

/// Realification A + iB -> [[A, -B], [B, A]].
Eigen::MatrixXd realify(const Eigen::MatrixXcd& z);

/// Exhaustive basis-pair check of B-orthogonality, reductivity, the Wallach
/// relations [m_i, m_i] in k and the derived relations [m_i, m_j] in m_k.
StructureReport verify_structure(const ReductiveDecomposition& dec);

/// Checks for module i: k + m_i is a subalgebra, (k + m_i, m_j + m_k) is a
/// symmetric pair, and m_i is a Lie triple system.
StructureReport verify_fibration(const ReductiveDecomposition& dec, int i);

/// Algebra-level invariants of the context (antisymmetry, Jacobi, Killing
/// symmetry and invariance, commutator consistency).
StructureReport verify_algebra(const AlgebraContext& ctx);

/// m = M1 + M2 with M2 = m_i and M1 the other two modules.
class TwoSummandView {
 public:
  /// Throws GroupingInvalid naming every violated inclusion among
  /// [M2,M2] in k, [M1,M1] in k+M2, [M1,M2] in M1.
  TwoSummandView(DecompositionPtr dec, int i);

  const DecompositionPtr& parent() const { return dec_; }
  int grouped_module() const { return i_; }
  const std::vector<int>& m1_indices() const { return m1_; }
  const std::vector<int>& m2_indices() const { return m2_; }
  /// The two modules that make up M1, ascending.
  std::array<int, 2> m1_modules() const;

 private:
  DecompositionPtr dec_;
  int i_;
  std::vector<int> m1_;
  std::vector<int> m2_;
};

/// Max over a in A, b in B of the norm of the component of [e_a, e_b]
/// outside the coordinates in `target`.
double inclusion_residual(const ReductiveDecomposition& dec, const std::vector<int>& a,
                          const std::vector<int>& b, const std::vector<int>& target);

/// Loads a space definition
///   {"name", "ambient_size", "basis": [[row-major]], "parts": {"k","m1","m2","m3"}}.
/// Throws SchemaError on any malformed input (including dependent bases).
/// Structural verification is left to the caller.
DecompositionPtr load_space_json(const std::string& text, double tol = kDefaultStructuralTol);
DecompositionPtr load_space_file(const std::filesystem::path& path,
                                 double tol = kDefaultStructuralTol);

/// Catalog entry names accepted by resolve_space.
struct CatalogEntry {
  std::string label;  // e.g. "so-blocks l m n"
  std::string description;
};
std::vector<CatalogEntry> catalog_entries();

/// Resolves "so-blocks 2 2 2", "so-blocks-2-2-2", "stiefel 3", "stiefel3",
/// "su3-flag", "product-spheres" or a path to a JSON definition. Throws
/// UnknownSpace for anything else.
DecompositionPtr resolve_space(const std::vector<std::string>& tokens,
                               double tol = kDefaultStructuralTol);

}  // namespace wallach
