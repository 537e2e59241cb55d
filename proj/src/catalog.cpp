#include "wallach/catalog.hpp"

#include <algorithm>
#include <complex>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wallach/errors.hpp"

namespace wallach {

namespace {

Eigen::MatrixXd skew_unit(int n, int a, int b) {
  // E_ba - E_ab
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(b, a) = 1.0;
  m(a, b) = -1.0;
  return m;
}

// Builds a context whose basis lists the four parts in order k, m1, m2, m3.
DecompositionPtr assemble(const std::string& name,
                          std::array<std::vector<Eigen::MatrixXd>, 4> groups,
                          double tol, std::string note = {}) {
  std::vector<Eigen::MatrixXd> basis;
  std::array<std::vector<int>, 4> parts;
  for (int p = 0; p < 4; ++p) {
    for (auto& b : groups[p]) {
      parts[p].push_back(static_cast<int>(basis.size()));
      basis.push_back(std::move(b));
    }
  }
  auto ctx = AlgebraContext::create(name, std::move(basis), tol);
  auto dec = std::make_shared<const ReductiveDecomposition>(name, ctx, std::move(parts),
                                                            std::move(note));
  const StructureReport report = verify_structure(*dec);
  if (!report.pass()) {
    std::ostringstream msg;
    msg << "catalog space '" << name << "' failed structural verification:";
    for (const auto& c : report.checks) {
      if (!c.pass) msg << " " << c.name << " (" << c.max_residual << ")";
    }
    throw StructureError(msg.str());
  }
  return dec;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string module_label(int i) { return "m" + std::to_string(i); }

}  // namespace

ContextPtr make_so(int n, double tol) {
  if (n < 2) throw DegenerateSpace("so(n) needs n >= 2");
  std::vector<Eigen::MatrixXd> basis;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) basis.push_back(skew_unit(n, a, b));
  }
  return AlgebraContext::create("so(" + std::to_string(n) + ")", std::move(basis), tol);
}

DecompositionPtr build_so_blocks(int l, int m, int n, double tol) {
  if (l < 1 || m < 1 || n < 1) throw DegenerateSpace("so-blocks sizes must be positive");
  if (l + m + n < 3) throw DegenerateSpace("so-blocks needs l + m + n >= 3");
  const int total = l + m + n;
  auto block = [&](int a) { return a < l ? 0 : (a < l + m ? 1 : 2); };

  std::array<std::vector<Eigen::MatrixXd>, 4> groups;
  for (int a = 0; a < total; ++a) {
    for (int b = a + 1; b < total; ++b) {
      const int ba = block(a);
      const int bb = block(b);
      int part = 0;
      if (ba != bb) part = (ba == 0 && bb == 1) ? 1 : (ba == 0 ? 2 : 3);
      groups[part].push_back(skew_unit(total, a, b));
    }
  }
  const int ones = (l == 1) + (m == 1) + (n == 1);
  std::string note;
  if (ones >= 2) note = "two or more blocks of size 1: some modules are equivalent";
  std::ostringstream name;
  name << "so-blocks " << l << " " << m << " " << n;
  return assemble(name.str(), std::move(groups), tol, note);
}

DecompositionPtr build_stiefel(int n, double tol) {
  if (n < 2) {
    throw DegenerateSpace("stiefel needs n >= 2; use so-blocks 1 1 1 for SO(3)");
  }
  const int total = n + 2;
  std::array<std::vector<Eigen::MatrixXd>, 4> groups;
  for (int a = 2; a < total; ++a) {
    for (int b = a + 1; b < total; ++b) groups[0].push_back(skew_unit(total, a, b));
  }
  for (int j = 2; j < total; ++j) groups[1].push_back(skew_unit(total, 0, j));
  for (int j = 2; j < total; ++j) groups[2].push_back(skew_unit(total, 1, j));
  groups[3].push_back(skew_unit(total, 0, 1));
  return assemble("stiefel " + std::to_string(n), std::move(groups), tol,
                  "m1 and m2 are equivalent SO(n)-modules; invariant metrics are "
                  "still diagonal");
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& z) {
  const Eigen::Index n = z.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = z.real();
  out.topRightCorner(n, n) = -z.imag();
  out.bottomLeftCorner(n, n) = z.imag();
  out.bottomRightCorner(n, n) = z.real();
  return out;
}

DecompositionPtr build_su3_flag(double tol) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  auto unit = [](int a, int b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(a, b) = 1.0;
    return m;
  };
  std::array<std::vector<Eigen::MatrixXd>, 4> groups;
  groups[0].push_back(realify(i * (unit(0, 0) - unit(1, 1))));
  groups[0].push_back(realify(i * (unit(1, 1) - unit(2, 2))));
  const std::array<std::pair<int, int>, 3> roots = {{{0, 1}, {0, 2}, {1, 2}}};
  for (int r = 0; r < 3; ++r) {
    const auto [a, b] = roots[r];
    groups[r + 1].push_back(realify(unit(a, b) - unit(b, a)));
    groups[r + 1].push_back(realify(i * (unit(a, b) + unit(b, a))));
  }
  return assemble("su3-flag", std::move(groups), tol);
}

DecompositionPtr build_product_spheres(double tol) {
  std::array<std::vector<Eigen::MatrixXd>, 4> groups;
  auto embed = [](int factor, int a, int b) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(9, 9);
    m.block(3 * factor, 3 * factor, 3, 3) = skew_unit(3, a, b);
    return m;
  };
  for (int f = 0; f < 3; ++f) {
    groups[0].push_back(embed(f, 0, 1));      // L3 = E21 - E12
    groups[f + 1].push_back(embed(f, 1, 2));  // L1 = E32 - E23
    groups[f + 1].push_back(embed(f, 2, 0));  // L2 = E13 - E31
  }
  return assemble("product-spheres", std::move(groups), tol);
}

double inclusion_residual(const ReductiveDecomposition& dec, const std::vector<int>& a,
                          const std::vector<int>& b, const std::vector<int>& target) {
  const auto& ctx = *dec.context();
  std::vector<char> inside(ctx.dim(), 0);
  for (int t : target) inside[t] = 1;
  double worst = 0.0;
  for (int i : a) {
    for (int j : b) {
      const auto col = ctx.ad_basis(i).col(j);
      double outside = 0.0;
      for (int k = 0; k < ctx.dim(); ++k) {
        if (!inside[k]) outside += col[k] * col[k];
      }
      worst = std::max(worst, std::sqrt(outside));
    }
  }
  return worst;
}

StructureReport verify_structure(const ReductiveDecomposition& dec) {
  StructureReport r;
  r.space = dec.name();
  const auto& ctx = *dec.context();
  const double tol = ctx.tol_structural();
  r.k_dim = dec.part_dim(Part::k);
  for (int i = 1; i <= 3; ++i) r.module_dims[i - 1] = dec.module_dim(i);
  r.commuting_pairs = dec.commuting_pairs();
  if (!dec.equivalence_note().empty()) r.notes.push_back(dec.equivalence_note());

  const Eigen::MatrixXd sum = dec.projector(Part::k) + dec.projector(Part::m1) +
                              dec.projector(Part::m2) + dec.projector(Part::m3);
  r.add("projectors sum to identity",
        (sum - Eigen::MatrixXd::Identity(ctx.dim(), ctx.dim())).cwiseAbs().maxCoeff(), tol);

  double ortho = 0.0;
  const auto& labels = dec.labels();
  for (int a = 0; a < ctx.dim(); ++a) {
    for (int b = 0; b < ctx.dim(); ++b) {
      if (labels[a] != labels[b]) ortho = std::max(ortho, std::abs(ctx.killing()(a, b)));
    }
  }
  r.add("B-orthogonality of k, m1, m2, m3", ortho, tol);

  const auto& k = dec.indices(Part::k);
  for (int i = 1; i <= 3; ++i) {
    const auto& mi = dec.indices(module_part(i));
    r.add("[k," + module_label(i) + "] in " + module_label(i),
          inclusion_residual(dec, k, mi, mi), tol);
  }
  for (int i = 1; i <= 3; ++i) {
    const auto& mi = dec.indices(module_part(i));
    r.add("[" + module_label(i) + "," + module_label(i) + "] in k",
          inclusion_residual(dec, mi, mi, k), tol);
  }
  const std::array<std::array<int, 3>, 3> derived = {{{1, 2, 3}, {1, 3, 2}, {2, 3, 1}}};
  for (const auto& [a, b, c] : derived) {
    r.add("[" + module_label(a) + "," + module_label(b) + "] in " + module_label(c),
          inclusion_residual(dec, dec.indices(module_part(a)), dec.indices(module_part(b)),
                             dec.indices(module_part(c))),
          tol);
  }
  return r;
}

StructureReport verify_fibration(const ReductiveDecomposition& dec, int i) {
  const Part pi = module_part(i);
  StructureReport r;
  r.space = dec.name();
  const double tol = dec.context()->tol_structural();
  const auto& mi = dec.indices(pi);
  const std::vector<int> gi = concat(dec.indices(Part::k), mi);
  std::vector<int> mprime;
  for (int j = 1; j <= 3; ++j) {
    if (j != i) mprime = concat(mprime, dec.indices(module_part(j)));
  }
  const std::string label = "fibration " + std::to_string(i) + ": ";
  const std::string gname = "k+" + module_label(i);
  r.add(label + gname + " is a subalgebra", inclusion_residual(dec, gi, gi, gi), tol);
  r.add(label + "[m',m'] in " + gname, inclusion_residual(dec, mprime, mprime, gi), tol);
  r.add(label + "[" + gname + ",m'] in m'", inclusion_residual(dec, gi, mprime, mprime), tol);

  const auto& ctx = *dec.context();
  std::vector<char> inside(ctx.dim(), 0);
  for (int t : mi) inside[t] = 1;
  double triple = 0.0;
  for (int a : mi) {
    for (int b : mi) {
      const Eigen::VectorXd ab = ctx.ad_basis(a).col(b);
      for (int c : mi) {
        const Eigen::VectorXd abc = -(ctx.ad_basis(c) * ab);
        double outside = 0.0;
        for (int k = 0; k < ctx.dim(); ++k) {
          if (!inside[k]) outside += abc[k] * abc[k];
        }
        triple = std::max(triple, std::sqrt(outside));
      }
    }
  }
  r.add(label + module_label(i) + " is a Lie triple system", triple, tol);
  return r;
}

StructureReport verify_algebra(const AlgebraContext& ctx) {
  StructureReport r;
  r.space = ctx.name();
  const double tol = ctx.tol_structural();
  r.add("structure constants antisymmetric", ctx.antisymmetry_residual(), tol);
  r.add("Jacobi identity", ctx.jacobi_residual(), tol);
  r.add("Killing form symmetric", ctx.killing_symmetry_residual(), tol);
  r.add("Killing form ad-invariant", ctx.killing_invariance_residual(), tol);
  r.add("bracket matches matrix commutator", ctx.commutator_residual(), tol);
  return r;
}

TwoSummandView::TwoSummandView(DecompositionPtr dec, int i) : dec_(std::move(dec)), i_(i) {
  m2_ = dec_->indices(module_part(i));
  for (int j = 1; j <= 3; ++j) {
    if (j != i) m1_ = concat(m1_, dec_->indices(module_part(j)));
  }
  const auto& k = dec_->indices(Part::k);
  const double tol = dec_->context()->tol_structural();
  std::vector<std::string> violated;
  if (inclusion_residual(*dec_, m2_, m2_, k) > tol) violated.push_back("[M2,M2] in k");
  if (inclusion_residual(*dec_, m1_, m1_, concat(k, m2_)) > tol) {
    violated.push_back("[M1,M1] in k+M2");
  }
  if (inclusion_residual(*dec_, m1_, m2_, m1_) > tol) violated.push_back("[M1,M2] in M1");
  if (!violated.empty()) {
    std::string msg = "two-summand grouping around m" + std::to_string(i) + " is invalid:";
    for (const auto& v : violated) msg += " " + v + " fails;";
    throw GroupingInvalid(msg);
  }
}

std::array<int, 2> TwoSummandView::m1_modules() const {
  std::array<int, 2> out{};
  int n = 0;
  for (int j = 1; j <= 3; ++j) {
    if (j != i_) out[n++] = j;
  }
  return out;
}

DecompositionPtr load_space_json(const std::string& text, double tol) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("space definition is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw SchemaError("space definition must be a JSON object");
    for (const char* key : {"name", "ambient_size", "basis", "parts"}) {
      if (!doc.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
    }
    if (!doc["name"].is_string()) throw SchemaError("'name' must be a string");
    if (!doc["ambient_size"].is_number_integer() || doc["ambient_size"].get<int>() <= 0) {
      throw SchemaError("'ambient_size' must be a positive integer");
    }
    const int n = doc["ambient_size"].get<int>();
    if (!doc["basis"].is_array() || doc["basis"].empty()) {
      throw SchemaError("'basis' must be a non-empty array");
    }
    std::vector<Eigen::MatrixXd> basis;
    for (const auto& row : doc["basis"]) {
      if (!row.is_array() || static_cast<int>(row.size()) != n * n) {
        throw SchemaError("every basis entry must hold ambient_size^2 numbers");
      }
      Eigen::MatrixXd m(n, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const auto& v = row[a * n + b];
          if (!v.is_number()) throw SchemaError("basis entries must be numbers");
          m(a, b) = v.get<double>();
        }
      }
      basis.push_back(std::move(m));
    }
    const auto& parts = doc["parts"];
    if (!parts.is_object()) throw SchemaError("'parts' must be an object");
    std::array<std::vector<int>, 4> idx;
    const std::array<const char*, 4> names = {"k", "m1", "m2", "m3"};
    for (int p = 0; p < 4; ++p) {
      if (!parts.contains(names[p]) || !parts[names[p]].is_array()) {
        throw SchemaError(std::string("'parts.") + names[p] + "' must be an array");
      }
      for (const auto& v : parts[names[p]]) {
        if (!v.is_number_integer()) throw SchemaError("part indices must be integers");
        idx[p].push_back(v.get<int>());
      }
    }
    ContextPtr ctx;
    try {
      ctx = AlgebraContext::create(doc["name"].get<std::string>(), std::move(basis), tol);
    } catch (const NotInAlgebra& e) {
      throw SchemaError(std::string("basis does not span a Lie algebra: ") + e.what());
    }
    return std::make_shared<const ReductiveDecomposition>(doc["name"].get<std::string>(), ctx,
                                                          std::move(idx));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("space definition: ") + e.what());
  }
}

DecompositionPtr load_space_file(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read space definition " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_space_json(buf.str(), tol);
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"so-blocks l m n", "SO(l+m+n)/(SO(l) x SO(m) x SO(n))"},
      {"stiefel n", "SO(n+2)/SO(n), real Stiefel manifold of 2-frames"},
      {"su3-flag", "SU(3)/T_max, full flag manifold of C^3"},
      {"product-spheres", "(SO(3)/SO(2))^3, all modules commute"},
  };
}

DecompositionPtr resolve_space(const std::vector<std::string>& tokens, double tol) {
  std::vector<std::string> words;
  for (const auto& t : tokens) {
    std::istringstream in(t);
    std::string w;
    while (in >> w) words.push_back(w);
  }
  if (words.empty()) throw UnknownSpace("no space given");

  std::string joined;
  for (const auto& w : words) joined += (joined.empty() ? "" : " ") + w;

  static const std::regex so_blocks(R"(so-blocks[- ](\d+)[- ](\d+)[- ](\d+))");
  static const std::regex stiefel(R"(stiefel[- ]?(\d+))");
  std::smatch match;
  if (std::regex_match(joined, match, so_blocks)) {
    return build_so_blocks(std::stoi(match[1]), std::stoi(match[2]), std::stoi(match[3]), tol);
  }
  if (std::regex_match(joined, match, stiefel)) {
    return build_stiefel(std::stoi(match[1]), tol);
  }
  if (joined == "su3-flag") return build_su3_flag(tol);
  if (joined == "product-spheres") return build_product_spheres(tol);
  if (words.size() == 1 && (joined.ends_with(".json") || std::filesystem::exists(joined))) {
    return load_space_file(joined, tol);
  }
  throw UnknownSpace("unknown space '" + joined + "'");
}

}  // namespace wallach
