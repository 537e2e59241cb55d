#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report_io.hpp"
#include "wallach/catalog.hpp"
#include "wallach/errors.hpp"
#include "wallach/geodesics.hpp"
#include "wallach/oracle.hpp"
#include "wallach/random.hpp"
#include "wallach/verify.hpp"

namespace {

using namespace wallach;
using cli::Json;

enum Exit { kPass = 0, kFail = 1, kUnknownSpace = 2, kInput = 3, kMetric = 4 };

// Thrown for a metric that fits no closed-form case.
class CaseMismatch : public Error {
 public:
  using Error::Error;
};

double structural_tolerance(double fallback) {
  if (const char* env = std::getenv("WALLACH_GEO_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw PreconditionError("WALLACH_GEO_TOL must be a positive number");
    }
    return v;
  }
  return fallback;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << text;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

std::string dims_string(const ReductiveDecomposition& dec) {
  std::ostringstream s;
  s << "(" << dec.module_dim(1) << "," << dec.module_dim(2) << "," << dec.module_dim(3) << ")";
  return s.str();
}

std::string pairs_string(const ReductiveDecomposition& dec) {
  std::string s = "{";
  for (const auto& [a, b] : dec.commuting_pairs()) {
    if (s.size() > 1) s += ",";
    s += std::to_string(a) + std::to_string(b);
  }
  return s + "}";
}

int cmd_catalog() {
  std::cout << "entries:\n";
  for (const auto& e : catalog_entries()) std::cout << "  " << e.label << "  " << e.description << "\n";
  std::cout << "\nspace              dim  k   modules   equivalent  commuting\n";
  const std::vector<std::vector<std::string>> samples = {
      {"so-blocks 1 1 1"}, {"so-blocks 2 2 2"}, {"so-blocks 2 3 4"}, {"stiefel 2"},
      {"stiefel 3"},       {"su3-flag"},        {"product-spheres"}};
  for (const auto& tokens : samples) {
    const auto dec = resolve_space(tokens);
    char line[160];
    std::snprintf(line, sizeof line, "%-18s %-4d %-3d %-9s %-11s %s\n", dec->name().c_str(),
                  dec->dim(), dec->part_dim(Part::k), dims_string(*dec).c_str(),
                  dec->equivalence_note().empty() ? "no" : "yes", pairs_string(*dec).c_str());
    std::cout << line;
  }
  return kPass;
}

StructureReport full_structure_report(const DecompositionPtr& dec, std::uint64_t seed) {
  StructureReport r = verify_structure(*dec);
  r.merge(verify_algebra(*dec->context()), "algebra: ");
  for (int i = 1; i <= 3; ++i) r.merge(verify_fibration(*dec, i));
  r.merge(identity_checks(dec, seed), "identities: ");
  return r;
}

int cmd_verify_space(const std::vector<std::string>& space, std::uint64_t seed,
                     const std::string& out) {
  const auto dec = resolve_space(space, structural_tolerance(kDefaultStructuralTol));
  const StructureReport r = full_structure_report(dec, seed);
  emit(cli::dump(cli::to_json(r)) + "\n", out);
  return r.pass() ? kPass : kFail;
}

int cmd_identities(const std::vector<std::string>& space, std::uint64_t seed,
                   const std::string& out) {
  const auto dec = resolve_space(space, structural_tolerance(kDefaultStructuralTol));
  StructureReport r = identity_checks(dec, seed);
  emit(cli::dump(cli::to_json(r)) + "\n", out);
  return r.pass() ? kPass : kFail;
}

struct GeodesicOptions {
  std::vector<std::string> space{"so-blocks", "2", "2", "2"};
  std::vector<double> metric;
  std::string metric_case = "auto";
  std::optional<double> c;
  int trials = 10;
  std::uint64_t seed = 0;
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 20;
  std::string out;
  std::string format = "json";
  bool generic = false;
  Tolerances tol;
};

// Resolves the case and c from the options; fills the normalized metric.
MetricCase resolve_case(const GeodesicOptions& o, std::array<double, 3>& metric) {
  std::optional<int> forced;
  if (o.metric_case != "auto") {
    if (o.metric_case != "1" && o.metric_case != "2" && o.metric_case != "3") {
      throw PreconditionError("--case must be 1, 2, 3 or auto");
    }
    forced = std::stoi(o.metric_case);
  }
  if (o.metric.empty()) {
    if (!o.c) throw PreconditionError("give --metric or --c");
    if (!(*o.c > 0.0) || !std::isfinite(*o.c)) throw InvalidMetric("c must be positive");
    const int k = forced.value_or(1);
    metric = {1.0, 1.0, 1.0};
    metric[k == 3 ? 0 : k == 2 ? 1 : 2] = *o.c;
    return {k, *o.c};
  }
  std::array<double, 3> raw{o.metric[0], o.metric[1], o.metric[2]};
  for (double l : raw) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidMetric("metric entries must be positive");
  }
  metric = {1.0, raw[1] / raw[0], raw[2] / raw[0]};
  MetricCase mc;
  if (forced) {
    double c = 0.0;
    if (!metric_matches_case(raw, *forced, c)) {
      throw CaseMismatch("metric does not have the pattern of case " + o.metric_case +
                         "; no closed-form case; see restriction");
    }
    mc = {*forced, c};
  } else {
    mc = infer_metric_case(raw);
    if (mc.metric_case == 0) {
      throw CaseMismatch("no closed-form case for this metric; see restriction");
    }
  }
  if (o.c && std::abs(*o.c - mc.c) > 1e-12 * std::max(1.0, mc.c)) {
    throw CaseMismatch("--c disagrees with the metric");
  }
  return mc;
}

bool degenerate(const AlgebraContext& ctx, const std::array<Element, 3>& x) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (ctx.bracket(x[i].coeffs(), x[j].coeffs()).norm() <= 1e-9) return true;
    }
  }
  return false;
}

int cmd_geodesic(const GeodesicOptions& o) {
  if (o.format != "json" && o.format != "csv") throw PreconditionError("--format is json or csv");
  if (o.trials < 1) throw PreconditionError("--trials must be positive");
  if (o.steps < 10) throw PreconditionError("--steps must be at least 10");
  if (!(o.t0 < o.t1)) throw PreconditionError("--t0 must be below --t1");
  if (o.metric.size() != 0 && o.metric.size() != 3) throw PreconditionError("--metric takes 3 values");
  for (double t : {o.tol.gw, o.tol.defect, o.tol.coset}) {
    if (!(t > 0.0)) throw PreconditionError("tolerances must be positive");
  }

  GeodesicReport report;
  report.tolerances = o.tol;
  report.tolerances.structural = structural_tolerance(o.tol.structural);
  const auto dec = resolve_space(o.space, report.tolerances.structural);
  report.space = dec->name();
  const MetricCase mc = resolve_case(o, report.metric);
  report.metric_case = mc.metric_case;
  report.trials = o.trials;
  report.grid = Grid{o.t0, o.t1, o.steps};
  report.seed = o.seed;
  if (!o.metric.empty() && o.metric[0] != 1.0) report.notes.push_back("metric normalized to lambda1 = 1");

  const StructureReport structure = verify_structure(*dec);
  if (!structure.pass()) {
    report.notes.push_back("space fails the structure checks; closed forms do not apply");
    report.verdict = false;
  } else {
    SplitMix64 rng(o.seed, 0x67656f64ULL);
    CurveCheck total;
    const auto& ctx = *dec->context();
    for (int trial = 0; trial < o.trials; ++trial) {
      std::array<Element, 3> x{random_module_vector(*dec, 1, rng), random_module_vector(*dec, 2, rng),
                               random_module_vector(*dec, 3, rng)};
      int redraws = 0;
      while (o.generic && degenerate(ctx, x)) {
        if (++redraws > 100) {
          throw HypothesisViolated("no draw with [Xi,Xj] != 0 found; modules commute");
        }
        x = {random_module_vector(*dec, 1, rng), random_module_vector(*dec, 2, rng),
             random_module_vector(*dec, 3, rng)};
      }
      if (redraws > 0) {
        report.notes.push_back("trial " + std::to_string(trial) + ": redrew " +
                               std::to_string(redraws) + " degenerate draw(s)");
      }
      const auto cw = closed_form_geodesic(dec, mc.metric_case, x[0], x[1], x[2], mc.c);
      merge_into(total, check_curve(cw.curve, cw.metric, report.grid, true));
    }
    report.absorb(total);
  }

  if (o.format == "csv") {
    std::ostringstream csv;
    cli::write_csv(csv, report);
    emit(csv.str(), o.out);
    std::cerr << "verdict: " << (report.verdict ? "pass" : "fail") << "\n";
  } else {
    emit(cli::dump(cli::to_json(report)) + "\n", o.out);
  }
  return report.verdict ? kPass : kFail;
}

int cmd_restriction(double l2, double l3, int trials, std::uint64_t seed, double extra) {
  if (!(l2 > 0.0) || !(l3 > 0.0) || !std::isfinite(l2) || !std::isfinite(l3)) {
    throw InvalidMetric("lambda2 and lambda3 must be positive");
  }
  if (trials < 1) throw PreconditionError("--trials must be positive");
  Json j;
  j["lambda2"] = l2;
  j["lambda3"] = l3;
  const auto families = admissible_families(l2, l3, extra);
  bool pass = true;
  if (!families.empty()) {
    Json arr = Json::array();
    for (const auto& s : families) {
      const auto r = restriction_residual(s.coefficients(), s.lambda2, s.lambda3);
      double norm = 0.0;
      for (double v : r) norm += v * v;
      norm = std::sqrt(norm);
      pass = pass && norm <= 1e-12 && s.sums_exact();
      arr.push_back(Json{{"family", s.family},
                         {"a", s.a},
                         {"b", s.b},
                         {"c", s.c},
                         {"free_parameters", s.free_parameters},
                         {"residual", norm},
                         {"sums_exact", s.sums_exact()}});
    }
    j["mode"] = "families";
    j["families"] = arr;
  } else {
    const ProbeResult p = nonexistence_probe(l2, l3, trials, seed);
    j["mode"] = "probe (best-effort)";
    j["starts"] = p.starts;
    j["seed"] = seed;
    j["best_residual"] = p.best_residual;
    j["best_a"] = p.best.a;
    j["best_b"] = p.best.b;
    j["note"] = "a residual floor away from zero is evidence, not proof";
  }
  std::cout << cli::dump(j) << "\n";
  return pass ? kPass : kFail;
}

int cmd_go_check(const std::vector<std::string>& space, int trials, std::uint64_t seed,
                 const Grid& grid, const Tolerances& tol_in) {
  if (trials < 1) throw PreconditionError("--trials must be positive");
  Tolerances tol = tol_in;
  tol.structural = structural_tolerance(tol.structural);
  const auto dec = resolve_space(space, tol.structural);
  Json j;
  j["space"] = dec->name();
  j["commuting_pairs"] = pairs_string(*dec);
  if (!dec->has_commuting_pair()) {
    j["hypothesis"] = "hypothesis not met";
    j["verdict"] = "not applicable";
    std::cout << cli::dump(j) << "\n";
    return kPass;
  }
  SplitMix64 rng(seed, 0x676f6368ULL);
  double worst_gw = 0.0;
  double worst_defect = 0.0;
  Json metrics = Json::array();
  for (int trial = 0; trial < trials; ++trial) {
    const std::array<double, 3> l{1.0, rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)};
    const DiagonalMetric g(dec, l);
    const Element x = random_m_vector(*dec, rng);
    const auto curve = homogeneous_geodesic(dec, g, x);
    const CurveCheck chk = check_curve(curve, g, grid, false);
    worst_gw = std::max(worst_gw, chk.max_abs_gw);
    worst_defect = std::max(worst_defect, chk.max_defect_norm);
    metrics.push_back(l);
  }
  const bool pass = worst_gw <= tol.gw && worst_defect <= tol.defect;
  j["hypothesis"] = "met";
  j["trials"] = trials;
  j["seed"] = seed;
  j["metrics"] = metrics;
  j["max_abs_gw"] = worst_gw;
  j["max_defect_norm"] = worst_defect;
  j["verdict"] = pass ? "pass" : "fail";
  std::cout << cli::dump(j) << "\n";
  return pass ? kPass : kFail;
}

int run(int argc, char** argv) {
  CLI::App app{"Geodesics of generalized Wallach spaces"};
  app.require_subcommand(1);

  app.add_subcommand("catalog", "List catalog spaces");

  std::vector<std::string> space;
  std::uint64_t seed = 0;
  std::string out;
  auto* verify = app.add_subcommand("verify-space", "Structure, fibration and identity checks");
  verify->add_option("space", space, "Catalog name or JSON path")->required()->expected(1, 4);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out);

  auto* identities = app.add_subcommand("identities", "Finite-difference identity checks");
  identities->add_option("space", space)->required()->expected(1, 4);
  identities->add_option("--seed", seed);
  identities->add_option("--out", out);

  GeodesicOptions geo;
  auto* geodesic = app.add_subcommand("geodesic", "Build and verify closed-form geodesics");
  geodesic->add_option("--space", geo.space)->expected(1, 4);
  geodesic->add_option("--metric", geo.metric)->expected(3);
  geodesic->add_option("--case", geo.metric_case, "1, 2, 3 or auto");
  geodesic->add_option("--c", geo.c);
  geodesic->add_option("--trials", geo.trials);
  geodesic->add_option("--seed", geo.seed);
  geodesic->add_option("--t0", geo.t0);
  geodesic->add_option("--t1", geo.t1);
  geodesic->add_option("--steps", geo.steps, "Grid intervals");
  geodesic->add_option("--out", geo.out);
  geodesic->add_option("--format", geo.format, "json or csv");
  geodesic->add_flag("--generic", geo.generic, "Redraw X with a vanishing bracket");
  geodesic->add_option("--tol-gw", geo.tol.gw);
  geodesic->add_option("--tol-defect", geo.tol.defect);
  geodesic->add_option("--tol-coset", geo.tol.coset);
  geodesic->add_option("--tol-structural", geo.tol.structural);

  double l2 = 1.0;
  double l3 = 1.0;
  int restriction_trials = 200;
  double extra = 0.5;
  auto* restriction = app.add_subcommand("restriction", "Three-factor restriction system");
  restriction->add_option("--lambda2", l2)->required();
  restriction->add_option("--lambda3", l3)->required();
  restriction->add_option("--trials", restriction_trials, "Multistarts for the probe");
  restriction->add_option("--seed", seed);
  restriction->add_option("--extra", extra, "Value of the free coefficient");

  int go_trials = 10;
  Grid go_grid{0.0, 2.0, 20};
  Tolerances go_tol;
  auto* go = app.add_subcommand("go-check", "Single-exponential geodesics");
  go->add_option("space", space)->required()->expected(1, 4);
  go->add_option("--trials", go_trials);
  go->add_option("--seed", seed);
  go->add_option("--t0", go_grid.t0);
  go->add_option("--t1", go_grid.t1);
  go->add_option("--steps", go_grid.steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  if (app.got_subcommand("catalog")) return cmd_catalog();
  if (app.got_subcommand(verify)) return cmd_verify_space(space, seed, out);
  if (app.got_subcommand(identities)) return cmd_identities(space, seed, out);
  if (app.got_subcommand(geodesic)) return cmd_geodesic(geo);
  if (app.got_subcommand(restriction)) {
    return cmd_restriction(l2, l3, restriction_trials, seed, extra);
  }
  return cmd_go_check(space, go_trials, seed, go_grid, go_tol);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UnknownSpace& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknownSpace;
  } catch (const CaseMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMetric;
  } catch (const InvalidMetric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMetric;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const DegenerateSpace& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
