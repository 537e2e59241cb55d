#include "report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace wallach::cli {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
        write(out, it.value(), indent, depth + 1);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += indent > 0 ? ", " : ",";
          write(out, j[i], indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) {
          out += ",";
          out += nl;
        }
        out += pad;
        write(out, j[i], indent, depth + 1);
      }
      out += nl + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

Json checks_json(const std::vector<CheckResult>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back(Json{{"name", c.name},
                       {"max_residual", c.max_residual},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
  }
  return arr;
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

Json to_json(const GeodesicReport& r) {
  Json j;
  j["space"] = r.space;
  j["metric"] = Json::array({r.metric[0], r.metric[1], r.metric[2]});
  j["case"] = r.metric_case;
  j["trials"] = r.trials;
  j["grid"] = Json{{"t0", r.grid.t0}, {"t1", r.grid.t1}, {"steps", r.grid.steps}};
  j["max_abs_gw"] = r.max_abs_gw;
  j["max_defect_norm"] = r.max_defect_norm;
  j["max_coset_dist"] = r.max_coset_dist;
  j["verdict"] = r.verdict ? "pass" : "fail";
  j["tolerances"] = Json{{"gw", r.tolerances.gw},
                         {"defect", r.tolerances.defect},
                         {"coset", r.tolerances.coset},
                         {"structural", r.tolerances.structural}};
  j["seed"] = r.seed;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const StructureReport& r) {
  Json j;
  j["space"] = r.space;
  j["k_dim"] = r.k_dim;
  j["module_dims"] = r.module_dims;
  Json pairs = Json::array();
  for (const auto& [a, b] : r.commuting_pairs) pairs.push_back(std::to_string(a) + std::to_string(b));
  j["commuting_pairs"] = pairs;
  j["checks"] = checks_json(r.checks);
  j["worst_residual"] = r.worst_residual();
  j["verdict"] = r.pass() ? "pass" : "fail";
  j["notes"] = r.notes;
  return j;
}

void write_csv(std::ostream& out, const GeodesicReport& r) {
  out << "t,defect_norm,max_abs_gw,coset_dist\n";
  for (const auto& row : r.rows) {
    out << format_double(row.t) << ',' << format_double(row.defect_norm) << ','
        << format_double(row.max_abs_gw) << ',' << format_double(row.coset_dist) << '\n';
  }
}

}  // namespace wallach::cli
