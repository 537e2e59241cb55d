#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "wallach/report.hpp"
#include "wallach/verify.hpp"

namespace wallach::cli {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number printed as %.17g; keys keep
/// insertion order. Non-finite numbers become null.
std::string dump(const Json& j, int indent = 2);

Json to_json(const GeodesicReport& r);
Json to_json(const StructureReport& r);

/// Header `t,defect_norm,max_abs_gw,coset_dist`, one row per grid point.
void write_csv(std::ostream& out, const GeodesicReport& r);

std::string format_double(double x);

}  // namespace wallach::cli
