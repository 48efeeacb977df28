#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpkh/cobord.hpp"
#include "rpkh/invariants.hpp"
#include "rpkh/projdiag.hpp"

namespace rpkh {

using nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Diagram document or braid document. Throws InputError.
ProjDiagram diagram_from_json(const json& j);
json diagram_to_json(const ProjDiagram& d);

BraidInput braid_from_json(const json& j);
// "m: g1 g2 ..." with signed generators.
BraidInput parse_braid(const std::string& text, bool projective);

ProjDiagram load_diagram_file(const std::string& path);
json load_json_file(const std::string& path);

// Single movie or {"segments": [...]}.
std::vector<Movie> movies_from_json(const json& j);

std::string rational_str(const mpq_class& q);

json sreport_json(const SReport& r);
json kh_json(const std::vector<HomologyEntry>& table);
json jones_json(const LaurentPoly& p);
json audit_json(const MovieAudit& a);

// Generators (vertex, labels, i, j, k) and symbolic differential entries.
json complex_dump(const Complex& cx);

}  // namespace rpkh
