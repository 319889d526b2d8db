#pragma once

// JSON forms of lattices, towers and reports. Integers outside the exact
// double range travel as decimal strings; fractions as "num/den".

#include <json.hpp>

#include <string>

#include "flasque/brauer.hpp"
#include "flasque/gmod.hpp"
#include "flasque/tate.hpp"
#include "flasque/tori.hpp"

namespace flasque::io {

using Json = nlohmann::ordered_json;

Json to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j, const std::string& where);
Json to_json(const Rational& v);
Rational rational_from_json(const Json& j, const std::string& where);

Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, const std::string& where);

Json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j, const std::string& where = "group");

Json to_json(const GLattice& x);
GLattice lattice_from_json(const Json& j, const std::string& where = "lattice");

Json to_json(const FiniteAbelianGroup& a);
FiniteAbelianGroup abelian_from_json(const Json& j, const std::string& where);

Json to_json(const FieldTowerSpec& t);
FieldTowerSpec tower_from_json(const Json& j, const std::string& where = "tower");

Json to_json(const CohomologyReport& r);
Json to_json(const PredicateReport& r);
Json to_json(const ResolutionCheck& r);
Json to_json(const Section3Report& r);
Json to_json(const PlaceAnalysis& p);
PlaceAnalysis place_from_json(const Json& j, const std::string& where);
Json to_json(const LocalInvariantVector& v);
LocalInvariantVector invariant_vector_from_json(const Json& j, const std::string& where);
Json to_json(const RClassReport& r);
RClassReport rclass_report_from_json(const Json& j, const std::string& where = "report");
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, const std::string& where);

// Resolution triple file: {"XT": lattice, "XQ": lattice, "XS": lattice,
// "incl": matrix, "quot": matrix}.
Json to_json(const FlasqueResolution& r);
FlasqueResolution resolution_from_json(const Json& j, const std::string& where = "resolution");

// Throws InputError naming the file and the byte offset of a syntax error.
Json parse_text(const std::string& text, const std::string& source);
Json load_file(const std::string& path);

}  // namespace flasque::io
