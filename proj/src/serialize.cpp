#include "flasque/serialize.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "flasque/error.hpp"

namespace flasque::io {
namespace {

constexpr long long kExactDoubleLimit = 9007199254740991LL;  // 2^53 - 1

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

std::size_t size_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string string_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

bool bool_from_json(const Json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected a boolean");
  return j.get<bool>();
}

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::vector<std::string> strings_from_json(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& e : array_at(j, where)) out.push_back(string_from_json(e, where + "[" + std::to_string(i++) + "]"));
  return out;
}

}  // namespace

Json to_json(const BigInt& v) {
  if (abs(v) <= BigInt(std::to_string(kExactDoubleLimit))) return Json(v.get_si());
  return Json(v.get_str());
}

BigInt bigint_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0) fail(where, "invalid integer string");
    return v;
  }
  fail(where, "expected an integer");
}

Json to_json(const Rational& v) {
  if (v.get_den() == 1) return Json(v.get_num().get_str());
  return Json(v.get_str());
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(bigint_from_json(j, where));
  if (!j.is_string()) fail(where, "expected a fraction string");
  Rational r;
  if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0) fail(where, "invalid fraction");
  r.canonicalize();
  return r;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j, const std::string& where) {
  array_at(j, where);
  std::vector<std::vector<BigInt>> rows;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    array_at(j[i], w);
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) fail(w, "rows have different lengths");
    std::vector<BigInt> row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(bigint_from_json(j[i][c], w + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, cols);
}

Json to_json(const FiniteGroup& g) {
  Json gens = Json::array();
  for (const auto& gen : g.generators()) gens.push_back({{"name", gen.name}, {"index", gen.index}});
  return {{"order", g.order()}, {"table", g.table()}, {"generators", gens}};
}

FiniteGroup group_from_json(const Json& j, const std::string& where) {
  const std::size_t order = size_from_json(field(j, "order", where), where + ".order");
  const Json& tj = array_at(field(j, "table", where), where + ".table");
  if (tj.size() != order) fail(where + ".table", "expected " + std::to_string(order) + " rows");
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t i = 0; i < order; ++i) {
    const std::string w = where + ".table[" + std::to_string(i) + "]";
    array_at(tj[i], w);
    if (tj[i].size() != order) fail(w, "expected " + std::to_string(order) + " entries");
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < order; ++c) row.push_back(size_from_json(tj[i][c], w));
    table.push_back(std::move(row));
  }
  std::vector<GroupGenerator> gens;
  const Json& gj = array_at(field(j, "generators", where), where + ".generators");
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const std::string w = where + ".generators[" + std::to_string(i) + "]";
    gens.push_back({string_from_json(field(gj[i], "name", w), w + ".name"),
                    size_from_json(field(gj[i], "index", w), w + ".index")});
  }
  try {
    return FiniteGroup(std::move(table), std::move(gens));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

Json to_json(const GLattice& x) {
  Json action = Json::object();
  const auto& gens = x.group().generators();
  for (std::size_t i = 0; i < gens.size(); ++i) action[gens[i].name] = to_json(x.generator_action(i));
  Json out = {{"group", to_json(x.group())}, {"rank", x.rank()}, {"action", action}};
  if (!x.labels().empty()) out["labels"] = x.labels();
  return out;
}

GLattice lattice_from_json(const Json& j, const std::string& where) {
  FiniteGroup g = group_from_json(field(j, "group", where), where + ".group");
  const std::size_t rank = size_from_json(field(j, "rank", where), where + ".rank");
  const Json& aj = field(j, "action", where);
  if (!aj.is_object()) fail(where + ".action", "expected an object keyed by generator name");
  std::vector<IntMatrix> actions;
  for (const auto& gen : g.generators()) {
    const std::string w = where + ".action." + gen.name;
    if (!aj.contains(gen.name)) fail(where + ".action", "missing generator '" + gen.name + "'");
    IntMatrix m = matrix_from_json(aj.at(gen.name), w);
    if (rank > 0 && (m.rows() != rank || m.cols() != rank)) fail(w, "expected a " + std::to_string(rank) + "x" + std::to_string(rank) + " matrix");
    if (rank == 0) m = IntMatrix(0, 0);
    actions.push_back(std::move(m));
  }
  for (auto it = aj.begin(); it != aj.end(); ++it)
    if (!g.generator_position(it.key())) fail(where + ".action", "unknown generator '" + it.key() + "'");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = strings_from_json(j.at("labels"), where + ".labels");
  try {
    return GLattice(std::move(g), rank, std::move(actions), std::move(labels));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

Json to_json(const FiniteAbelianGroup& a) {
  Json inv = Json::array();
  for (const auto& d : a.invariant_factors()) inv.push_back(to_json(d));
  return {{"invariants", inv}, {"free_rank", a.free_rank()}, {"text", a.to_string()}};
}

FiniteAbelianGroup abelian_from_json(const Json& j, const std::string& where) {
  std::vector<BigInt> inv;
  const Json& ij = array_at(field(j, "invariants", where), where + ".invariants");
  for (const auto& e : ij) inv.push_back(bigint_from_json(e, where + ".invariants"));
  return FiniteAbelianGroup(inv, size_from_json(field(j, "free_rank", where), where + ".free_rank"));
}

Json to_json(const FieldTowerSpec& t) {
  Json out = {{"base", t.base.to_string()}, {"s", t.s}};
  if (t.twisted()) out["a"] = to_json(*t.a);
  return out;
}

FieldTowerSpec tower_from_json(const Json& j, const std::string& where) {
  FieldTowerSpec t;
  t.base = BaseField::parse(string_from_json(field(j, "base", where), where + ".base"));
  const Json& sj = field(j, "s", where);
  if (!sj.is_number_integer()) fail(where + ".s", "expected an integer");
  t.s = sj.get<int>();
  if (j.contains("a") && !j.at("a").is_null()) t.a = bigint_from_json(j.at("a"), where + ".a");
  return t;
}

Json to_json(const CohomologyReport& r) {
  return {{"subgroup", r.subgroup}, {"order", r.subgroup_order}, {"degree", r.degree}, {"result", to_json(r.result)}};
}

Json to_json(const PredicateReport& r) {
  Json per = Json::array();
  for (const auto& c : r.per_subgroup) per.push_back(to_json(c));
  Json out = {{"holds", r.holds}, {"per_subgroup", per}};
  out["witness"] = r.witness ? Json(r.per_subgroup[*r.witness].subgroup) : Json(nullptr);
  return out;
}

namespace {

Json items_json(const std::vector<CheckItem>& items) {
  Json out = Json::array();
  for (const auto& it : items) out.push_back({{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
  return out;
}

}  // namespace

Json to_json(const ResolutionCheck& r) {
  return {{"passed", r.passed()},
          {"items", items_json(r.items)},
          {"dual_surjectivity", items_json(r.dual_surjectivity)},
          {"flasque_s", to_json(r.flasque_s)}};
}

Json to_json(const Section3Report& r) {
  Json items = Json::array();
  for (const auto& it : r.items) items.push_back({{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
  return {{"s", r.params.s},
          {"s0", r.params.s0},
          {"m", r.params.m},
          {"epsilon", r.params.epsilon},
          {"passed", r.passed()},
          {"items", items}};
}

Json to_json(const PlaceAnalysis& p) {
  return {{"place", p.label},         {"archimedean", p.archimedean}, {"completion", p.completion},
          {"deg_E", p.deg_E},         {"deg_N", p.deg_N},             {"deg_M", p.deg_M},
          {"noncyclic", p.noncyclic}, {"full_degree", p.full_degree}};
}

PlaceAnalysis place_from_json(const Json& j, const std::string& where) {
  PlaceAnalysis p;
  p.label = string_from_json(field(j, "place", where), where + ".place");
  p.archimedean = bool_from_json(field(j, "archimedean", where), where + ".archimedean");
  p.completion = string_from_json(field(j, "completion", where), where + ".completion");
  p.deg_E = static_cast<int>(size_from_json(field(j, "deg_E", where), where + ".deg_E"));
  p.deg_N = static_cast<int>(size_from_json(field(j, "deg_N", where), where + ".deg_N"));
  p.deg_M = static_cast<int>(size_from_json(field(j, "deg_M", where), where + ".deg_M"));
  p.noncyclic = bool_from_json(field(j, "noncyclic", where), where + ".noncyclic");
  p.full_degree = bool_from_json(field(j, "full_degree", where), where + ".full_degree");
  return p;
}

Json to_json(const LocalInvariantVector& v) {
  Json out = Json::object();
  for (const auto& [k, val] : v.entries()) out[k] = to_json(val);
  return out;
}

LocalInvariantVector invariant_vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object keyed by place");
  LocalInvariantVector v;
  for (auto it = j.begin(); it != j.end(); ++it) v.set(it.key(), rational_from_json(it.value(), where + "." + it.key()));
  return v;
}

Json to_json(const RClassReport& r) {
  Json places = Json::array();
  for (const auto& p : r.analyses) places.push_back(to_json(p));
  Json reps = Json::array();
  for (const auto& v : r.representatives) reps.push_back(to_json(v));
  return {{"tower", to_json(r.tower)},
          {"s0", r.info.s0},
          {"degenerate", r.info.degenerate},
          {"S", r.S},
          {"Sf", r.Sf},
          {"r", to_json(r.r)},
          {"places", places},
          {"representatives", reps},
          {"trace", r.trace}};
}

RClassReport rclass_report_from_json(const Json& j, const std::string& where) {
  RClassReport r;
  r.tower = tower_from_json(field(j, "tower", where), where + ".tower");
  r.info.s0 = size_from_json(field(j, "s0", where), where + ".s0");
  r.info.degenerate = bool_from_json(field(j, "degenerate", where), where + ".degenerate");
  r.S = strings_from_json(field(j, "S", where), where + ".S");
  r.Sf = strings_from_json(field(j, "Sf", where), where + ".Sf");
  r.r = bigint_from_json(field(j, "r", where), where + ".r");
  std::size_t i = 0;
  for (const auto& p : array_at(field(j, "places", where), where + ".places"))
    r.analyses.push_back(place_from_json(p, where + ".places[" + std::to_string(i++) + "]"));
  i = 0;
  for (const auto& v : array_at(field(j, "representatives", where), where + ".representatives"))
    r.representatives.push_back(invariant_vector_from_json(v, where + ".representatives[" + std::to_string(i++) + "]"));
  r.trace = strings_from_json(field(j, "trace", where), where + ".trace");
  return r;
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p) out.push_back(to_json(c));
  return out;
}

Polynomial polynomial_from_json(const Json& j, const std::string& where) {
  Polynomial p;
  std::size_t i = 0;
  for (const auto& c : array_at(j, where)) p.push_back(rational_from_json(c, where + "[" + std::to_string(i++) + "]"));
  return p;
}

Json to_json(const FlasqueResolution& r) {
  return {{"XT", to_json(r.XT)}, {"XQ", to_json(r.XQ)}, {"XS", to_json(r.XS)},
          {"incl", to_json(r.incl)}, {"quot", to_json(r.quot)}};
}

FlasqueResolution resolution_from_json(const Json& j, const std::string& where) {
  FlasqueResolution r;
  r.XT = lattice_from_json(field(j, "XT", where), where + ".XT");
  r.XQ = lattice_from_json(field(j, "XQ", where), where + ".XQ");
  r.XS = lattice_from_json(field(j, "XS", where), where + ".XS");
  r.incl = matrix_from_json(field(j, "incl", where), where + ".incl");
  r.quot = matrix_from_json(field(j, "quot", where), where + ".quot");
  return r;
}

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

}  // namespace flasque::io
