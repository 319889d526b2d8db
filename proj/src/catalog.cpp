#include "flasque/catalog.hpp"

#include <set>
#include <sstream>

#include "flasque/error.hpp"

namespace flasque {
namespace {

using io::Json;

std::size_t get_size(const Json& params, const std::string& key, const std::string& where) {
  if (!params.contains(key) || !params.at(key).is_number_integer() || params.at(key).get<long long>() < 0)
    throw InputError(where + ": parameter '" + key + "' must be a non-negative integer");
  return params.at(key).get<std::size_t>();
}

bool mutated(const Json& params) { return params.value("mutation", std::string()) == "drop_c"; }

GLattice family_lattice(const Json& params, const std::string& where) {
  const std::size_t s0 = get_size(params, "s0", where);
  return mutated(params) ? build_XS_without_c(s0) : build_XS(s0);
}

std::string failing_subgroup(const PredicateReport& r) {
  if (!r.witness) return "";
  const auto& w = r.per_subgroup[*r.witness];
  return w.result.to_string() + " at " + w.subgroup;
}

ScenarioResult compare_bool(ScenarioResult res, const Json& expected, const std::string& key, bool actual,
                            const std::string& detail) {
  const bool want = expected.value(key, true);
  res.passed = want == actual;
  res.detail = key + " = " + (actual ? "true" : "false") + (detail.empty() ? "" : " (" + detail + ")");
  if (!res.passed) res.detail += ", expected " + std::string(want ? "true" : "false");
  return res;
}

Scenario make(std::string name, std::string kind, Json params, Json expected) {
  return {std::move(name), std::move(kind), std::move(params), std::move(expected)};
}

}  // namespace

std::vector<Scenario> builtin_catalog() {
  std::vector<Scenario> c;
  for (int s0 : {1, 2, 4, 8})
    c.push_back(make("X(S) flasque, s0=" + std::to_string(s0), "flasque", {{"s0", s0}}, {{"flasque", true}}));
  for (int s0 : {1, 2, 4, 8})
    c.push_back(make("flasque resolution criterion, s0=" + std::to_string(s0), "resolution", {{"s0", s0}},
                     {{"passed", true}}));
  c.push_back(make("kernel order (3,2,3)", "kernel_order", {{"s", 3}, {"s0", 2}, {"m", 3}},
                   {{"cokernel", "Z/8"}, {"two_part", "Z/8"}}));
  c.push_back(make("kernel order (4,4,3)", "kernel_order", {{"s", 4}, {"s0", 4}, {"m", 3}},
                   {{"cokernel", "Z/80"}, {"two_part", "Z/16"}}));
  for (int s0 : {2, 4})
    for (int k : {2, 3})
      c.push_back(make("Ind copies s0=" + std::to_string(s0) + " k=" + std::to_string(k), "ind_copies",
                       {{"s0", s0}, {"k", k}}, {{"flasque", true}}));
  c.push_back(make("family checks (3,2)", "family", {{"s", 3}, {"s0", 2}}, {{"passed", true}}));
  c.push_back(make("family checks (4,4)", "family", {{"s", 4}, {"s0", 4}}, {{"passed", true}}));
  c.push_back(make("family checks (5,8)", "family", {{"s", 5}, {"s0", 8}}, {{"passed", true}}));
  c.push_back(make("r-classes Q(sqrt 17), s=3", "rclasses", {{"base", "Q(sqrt 17)"}, {"s", 3}}, {{"r", 2}}));
  c.push_back(make("r-classes Q, s=3", "rclasses", {{"base", "Q"}, {"s", 3}}, {{"r", 1}}));
  c.push_back(make("r-classes Q_3 twisted a=3, s=3", "rclasses", {{"base", "Qp:3"}, {"s", 3}, {"a", 3}}, {{"r", 2}}));
  c.push_back(make("r-classes degenerate Q(sqrt 2), s=3", "rclasses", {{"base", "Q(sqrt 2)"}, {"s", 3}}, {{"r", 1}}));
  for (int p : {3, 5})
    c.push_back(make("odd cyclic cover C" + std::to_string(p), "odd_cover", {{"p", p}},
                     {{"flasque", true}, {"coflasque", true}}));
  c.push_back(make("connector (6,3)", "connector", {{"a", "6"}, {"b", "3"}}, {{"q", {"1", "2"}}, {"p", {"-1", "1", "6"}}}));
  c.push_back(make("connector (-1,1)", "connector", {{"a", "-1"}, {"b", "1"}}, {{"q", {"1"}}, {"p", {"-1"}}}));
  return c;
}

std::vector<Scenario> catalog_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("catalog: expected an array of scenarios");
  std::vector<Scenario> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "catalog[" + std::to_string(i) + "]";
    const Json& e = j[i];
    if (!e.is_object() || !e.contains("name") || !e.at("name").is_string() || !e.contains("kind") ||
        !e.at("kind").is_string())
      throw InputError(where + ": each scenario needs string fields 'name' and 'kind'");
    Scenario s{e.at("name").get<std::string>(), e.at("kind").get<std::string>(), e.value("params", Json::object()),
               e.value("expected", Json::object())};
    if (!names.insert(s.name).second) throw InputError(where + ": duplicate scenario name '" + s.name + "'");
    out.push_back(std::move(s));
  }
  return out;
}

io::Json to_json(const Scenario& s) {
  return {{"name", s.name}, {"kind", s.kind}, {"params", s.params}, {"expected", s.expected}};
}

io::Json to_json(const ScenarioResult& r) {
  return {{"name", r.name}, {"kind", r.kind}, {"passed", r.passed}, {"detail", r.detail}};
}

ScenarioResult run_scenario(const Scenario& s, Execution mode) {
  ScenarioResult res{s.name, s.kind, false, ""};
  const std::string where = "scenario '" + s.name + "'";
  const Json& p = s.params;
  const Json& want = s.expected;

  if (s.kind == "flasque") {
    auto fl = is_flasque(family_lattice(p, where), mode);
    return compare_bool(res, want, "flasque", fl.holds, failing_subgroup(fl));
  }
  if (s.kind == "resolution") {
    FamilyResolution fr = build_resolution(family_lattice(p, where));
    auto check = check_flasque_resolution(fr.XT, fr.XQ, fr.XS, fr.incl, fr.quot, mode);
    std::string detail;
    for (const auto& it : check.items)
      if (!it.passed) detail += it.name + " failed; ";
    for (const auto& it : check.dual_surjectivity)
      if (!it.passed) detail += "dual invariants not onto at " + it.name + "; ";
    if (!check.flasque_s.holds) detail += "XS not flasque: " + failing_subgroup(check.flasque_s);
    return compare_bool(res, want, "passed", check.passed(), detail);
  }
  if (s.kind == "ind_copies") {
    GLattice x = build_XS_induced(get_size(p, "s0", where), get_size(p, "k", where), mutated(p));
    auto fl = is_flasque(x, mode);
    return compare_bool(res, want, "flasque", fl.holds, failing_subgroup(fl));
  }
  if (s.kind == "kernel_order") {
    TorusFamilyParams params{static_cast<int>(get_size(p, "s", where)), get_size(p, "s0", where),
                             static_cast<long>(get_size(p, "m", where)), 1};
    Pi0Dual pi0 = build_pi0_dual(params);
    const std::string coker = pi0.cokernel.to_string();
    const std::string two = pi0.cokernel.primary_part(2).to_string();
    res.detail = "coker = " + coker + ", 2-part = " + two;
    res.passed = coker == want.value("cokernel", std::string()) && two == want.value("two_part", std::string());
    return res;
  }
  if (s.kind == "family") {
    const int sv = static_cast<int>(get_size(p, "s", where));
    TorusFamilyParams params = make_params(sv, get_size(p, "s0", where), p.value("epsilon", 1));
    if (p.contains("m")) params.m = static_cast<long>(get_size(p, "m", where));
    Section3Report rep = verify_section3(params, mutated(p), mode);
    std::string detail = "m=" + std::to_string(params.m);
    for (const auto& it : rep.items)
      if (!it.passed) detail += "; " + it.name + ": " + it.detail;
    return compare_bool(res, want, "passed", rep.passed(), detail);
  }
  if (s.kind == "rclasses") {
    Json tower_json = {{"base", p.value("base", std::string("Q"))}, {"s", p.value("s", 3)}};
    if (p.contains("a")) tower_json["a"] = p.at("a");
    RClassReport rep = r_count(io::tower_from_json(tower_json, where), true);
    const BigInt expected = want.contains("r") ? io::bigint_from_json(want.at("r"), where + ".expected.r") : BigInt(-1);
    res.passed = rep.r == expected;
    res.detail = "r = " + rep.r.get_str() + ", |S| = " + std::to_string(rep.S.size()) +
                 ", |Sf| = " + std::to_string(rep.Sf.size());
    if (!res.passed) res.detail += ", expected " + expected.get_str();
    return res;
  }
  if (s.kind == "odd_cover") {
    const std::size_t prime = get_size(p, "p", where);
    FiniteGModule a(cyclic_group(2, "sigma"), {BigInt(static_cast<unsigned long>(prime))}, {IntMatrix{{-1}}});
    QuasitrivialCover cover = quasitrivial_cover(a);
    FlasqueResolution fr = construct_flasque_resolution(cover.XT);
    auto check = check_flasque_resolution(fr.XT, fr.XQ, fr.XS, fr.incl, fr.quot, mode);
    const bool fl = is_flasque(fr.XS, mode).holds;
    const bool cofl = is_coflasque(fr.XS, mode).holds;
    res.passed = check.passed() && fl == want.value("flasque", true) && cofl == want.value("coflasque", true);
    res.detail = "XT rank " + std::to_string(cover.XT.rank()) + ", XS rank " + std::to_string(fr.XS.rank()) +
                 ", flasque " + (fl ? "yes" : "no") + ", coflasque " + (cofl ? "yes" : "no") +
                 (check.passed() ? "" : ", resolution check failed");
    return res;
  }
  if (s.kind == "connector") {
    const Rational a = io::rational_from_json(p.at("a"), where + ".a");
    const Rational b = io::rational_from_json(p.at("b"), where + ".b");
    Connector c = dihedral_connector(a, b);
    auto bad = connector_failures(c, a, b);
    res.passed = bad.empty();
    if (want.contains("q")) res.passed = res.passed && io::polynomial_from_json(want.at("q"), where) == c.q;
    if (want.contains("p")) res.passed = res.passed && io::polynomial_from_json(want.at("p"), where) == c.p;
    res.detail = "q = " + poly_to_string(c.q) + ", p = " + poly_to_string(c.p);
    for (const auto& b2 : bad) res.detail += "; fails " + b2;
    return res;
  }
  throw InputError(where + ": unknown kind '" + s.kind + "'");
}

std::vector<ScenarioResult> run_catalog(const std::vector<Scenario>& catalog, Execution mode) {
  std::vector<ScenarioResult> out;
  out.reserve(catalog.size());
  for (const auto& s : catalog) out.push_back(run_scenario(s, mode));
  return out;
}

}  // namespace flasque
