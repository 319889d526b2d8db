// flasque-kit: command-line front end for the flasque library.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "flasque/brauer.hpp"
#include "flasque/catalog.hpp"
#include "flasque/error.hpp"
#include "flasque/serialize.hpp"
#include "flasque/tate.hpp"
#include "flasque/tori.hpp"

namespace {

using flasque::io::Json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct GlobalOptions {
  bool json = false;
  bool quiet = false;
  bool serial = false;
  std::string catalog_file;
};

class Output {
 public:
  explicit Output(const GlobalOptions& g) : g_(g) {}
  // Text goes to stdout unless --json or --quiet.
  std::ostream& text() { return (g_.json || g_.quiet) ? null_ : std::cout; }
  void json(const Json& j) {
    if (g_.json && !g_.quiet) std::cout << j.dump(2) << "\n";
  }

 private:
  const GlobalOptions& g_;
  std::ostringstream null_;
};

flasque::Execution mode(const GlobalOptions& g) {
  return g.serial ? flasque::Execution::serial : flasque::Execution::parallel;
}

const char* mark(bool ok) { return ok ? "PASS" : "FAIL"; }

int cmd_tate(const GlobalOptions& g, const std::string& file, const std::string& selector, int degree) {
  Output out(g);
  const flasque::GLattice x = flasque::io::lattice_from_json(flasque::io::load_file(file), file);
  std::vector<flasque::Subgroup> subs;
  if (selector == "all")
    subs = flasque::subgroups(x.group());
  else
    subs.push_back(flasque::parse_subgroup(x.group(), selector));
  auto reports = flasque::cohomology_sweep(x, subs, degree, mode(g));
  Json arr = Json::array();
  for (const auto& r : reports) {
    arr.push_back(flasque::io::to_json(r));
    out.text() << std::left << std::setw(24) << r.subgroup << " |H|=" << std::setw(3) << r.subgroup_order
               << " degree " << std::setw(2) << r.degree << " : " << r.result.to_string() << "\n";
  }
  out.json({{"lattice", file}, {"degree", degree}, {"reports", arr}});
  return kOk;
}

int cmd_flasque_check(const GlobalOptions& g, const std::string& file) {
  Output out(g);
  const flasque::GLattice x = flasque::io::lattice_from_json(flasque::io::load_file(file), file);
  auto rep = flasque::is_flasque(x, mode(g));
  for (const auto& r : rep.per_subgroup)
    out.text() << std::left << std::setw(24) << r.subgroup << " H^-1 = " << r.result.to_string() << "\n";
  if (rep.holds)
    out.text() << "flasque: yes\n";
  else
    out.text() << "flasque: no (witness " << rep.per_subgroup[*rep.witness].subgroup << ")\n";
  out.json(flasque::io::to_json(rep));
  return rep.holds ? kOk : kCheckFailed;
}

int report_resolution(const GlobalOptions& g, const flasque::FlasqueResolution& res, const std::string& write_to) {
  Output out(g);
  auto check = flasque::check_flasque_resolution(res.XT, res.XQ, res.XS, res.incl, res.quot, mode(g));
  out.text() << "ranks: XT=" << res.XT.rank() << " XQ=" << res.XQ.rank() << " XS=" << res.XS.rank() << "\n";
  for (const auto& it : check.items)
    out.text() << mark(it.passed) << "  " << it.name << (it.detail.empty() ? "" : " (" + it.detail + ")") << "\n";
  bool dual_ok = true;
  for (const auto& it : check.dual_surjectivity)
    if (!it.passed) {
      dual_ok = false;
      out.text() << "FAIL  dual invariants onto at " << it.name << " (" << it.detail << ")\n";
    }
  out.text() << mark(dual_ok) << "  dual invariants onto for all " << check.dual_surjectivity.size()
             << " subgroups\n";
  out.text() << mark(check.flasque_s.holds) << "  XS flasque\n";
  out.text() << (check.passed() ? "resolution verified\n" : "resolution check failed\n");
  if (!write_to.empty()) {
    std::ofstream f(write_to);
    if (!f) throw flasque::InputError("cannot write '" + write_to + "'");
    f << flasque::io::to_json(res).dump(2) << "\n";
  }
  Json j = flasque::io::to_json(check);
  j["ranks"] = {{"XT", res.XT.rank()}, {"XQ", res.XQ.rank()}, {"XS", res.XS.rank()}};
  out.json(j);
  return check.passed() ? kOk : kCheckFailed;
}

int cmd_resolution(const GlobalOptions& g, long s0, const std::string& triple, const std::string& construct,
                   const std::string& write_to) {
  const int given = (s0 >= 0) + !triple.empty() + !construct.empty();
  if (given != 1) throw flasque::InputError("give exactly one of --s0, --triple, --construct");
  flasque::FlasqueResolution res;
  if (s0 >= 0) {
    auto fr = flasque::build_resolution(flasque::build_XS(static_cast<std::size_t>(s0)));
    res = {fr.XT, fr.XQ, fr.XS, fr.incl, fr.quot};
  } else if (!triple.empty()) {
    res = flasque::io::resolution_from_json(flasque::io::load_file(triple), triple);
  } else {
    res = flasque::construct_flasque_resolution(
        flasque::io::lattice_from_json(flasque::io::load_file(construct), construct));
  }
  return report_resolution(g, res, write_to);
}

int cmd_rclasses(const GlobalOptions& g, const std::string& base, int s, const std::string& a) {
  Output out(g);
  flasque::FieldTowerSpec tower;
  tower.base = flasque::BaseField::parse(base);
  tower.s = s;
  if (!a.empty()) {
    flasque::BigInt av;
    if (av.set_str(a, 10) != 0) throw flasque::InputError("--a must be an integer, got '" + a + "'");
    tower.a = av;
  }
  auto rep = flasque::r_count(tower, true);
  out.text() << "tower: " << tower.to_string() << "\n";
  out.text() << "s0 = " << rep.info.s0 << (rep.info.degenerate ? " (degenerate: " + rep.info.degenerate_reason + ")" : "")
             << "\n";
  for (const auto& p : rep.analyses)
    out.text() << "  " << std::left << std::setw(8) << p.label << std::setw(28) << p.completion << " [E]=" << p.deg_E
               << " [N]=" << p.deg_N << " [M]=" << p.deg_M << (p.noncyclic ? " noncyclic" : " cyclic")
               << (p.full_degree ? " full" : "") << "\n";
  auto join = [](const std::vector<std::string>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s + "}";
  };
  out.text() << "S = " << join(rep.S) << ", Sf = " << join(rep.Sf) << "\n";
  out.text() << "r = " << rep.r << "\n";
  for (const auto& t : rep.trace) out.text() << "  " << t << "\n";
  out.text() << "representatives:\n";
  for (const auto& v : rep.representatives) out.text() << "  " << v.to_string() << "\n";
  out.json(flasque::io::to_json(rep));
  return kOk;
}

int cmd_connector(const GlobalOptions& g, const std::string& a_text, const std::string& b_text) {
  Output out(g);
  flasque::Rational a, b;
  if (a.set_str(a_text, 10) != 0 || a.get_den() == 0) throw flasque::InputError("--a must be a rational number");
  if (b.set_str(b_text, 10) != 0 || b.get_den() == 0) throw flasque::InputError("--b must be a rational number");
  a.canonicalize();
  b.canonicalize();
  auto c = flasque::dihedral_connector(a, b);
  auto bad = flasque::connector_failures(c, a, b);
  out.text() << "q(t) = " << flasque::poly_to_string(c.q) << "\n";
  out.text() << "l(t) = " << flasque::poly_to_string(c.l) << "\n";
  out.text() << "p(t) = " << flasque::poly_to_string(c.p) << "\n";
  out.text() << (bad.empty() ? "identities hold\n" : "identities FAILED\n");
  Json fails = Json::array();
  for (const auto& f : bad) fails.push_back(f);
  out.json({{"a", flasque::io::to_json(a)},
            {"b", flasque::io::to_json(b)},
            {"q", flasque::io::to_json(c.q)},
            {"l", flasque::io::to_json(c.l)},
            {"p", flasque::io::to_json(c.p)},
            {"failures", fails}});
  return bad.empty() ? kOk : kCheckFailed;
}

std::vector<flasque::Scenario> load_catalog(const GlobalOptions& g) {
  if (g.catalog_file.empty()) return flasque::builtin_catalog();
  return flasque::catalog_from_json(flasque::io::load_file(g.catalog_file));
}

int cmd_catalog(const GlobalOptions& g) {
  Output out(g);
  auto cat = load_catalog(g);
  Json arr = Json::array();
  for (const auto& s : cat) {
    arr.push_back(flasque::to_json(s));
    out.text() << std::left << std::setw(14) << s.kind << s.name << "\n";
  }
  out.json(arr);
  return kOk;
}

int cmd_verify_all(const GlobalOptions& g) {
  Output out(g);
  auto cat = load_catalog(g);
  bool all = true;
  Json arr = Json::array();
  for (const auto& s : cat) {
    auto r = flasque::run_scenario(s, mode(g));
    all = all && r.passed;
    arr.push_back(flasque::to_json(r));
    out.text() << mark(r.passed) << "  " << std::left << std::setw(40) << r.name << r.detail << "\n";
  }
  out.text() << (all ? "all " + std::to_string(cat.size()) + " items verified\n" : "verification FAILED\n");
  out.json({{"passed", all}, {"items", arr}});
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tate cohomology, flasque resolutions and R-equivalence class counts"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--quiet", g.quiet, "No output; exit code only");
  app.add_flag("--serial", g.serial, "Use the serial reference path for subgroup sweeps");
  app.add_option("--catalog", g.catalog_file, "Scenario catalog JSON replacing the built-in one");

  std::string file, selector = "all";
  int degree = -1;
  auto* tate = app.add_subcommand("tate", "Tate cohomology of a lattice for one or all subgroups");
  tate->add_option("file", file, "Lattice JSON")->required();
  tate->add_option("--subgroup", selector, "all, G, 1, or generating element names");
  tate->add_option("--degree", degree, "-1, 0 or 1");

  auto* fc = app.add_subcommand("flasque-check", "Exit 0 iff the lattice is flasque");
  fc->add_option("file", file, "Lattice JSON")->required();

  long s0 = -1;
  std::string triple, construct, write_to;
  auto* res = app.add_subcommand("resolution", "Check a flasque resolution");
  res->add_option("--s0", s0, "Family resolution for s0 in {1, 2, 4, 8, 16}");
  res->add_option("--triple", triple, "Resolution JSON {XT, XQ, XS, incl, quot}");
  res->add_option("--construct", construct, "Build a resolution of the given lattice XT");
  res->add_option("--write", write_to, "Save the resolution JSON");

  std::string base = "Q", a_text, b_text;
  int s = 3;
  auto* rc = app.add_subcommand("rclasses", "Count R-equivalence classes through local invariants");
  rc->add_option("--base", base, "Q, Q(sqrt D) or Qp:P");
  rc->add_option("--s", s, "2^s-th roots of unity (3 or 4)");
  rc->add_option("--a", a_text, "Twist parameter (omit for the constant tower)");

  auto* conn = app.add_subcommand("connector", "Connector polynomials q | p");
  conn->add_option("--a", a_text, "Nonzero rational")->required();
  conn->add_option("--b", b_text, "Nonzero rational")->required();

  auto* cat = app.add_subcommand("catalog", "List the scenario catalog");
  auto* vp = app.add_subcommand("verify-paper", "Run every catalog scenario");

  for (auto* sub : {tate, fc, res, rc, conn, cat, vp}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (tate->parsed()) return cmd_tate(g, file, selector, degree);
    if (fc->parsed()) return cmd_flasque_check(g, file);
    if (res->parsed()) return cmd_resolution(g, s0, triple, construct, write_to);
    if (rc->parsed()) return cmd_rclasses(g, base, s, a_text);
    if (conn->parsed()) return cmd_connector(g, a_text, b_text);
    if (cat->parsed()) return cmd_catalog(g);
    if (vp->parsed()) return cmd_verify_all(g);
  } catch (const flasque::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
