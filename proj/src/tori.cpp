#include "flasque/tori.hpp"

#include <sstream>

#include "flasque/error.hpp"

namespace flasque {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_s0(std::size_t s0) {
  if (!is_power_of_two(s0) || s0 > 16) throw InputError("s0 must be one of 1, 2, 4, 8, 16");
}

std::string tau_label(std::size_t i, const std::string& base) {
  if (i == 0) return base;
  if (i == 1) return "tau*" + base;
  return "tau^" + std::to_string(i) + "*" + base;
}

// Any orbit length n >= 1; the public builders restrict n to powers of two.
GLattice make_xs(std::size_t s0, bool with_c) {
  const std::size_t rank = 2 * s0 + 1;
  const std::size_t c = 2 * s0;
  auto a = [](std::size_t i) { return i; };
  auto b = [s0](std::size_t i) { return s0 + i; };

  IntMatrix sigma(rank, rank);
  IntMatrix tau(rank, rank);
  for (std::size_t i = 0; i < s0; ++i) {
    const std::size_t next = (i + 1) % s0;
    tau(a(next), a(i)) = 1;
    tau(b(next), b(i)) = 1;
    sigma(a(i), a(i)) += 1;
    sigma(b(next), a(i)) += 1;
    sigma(b(i), a(i)) -= 1;
    sigma(b(i), b(i)) = -1;
    if (with_c) sigma(c, b(i)) = 1;
  }
  tau(c, c) = 1;
  sigma(c, c) = 1;

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s0; ++i) labels.push_back(tau_label(i, "a"));
  for (std::size_t i = 0; i < s0; ++i) labels.push_back(tau_label(i, "b"));
  labels.push_back("c");
  return {group_from_abelian_invariants({2, s0}, {"sigma", "tau"}), rank, {sigma, tau}, labels};
}

BigInt pow_big(long base, std::size_t e) {
  BigInt r;
  BigInt b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

std::size_t mult_order(long m, long modulus) {
  long x = ((m % modulus) + modulus) % modulus;
  long acc = x;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(modulus); ++k) {
    if (acc == 1) return k;
    acc = (acc * x) % modulus;
  }
  return 0;
}

}  // namespace

long choose_m(int s, std::size_t s0) {
  if (s < 3 || s > 30) throw InputError("s must be at least 3");
  if (!is_power_of_two(s0) || s0 > (std::size_t{1} << (s - 2)))
    throw InputError("s0 must be a power of two dividing 2^(s-2)");
  const long modulus = 1L << s;
  const long cap = 1L << (s + 2);
  for (long m = 2; m <= cap; ++m) {
    if (m % 2 == 0 || mult_order(m, modulus) != s0) continue;
    BigInt q = (pow_big(m, s0) - 1) / modulus;
    if (q % 2 != 0) return m;
  }
  throw InputError("no suitable m below 2^(s+2)");
}

void validate_params(const TorusFamilyParams& p) {
  if (p.s < 3) throw InputError("s must be at least 3");
  if (p.s > kMaxFamilyS) throw InputError("s is capped at " + std::to_string(kMaxFamilyS) + " for family builds");
  if (!is_power_of_two(p.s0) || p.s0 > (std::size_t{1} << (p.s - 2)))
    throw InputError("s0 must be a power of two dividing 2^(s-2)");
  if (p.epsilon != 1 && p.epsilon != -1) throw InputError("epsilon must be +1 or -1");
  const long modulus = 1L << p.s;
  if (p.m <= 1 || p.m % 2 == 0 || mult_order(p.m, modulus) != p.s0)
    throw InputError("m must have multiplicative order s0 modulo 2^s");
  BigInt q = (pow_big(p.m, p.s0) - 1) / modulus;
  if (q % 2 == 0) throw InputError("(m^s0 - 1) / 2^s must be odd");
}

TorusFamilyParams make_params(int s, std::size_t s0, int epsilon) {
  TorusFamilyParams p{s, s0, choose_m(s, s0), epsilon};
  validate_params(p);
  return p;
}

FiniteGroup family_group(std::size_t s0) {
  check_s0(s0);
  return group_from_abelian_invariants({2, s0}, {"sigma", "tau"});
}

GLattice build_XS(std::size_t s0) {
  check_s0(s0);
  return make_xs(s0, true);
}

GLattice build_XS_without_c(std::size_t s0) {
  check_s0(s0);
  return make_xs(s0, false);
}

GLattice build_XS_induced(std::size_t s0, std::size_t k, bool drop_c) {
  check_s0(s0);
  if (k == 0) throw InputError("at least one copy is required");
  if (2 * s0 * k > FiniteGroup::kMaxOrder) throw InputError("induced lattice exceeds the group order cap");
  const GLattice big = make_xs(s0 * k, !drop_c);
  const FiniteGroup& bg = big.group();
  const std::size_t tau_k = bg.parse_element("tau^" + std::to_string(k));
  return {family_group(s0), big.rank(), {big.generator_action(0), big.action(tau_k)}, big.labels()};
}

BasisRoles xs_roles(std::size_t s0) {
  BasisRoles roles;
  for (std::size_t i = 0; i < 2 * s0; ++i) roles.replicated.push_back(i);
  roles.fixed.push_back(2 * s0);
  return roles;
}

GLattice build_XQ(std::size_t s0) {
  const FiniteGroup g = family_group(s0);
  const GLattice regular = permutation_module(g, Subgroup::trivial(g));
  GLattice xq = direct_sum(direct_sum(regular, trivial_lattice(g, 1)), regular);
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < g.order(); ++x) labels.push_back("s:" + g.element_name(x));
  labels.push_back("t");
  for (std::size_t x = 0; x < g.order(); ++x) labels.push_back("r:" + g.element_name(x));
  return {g, xq.rank(), xq.generator_actions(), labels};
}

IntMatrix restriction_map(const GLattice& xs, const GLattice& xq) {
  const FiniteGroup& g = xs.group();
  const std::size_t n = g.order();
  const std::size_t s0 = (xs.rank() - 1) / 2;
  if (xq.rank() != 2 * n + 1) throw InputError("XQ has the wrong rank for this family");
  std::vector<BigInt> a(xs.rank()), b(xs.rank()), c(xs.rank());
  a[0] = 1;
  b[s0] = 1;
  c[2 * s0] = 1;
  IntMatrix m(xs.rank(), xq.rank());
  for (std::size_t x = 0; x < n; ++x) {
    m.set_col(x, xs.action(x).apply(b));
    m.set_col(n + 1 + x, xs.action(x).apply(a));
  }
  m.set_col(n, c);
  return m;
}

FamilyResolution build_resolution(const GLattice& xs) {
  if (xs.rank() % 2 != 1) throw InputError("XS must have odd rank");
  const std::size_t s0 = (xs.rank() - 1) / 2;
  FamilyResolution res;
  res.XS = xs;
  res.XQ = build_XQ(s0);
  if (!(res.XQ.group() == xs.group())) throw InputError("XS is not defined over the family group");
  res.quot = restriction_map(xs, res.XQ);
  res.incl = lin::kernel_basis(res.quot);
  res.XT = induced_on_sublattice(res.XQ, res.incl);
  return res;
}

GLattice build_XT(std::size_t s0) { return build_resolution(build_XS(s0)).XT; }

Pi0Dual build_pi0_dual(const TorusFamilyParams& p) {
  validate_params(p);
  const FiniteGroup g = family_group(p.s0);
  const std::size_t n = g.order();
  const std::size_t sigma = g.generators()[0].index;
  const std::size_t tau = g.generators()[1].index;

  GLattice xp = permutation_module(g, Subgroup::trivial(g));
  GLattice ambient = direct_sum(xp, permutation_module(g, Subgroup::generated_by(g, {sigma})));
  const std::size_t rank = ambient.rank();

  std::vector<BigInt> ep(rank), eq(rank);
  ep[0] = 1;
  eq[n] = 1;
  // (1 + sigma) e_p - (tau - m) e_q
  std::vector<BigInt> rel(rank);
  const auto sigma_ep = ambient.action(sigma).apply(ep);
  const auto tau_eq = ambient.action(tau).apply(eq);
  for (std::size_t i = 0; i < rank; ++i) rel[i] = ep[i] + sigma_ep[i] - tau_eq[i] + BigInt(p.m) * eq[i];

  IntMatrix relations(rank, n);
  for (std::size_t x = 0; x < n; ++x) relations.set_col(x, ambient.action(x).apply(rel));
  relations = lin::column_hermite_basis(relations);
  if (!lin::is_saturated(relations))
    throw Error("relation sublattice is not saturated; the quotient lattice would have torsion");
  auto qm = lin::quotient_maps(relations, rank);

  std::vector<IntMatrix> act;
  for (const auto& a : ambient.generator_actions()) act.push_back(qm.projection * a * qm.section);
  GLattice xtp(g, qm.projection.rows(), std::move(act));

  // Character map on the ambient lattice: e_p -> tau - m, e_q -> 1 + sigma.
  std::vector<BigInt> unit(n);
  unit[0] = 1;
  std::vector<BigInt> img_p = xp.action(tau).apply(unit);
  img_p[0] -= p.m;
  std::vector<BigInt> img_q = xp.action(sigma).apply(unit);
  img_q[0] += 1;
  IntMatrix phi(n, rank);
  std::vector<bool> used(n, false);
  std::size_t col = n;
  for (std::size_t x = 0; x < n; ++x) {
    phi.set_col(x, xp.action(x).apply(img_p));
    if (used[x]) continue;
    used[x] = used[g.mul(x, sigma)] = true;
    phi.set_col(col++, xp.action(x).apply(img_q));
  }
  if (!(phi * relations).is_zero()) throw Error("character map does not kill the defining relation");
  if (!is_equivariant(ambient, xp, phi)) throw Error("character map is not equivariant");

  IntMatrix map = phi * qm.section;
  FiniteAbelianGroup coker = lin::cokernel(map);
  return {std::move(xp), std::move(xtp), std::move(map), std::move(coker)};
}

bool Section3Report::passed() const {
  for (const auto& it : items)
    if (!it.passed) return false;
  return !items.empty();
}

Section3Report verify_section3(const TorusFamilyParams& p, bool drop_c, Execution mode) {
  validate_params(p);
  Section3Report report;
  report.params = p;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.items.push_back({std::move(name), ok, std::move(detail)});
  };

  const GLattice xs = drop_c ? build_XS_without_c(p.s0) : build_XS(p.s0);
  const FiniteGroup& g = xs.group();

  auto flasque_item = [&](const std::string& name, const GLattice& x) {
    auto fl = is_flasque(x, mode);
    std::string detail = std::to_string(fl.per_subgroup.size()) + " subgroups";
    if (fl.witness) {
      const auto& w = fl.per_subgroup[*fl.witness];
      detail = "H^-1 = " + w.result.to_string() + " at " + w.subgroup;
    }
    add(name, fl.holds, detail);
  };

  flasque_item("X(S) flasque", xs);

  FamilyResolution res = build_resolution(xs);
  {
    std::ostringstream os;
    os << "ranks XQ=" << res.XQ.rank() << " XS=" << res.XS.rank() << " XT=" << res.XT.rank();
    const bool ok = res.XQ.rank() == 4 * p.s0 + 1 && res.XS.rank() == 2 * p.s0 + 1 && res.XT.rank() == 2 * p.s0;
    add("lattice ranks", ok, os.str());
  }
  {
    auto check = check_flasque_resolution(res.XT, res.XQ, res.XS, res.incl, res.quot, mode);
    std::string detail;
    for (const auto& it : check.items)
      if (!it.passed) detail += it.name + "; ";
    for (const auto& it : check.dual_surjectivity)
      if (!it.passed) detail += "dual invariants not onto at " + it.name + "; ";
    if (!check.flasque_s.holds) detail += "X(S) not flasque; ";
    if (detail.size() >= 2) detail.resize(detail.size() - 2);
    add("flasque resolution", check.passed(), detail);
  }

  Pi0Dual pi0 = build_pi0_dual(p);
  {
    const BigInt expected = pow_big(p.m, p.s0) - 1;
    const bool ok = pi0.cokernel.is_cyclic() && pi0.cokernel.order() == expected;
    add("kernel order", ok, "coker = " + pi0.cokernel.to_string() + ", expected Z/" + expected.get_str());
    const auto two = pi0.cokernel.primary_part(2);
    const BigInt two_s = pow_big(2, static_cast<std::size_t>(p.s));
    add("kernel 2-part", two.is_cyclic() && two.order() == two_s,
        "2-part = " + two.to_string() + ", expected Z/" + two_s.get_str());
  }

  const Subgroup whole = Subgroup::whole(g);
  for (std::size_t k : {2U, 3U}) {
    GLattice ind = build_XS_induced(p.s0, k, drop_c);
    auto top = tate_minus1(ind, whole);
    add("Ind copies k=" + std::to_string(k) + " over G", top.is_trivial(), "H^-1 = " + top.to_string());
    flasque_item("Ind copies k=" + std::to_string(k) + " flasque", ind);
  }
  return report;
}

}  // namespace flasque
