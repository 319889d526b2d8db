#include <doctest.h>

#include "flasque/error.hpp"
#include "flasque/gmod.hpp"
#include "flasque/tate.hpp"
#include "flasque/tori.hpp"
#include "support.hpp"

using namespace flasque;

namespace {

// The generator action matrices compose along every table product.
bool respects_group_law(const GLattice& x) {
  const FiniteGroup& g = x.group();
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (x.action(a) * x.action(b) != x.action(g.mul(a, b))) return false;
  return true;
}

}  // namespace

TEST_SUITE("gmod") {
  TEST_CASE("abelian groups from invariants") {
    FiniteGroup g = group_from_abelian_invariants({2, 4}, {"sigma", "tau"});
    CHECK(g.order() == 8);
    CHECK(g.element_order(g.generators()[1].index) == 4);
    const std::size_t st2 = g.parse_element("sigma*tau^2");
    CHECK(g.element_name(st2) == "sigma*tau^2");
    CHECK(g.parse_element("tau^-1") == g.parse_element("tau^3"));
    CHECK(g.parse_element("e") == g.identity());
    CHECK_THROWS_AS(g.parse_element("rho"), InputError);
    CHECK_THROWS_AS(group_from_abelian_invariants({8, 16}), InputError);
  }

  TEST_CASE("malformed tables are rejected") {
    CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}, {{"g", 1}}), InputError);
    CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 0}}, {{"g", 2}}), InputError);
    CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1}}, {{"g", 1}}), InputError);
  }

  TEST_CASE("subgroup enumeration matches brute force") {
    for (const auto& g : testkit::group_menu(16)) {
      auto subs = subgroups(g);
      std::vector<std::uint64_t> masks;
      for (const auto& h : subs) masks.push_back(h.mask());
      std::sort(masks.begin(), masks.end());
      CHECK(masks == testkit::brute_force_subgroup_masks(g));
      for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1].size() <= subs[i].size());
    }
    CHECK(subgroups(group_from_abelian_invariants({2, 4})).size() == 8);
    CHECK(subgroups(group_from_abelian_invariants({2, 2})).size() == 5);
    CHECK(subgroups(testkit::symmetric3()).size() == 6);
    CHECK(subgroups(testkit::dihedral4()).size() == 10);
    CHECK(subgroups(testkit::quaternion8()).size() == 6);
  }

  TEST_CASE("subgroup selectors and names") {
    FiniteGroup g = family_group(4);
    CHECK(parse_subgroup(g, "G").size() == 8);
    CHECK(parse_subgroup(g, "1").size() == 1);
    Subgroup h = parse_subgroup(g, "<sigma, tau^2>");
    CHECK(h.size() == 4);
    CHECK_FALSE(h.is_cyclic(g));
    CHECK(parse_subgroup(g, "tau").is_cyclic(g));
    CHECK(parse_subgroup(g, "tau").name(g) == "<tau>");
    CHECK(Subgroup::trivial(g).name(g) == "1");
    CHECK_THROWS_AS(Subgroup::from_elements(g, {0, g.parse_element("tau")}), InputError);
  }

  TEST_CASE("constructed lattices satisfy the group law") {
    testkit::Rng rng(21);
    for (const auto& g : testkit::group_menu(12)) {
      for (int t = 0; t < 3; ++t) {
        GLattice x = testkit::random_lattice(rng, g, 4);
        CHECK(respects_group_law(x));
        CHECK(respects_group_law(dual(x)));
      }
      for (const auto& h : subgroups(g)) CHECK(respects_group_law(permutation_module(g, h)));
    }
    for (std::size_t s0 : {1U, 2U, 4U, 8U}) CHECK(respects_group_law(build_XS(s0)));
  }

  TEST_CASE("invalid actions are rejected") {
    FiniteGroup c2 = cyclic_group(2);
    CHECK_THROWS_AS(GLattice(c2, 1, {IntMatrix{{2}}}), InputError);
    CHECK_THROWS_AS(GLattice(c2, 2, {IntMatrix{{0, 1}, {1, 1}}}), InputError);
    CHECK_THROWS_AS(GLattice(c2, 2, {IntMatrix{{1}}}), InputError);
    CHECK_THROWS_AS(sign_lattice(cyclic_group(3), {-1}), InputError);
  }

  TEST_CASE("dual is an involution and fixes permutation modules") {
    testkit::Rng rng(8);
    for (const auto& g : testkit::group_menu(8)) {
      GLattice x = testkit::random_lattice(rng, g, 4);
      CHECK(dual(dual(x)) == x);
      for (const auto& h : subgroups(g)) {
        GLattice p = permutation_module(g, h);
        CHECK(dual(p) == p);
      }
    }
  }

  TEST_CASE("permutation modules") {
    FiniteGroup g = family_group(2);
    Subgroup h = parse_subgroup(g, "sigma");
    GLattice p = permutation_module(g, h);
    CHECK(p.rank() == 2);
    CHECK(p.label(0) == "eH");
    CHECK(permutation_module(g, Subgroup::trivial(g)).rank() == 4);
    CHECK(permutation_module(g, Subgroup::whole(g)).rank() == 1);
    CHECK(invariants_sublattice(p, Subgroup::whole(g)).cols() == 1);
  }

  TEST_CASE("restriction and change of basis") {
    GLattice xs = build_XS(4);
    Subgroup h = parse_subgroup(xs.group(), "tau^2");
    GLattice r = restrict(xs, h);
    CHECK(r.group().order() == 2);
    CHECK(r.rank() == xs.rank());
    testkit::Rng rng(2);
    IntMatrix p = testkit::random_unimodular(rng, xs.rank());
    GLattice y = change_basis(xs, p);
    CHECK(is_equivariant(y, xs, p));
  }

  TEST_CASE("equivariant maps") {
    FiniteGroup c2 = cyclic_group(2);
    GLattice perm = permutation_module(c2, Subgroup::trivial(c2));
    GLattice triv = trivial_lattice(c2, 1);
    IntMatrix sum{{1, 1}};
    CHECK(is_equivariant(perm, triv, sum));
    CHECK_FALSE(is_equivariant(perm, triv, IntMatrix{{1, 0}}));
    CHECK_THROWS_AS(GLatticeMap(perm, triv, IntMatrix{{1, 0}}), InputError);
    CHECK_NOTHROW(GLatticeMap(perm, triv, sum));
  }

  TEST_CASE("literal copies: k = 1 is the identity, ranks grow") {
    GLattice xs = build_XS(2);
    BasisRoles roles = xs_roles(2);
    CHECK(ind_copies(xs, roles, 1).generator_actions() == xs.generator_actions());
    for (std::size_t k : {2U, 3U}) CHECK(ind_copies(xs, roles, k).rank() == k * 4 + 1);
    CHECK_THROWS_AS(ind_copies(xs, roles, 0), InputError);
  }

  TEST_CASE("literal copies sharing c are not flasque") {
    for (std::size_t s0 : {2U, 4U}) {
      GLattice lit = ind_copies(build_XS(s0), xs_roles(s0), 2);
      CHECK_FALSE(is_flasque(lit, Execution::serial).holds);
      CHECK(is_flasque(build_XS_induced(s0, 2), Execution::serial).holds);
    }
  }

  TEST_CASE("finite modules validate their action") {
    FiniteGroup c2 = cyclic_group(2);
    CHECK_THROWS_AS(FiniteGModule(c2, {4}, {IntMatrix{{2}}}), InputError);
    CHECK_THROWS_AS(FiniteGModule(c2, {2, 4}, {IntMatrix{{1, 0}, {1, 1}}}), InputError);
    FiniteGModule a(c2, {3}, {IntMatrix{{-1}}});
    CHECK(a.order() == 3);
    CHECK(a.reduce({BigInt(-1)}) == std::vector<BigInt>{2});
  }

  TEST_CASE("quasitrivial covers") {
    FiniteGroup c2 = cyclic_group(2);
    SUBCASE("trivial action on Z/n") {
      auto cover = quasitrivial_cover(FiniteGModule(c2, {5}, {IntMatrix{{1}}}));
      CHECK(cover.P.rank() == 1);
      CHECK(cover.XT.rank() == 1);
      CHECK(cover.kernel_basis == IntMatrix{{5}});
    }
    SUBCASE("Z/2 with the sign action") {
      auto cover = quasitrivial_cover(FiniteGModule(c2, {2}, {IntMatrix{{-1}}}));
      CHECK(cover.P.rank() == 1);
      CHECK(cover.XT.rank() == 1);
    }
    SUBCASE("Z/3 with inversion") {
      auto cover = quasitrivial_cover(FiniteGModule(c2, {3}, {IntMatrix{{-1}}}));
      CHECK(cover.P.rank() == 2);
      CHECK(cover.XT.rank() == 2);
      CHECK(lin::sublattice_quotient(2, IntMatrix::identity(2), cover.kernel_basis).order() == 3);
      CHECK(is_equivariant(cover.XT, cover.P, cover.kernel_basis));
    }
    SUBCASE("index equals the module order") {
      FiniteGroup g = group_from_abelian_invariants({2, 2});
      FiniteGModule a(g, {4, 2}, {IntMatrix{{-1, 0}, {0, 1}}, IntMatrix{{1, 2}, {0, 1}}});
      auto cover = quasitrivial_cover(a);
      CHECK(lin::sublattice_quotient(cover.P.rank(), IntMatrix::identity(cover.P.rank()), cover.kernel_basis).order() ==
            a.order());
      IntMatrix image = cover.projection * cover.kernel_basis;
      for (std::size_t i = 0; i < image.rows(); ++i)
        for (std::size_t j = 0; j < image.cols(); ++j) CHECK(image(i, j) % a.factors()[i] == 0);
    }
  }
}
