#include <doctest.h>

#include "flasque/error.hpp"
#include "flasque/serialize.hpp"
#include "support.hpp"

using namespace flasque;
using flasque::io::Json;

TEST_SUITE("serialize") {
  TEST_CASE("integers and fractions") {
    CHECK(io::to_json(BigInt(42)) == Json(42));
    BigInt big("123456789012345678901234567890");
    CHECK(io::to_json(big).is_string());
    CHECK(io::bigint_from_json(io::to_json(big), "x") == big);
    CHECK(io::bigint_from_json(Json("-17"), "x") == -17);
    CHECK_THROWS_AS(io::bigint_from_json(Json("12a"), "x"), InputError);
    Rational r(-3, 4);
    CHECK(io::rational_from_json(io::to_json(r), "r") == r);
    CHECK(io::rational_from_json(Json(5), "r") == 5);
    CHECK_THROWS_AS(io::rational_from_json(Json("1/0"), "r"), InputError);
  }

  TEST_CASE("lattices round trip") {
    testkit::Rng rng(12);
    for (const auto& g : testkit::group_menu(8)) {
      GLattice x = testkit::random_lattice(rng, g, 4);
      Json j = io::to_json(x);
      GLattice back = io::lattice_from_json(io::parse_text(j.dump(), "mem"));
      CHECK(back == x);
    }
    GLattice xs = build_XS(4);
    CHECK(io::lattice_from_json(io::to_json(xs)) == xs);
  }

  TEST_CASE("lattice input errors") {
    Json j = io::to_json(sign_lattice(cyclic_group(2, "sigma"), {-1}));
    Json bad = j;
    bad["rank"] = 2;
    CHECK_THROWS_AS(io::lattice_from_json(bad), InputError);
    CHECK_THROWS_AS(io::lattice_from_json(Json::object()), InputError);
    CHECK_THROWS_AS(io::lattice_from_json(Json::array()), InputError);
  }

  TEST_CASE("abelian groups and polynomials") {
    auto a = FiniteAbelianGroup::from_cyclic_orders({2, 4}, 1);
    CHECK(io::abelian_from_json(io::to_json(a), "a") == a);
    Polynomial p{-1, Rational(1, 2), 6};
    CHECK(io::polynomial_from_json(io::to_json(p), "p") == p);
  }

  TEST_CASE("towers and reports round trip") {
    FieldTowerSpec t{BaseField::parse("Q(sqrt 17)"), 3, std::nullopt};
    CHECK(io::tower_from_json(io::to_json(t)) == t);
    FieldTowerSpec tw{BaseField::parse("Qp:3"), 3, BigInt(3)};
    CHECK(io::tower_from_json(io::to_json(tw)) == tw);

    auto rep = r_count(t);
    auto back = io::rclass_report_from_json(io::parse_text(io::to_json(rep).dump(2), "mem"));
    CHECK(back.r == rep.r);
    CHECK(back.S == rep.S);
    CHECK(back.Sf == rep.Sf);
    CHECK(back.representatives == rep.representatives);
    CHECK(back.trace == rep.trace);
    CHECK(back.tower == rep.tower);
    REQUIRE(back.analyses.size() == rep.analyses.size());
    for (std::size_t i = 0; i < rep.analyses.size(); ++i) {
      CHECK(back.analyses[i].label == rep.analyses[i].label);
      CHECK(back.analyses[i].deg_M == rep.analyses[i].deg_M);
      CHECK(back.analyses[i].noncyclic == rep.analyses[i].noncyclic);
    }
  }

  TEST_CASE("resolutions round trip") {
    auto fr = construct_flasque_resolution(sign_lattice(cyclic_group(2, "sigma"), {-1}));
    auto back = io::resolution_from_json(io::parse_text(io::to_json(fr).dump(), "mem"));
    CHECK(back.XT == fr.XT);
    CHECK(back.XQ == fr.XQ);
    CHECK(back.XS == fr.XS);
    CHECK(back.incl == fr.incl);
    CHECK(back.quot == fr.quot);
  }

  TEST_CASE("reports serialize") {
    auto rep = is_flasque(build_XS_without_c(2), Execution::serial);
    Json j = io::to_json(rep);
    CHECK(j["holds"] == false);
    CHECK(j.contains("witness"));
    auto sec = io::to_json(verify_section3(make_params(3, 2)));
    CHECK(sec["passed"] == true);
  }

  TEST_CASE("malformed JSON reports a location") {
    try {
      io::parse_text("{\"group\": [1, 2,, 3]}", "input.json");
      FAIL("expected an error");
    } catch (const InputError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("input.json") != std::string::npos);
      CHECK(msg.find("byte 17") != std::string::npos);
    }
    CHECK_THROWS_AS(io::load_file("/nonexistent/lattice.json"), InputError);
  }
}
