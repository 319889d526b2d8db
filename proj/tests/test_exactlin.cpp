#include <doctest.h>

#include "flasque/error.hpp"
#include "flasque/exactlin.hpp"
#include "support.hpp"

using namespace flasque;

namespace {

bool diagonal_chain(const IntMatrix& s) {
  const std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < n && s(i, i) != 0 && !mpz_divisible_p(BigInt(s(i + 1, i + 1)).get_mpz_t(), BigInt(s(i, i)).get_mpz_t()))
      return false;
    if (i + 1 < n && s(i, i) == 0 && s(i + 1, i + 1) != 0) return false;
  }
  return true;
}

// Order of Z^n / span(columns) by counting residues, for full-rank square m.
BigInt brute_force_index(const IntMatrix& m) { return abs(lin::determinant(m)); }

}  // namespace

TEST_SUITE("exactlin") {
  TEST_CASE("smith form of a small matrix") {
    IntMatrix m{{2, 4}, {6, 8}};
    auto r = lin::smith_normal_form(m);
    CHECK(r.diagonal() == std::vector<BigInt>{2, 4});
    CHECK(r.U * m * r.V == r.S);
    CHECK(abs(lin::determinant(r.U)) == 1);
    CHECK(abs(lin::determinant(r.V)) == 1);
  }

  TEST_CASE("smith form of zero and rectangular matrices") {
    auto z = lin::smith_normal_form(IntMatrix(2, 3));
    CHECK(z.rank() == 0);
    CHECK(z.S.is_zero());
    IntMatrix wide{{1, 2, 3}, {4, 5, 6}};
    auto w = lin::smith_normal_form(wide);
    CHECK(w.diagonal() == std::vector<BigInt>{1, 3});
    CHECK(w.U * wide * w.V == w.S);
  }

  TEST_CASE("smith form contract on random 4x4 matrices") {
    testkit::Rng rng(11);
    for (int t = 0; t < 200; ++t) {
      IntMatrix m = testkit::random_matrix(rng, 4, 4, t % 3 == 0 ? 2 : 9);
      if (t % 7 == 0) m.set_col(3, m.col(0));
      auto r = lin::smith_normal_form(m);
      REQUIRE(r.U * m * r.V == r.S);
      CHECK(abs(lin::determinant(r.U)) == 1);
      CHECK(abs(lin::determinant(r.V)) == 1);
      CHECK(diagonal_chain(r.S));
      BigInt prod = 1;
      for (std::size_t k = 1; k <= 4; ++k) {
        prod *= r.S(k - 1, k - 1);
        CHECK(testkit::determinant_divisor(m, k) == prod);
      }
    }
  }

  TEST_CASE("large entries stay exact") {
    IntMatrix m{{1, 0}, {0, 1}};
    m(0, 0) = BigInt("123456789012345678901234567890");
    m(1, 1) = BigInt("987654321098765432109876543210");
    auto r = lin::smith_normal_form(m);
    CHECK(r.U * m * r.V == r.S);
    CHECK(r.S(0, 0) * r.S(1, 1) == abs(lin::determinant(m)));
  }

  TEST_CASE("kernel basis") {
    IntMatrix m{{2, -1}};
    IntMatrix k = lin::kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK((k(0, 0) == 1 && k(1, 0) == 2));
    IntMatrix m2{{1, 1}};
    IntMatrix k2 = lin::kernel_basis(m2);
    REQUIRE(k2.cols() == 1);
    CHECK(abs(k2(0, 0)) == 1);
    CHECK(k2(0, 0) == -k2(1, 0));
    CHECK(lin::kernel_basis(IntMatrix::identity(3)).cols() == 0);
  }

  TEST_CASE("kernels are saturated and annihilated") {
    testkit::Rng rng(5);
    for (int t = 0; t < 100; ++t) {
      IntMatrix m = testkit::random_matrix(rng, 2, 4, 6);
      IntMatrix k = lin::kernel_basis(m);
      CHECK((m * k).is_zero());
      CHECK(k.cols() + lin::rank(m) == 4);
      CHECK(lin::is_saturated(k));
    }
  }

  TEST_CASE("cokernel and determinant agree") {
    testkit::Rng rng(17);
    for (int t = 0; t < 100; ++t) {
      IntMatrix m = testkit::random_matrix(rng, 3, 3, 5);
      auto c = lin::cokernel(m);
      if (lin::determinant(m) == 0)
        CHECK(c.free_rank() > 0);
      else
        CHECK(c.order() == brute_force_index(m));
    }
    CHECK(lin::cokernel(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z/6");
    CHECK(lin::cokernel(IntMatrix{{2, 0}, {0, 4}}).to_string() == "Z/2 + Z/4");
    CHECK(lin::cokernel(IntMatrix(2, 0)).to_string() == "Z^2");
  }

  TEST_CASE("hermite basis is canonical") {
    testkit::Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      IntMatrix m = testkit::random_matrix(rng, 3, 4, 5);
      IntMatrix h = lin::column_hermite_basis(m);
      IntMatrix shuffled = m * testkit::random_unimodular(rng, 4, 8);
      CHECK(lin::column_hermite_basis(shuffled) == h);
      CHECK(lin::same_lattice(m, h));
    }
  }

  TEST_CASE("solving and coordinates") {
    IntMatrix basis{{2, 0}, {0, 3}, {0, 0}};
    std::vector<BigInt> x;
    CHECK(lin::solve_in_lattice(basis, {4, 9, 0}, x));
    CHECK(x == std::vector<BigInt>{2, 3});
    CHECK_FALSE(lin::solve_in_lattice(basis, {1, 0, 0}, x));
    CHECK_FALSE(lin::solve_in_lattice(basis, {0, 0, 1}, x));
    CHECK_THROWS_AS(lin::coordinates(basis, IntMatrix{{1}, {0}, {0}}), ContainmentError);
  }

  TEST_CASE("sublattice quotients") {
    IntMatrix full = IntMatrix::identity(2);
    IntMatrix sub{{2, 0}, {0, 6}};
    CHECK(lin::sublattice_quotient(2, full, sub).to_string() == "Z/2 + Z/6");
    CHECK_THROWS_AS(lin::sublattice_quotient(2, sub, full), ContainmentError);
    CHECK(lin::sublattice_quotient(2, full, IntMatrix(2, 0)).to_string() == "Z^2");
  }

  TEST_CASE("finite abelian groups normalize") {
    auto g = FiniteAbelianGroup::from_cyclic_orders({4, 6});
    CHECK(g.to_string() == "Z/2 + Z/12");
    CHECK(g.order() == 24);
    CHECK(g.primary_part(2).to_string() == "Z/2 + Z/4");
    CHECK(g.primary_part(3).to_string() == "Z/3");
    CHECK(FiniteAbelianGroup::from_cyclic_orders({1, 1}).is_trivial());
    CHECK(FiniteAbelianGroup::from_cyclic_orders({16, 5}).to_string() == "Z/80");
  }

  TEST_CASE("quotient maps split a saturated sublattice") {
    IntMatrix sub{{1}, {1}, {0}};
    auto q = lin::quotient_maps(sub, 3);
    CHECK(q.projection.rows() == 2);
    CHECK((q.projection * sub).is_zero());
    CHECK((q.projection * q.section).is_identity());
  }

  TEST_CASE("determinant") {
    CHECK(lin::determinant(IntMatrix{{1, 2}, {3, 4}}) == -2);
    CHECK(lin::determinant(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 5}}) == -5);
    CHECK(lin::content({BigInt(6), BigInt(-9), BigInt(0)}) == 3);
  }
}
