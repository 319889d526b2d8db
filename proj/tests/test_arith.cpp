#include <doctest.h>

#include "flasque/arith.hpp"
#include "flasque/error.hpp"
#include "support.hpp"

using namespace flasque;

namespace {

long strip(BigInt& n, long p) {
  long v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Square test in Q_p by residue search: an odd unit is a square iff it is a
// square mod p, a 2-adic unit iff it is a square mod 8.
bool oracle_square(const Rational& x, long p) {
  if (x == 0) return true;
  BigInt num = x.get_num(), den = x.get_den();
  const long v = strip(num, p) - strip(den, p);
  if (v % 2 != 0) return false;
  const long modulus = p == 2 ? 8 : p;
  BigInt unit = num * den;
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), unit.get_mpz_t(), static_cast<unsigned long>(modulus));
  for (long t = 0; t < modulus; ++t)
    if ((t * t) % modulus == r.get_si()) return true;
  return false;
}

// x + y sqrt(u) with y != 0 is a square iff its norm is a square r^2 and one
// of (x + r) / 2, (x - r) / 2 is a nonzero square of Q_p.
bool oracle_square(const LocalElement& a, long p, long u) {
  if (a.y == 0) return oracle_square(a.x, p) || oracle_square(a.x * u, p);
  const Rational nrm = a.x * a.x - u * a.y * a.y;
  if (!oracle_square(nrm, p)) return false;
  const Rational r = padic_sqrt(nrm, p, 60);
  for (const Rational& half : {Rational((a.x + r) / 2), Rational((a.x - r) / 2)})
    if (half != 0 && oracle_square(half, p)) return true;
  return false;
}

Rational random_rational(testkit::Rng& rng, long bound) {
  long num = 0;
  while (num == 0) num = testkit::uniform(rng, -bound, bound);
  Rational q(num, testkit::uniform(rng, 1, bound));
  q.canonicalize();
  return q;
}

std::vector<long> quadratic_units(long p) {
  std::vector<long> out;
  for (long u : {-1L, 2L, 3L, 5L, 6L, 7L, -2L, -3L, -5L, -6L, -7L, 10L, 11L, 13L, -10L, 14L, 21L})
    if (padic_valuation(BigInt(u), p) <= 1 && !oracle_square(Rational(u), p)) out.push_back(u);
  return out;
}

LocalElement mul(const LocalField& f, const LocalElement& a, const LocalElement& b) { return f.mul(a, b); }

FieldTowerSpec tower(const std::string& base, int s, std::optional<long> a = std::nullopt) {
  FieldTowerSpec t{BaseField::parse(base), s, std::nullopt};
  if (a) t.a = BigInt(*a);
  return t;
}

std::vector<long> odd_prime_divisors(long a) {
  std::vector<long> out;
  a = std::labs(a);
  for (long q = 3; q <= a; q += 2)
    if (a % q == 0 && is_prime(q)) out.push_back(q);
  return out;
}

bool global_square(long x) {
  if (x < 0) return false;
  const long r = std::lround(std::sqrt(static_cast<double>(x)));
  return r * r == x;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("rational square classes") {
    CHECK(is_padic_square(17, 2));
    CHECK_FALSE(is_padic_square(3, 3));
    CHECK_FALSE(is_padic_square(2, 3));
    CHECK(is_padic_square(Rational(9, 4), 5));
    CHECK_FALSE(is_padic_square(-1, 3));
    CHECK(is_padic_square(-1, 5));
    CHECK(is_padic_square(-7, 2));
    CHECK_FALSE(is_padic_square(5, 2));
    testkit::Rng rng(1);
    for (long p : {2L, 3L, 5L, 7L, 11L})
      for (int t = 0; t < 200; ++t) {
        Rational x = random_rational(rng, 400);
        CHECK_MESSAGE(is_padic_square(x, p) == oracle_square(x, p), "x = ", x.get_str(), ", p = ", p);
      }
  }

  TEST_CASE("valuations and primality") {
    CHECK(padic_valuation(Rational(24, 5), 2) == 3);
    CHECK(padic_valuation(Rational(24, 5), 5) == -1);
    CHECK(padic_valuation(BigInt(81), 3) == 4);
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK_FALSE(is_prime(1));
  }

  TEST_CASE("p-adic square roots") {
    testkit::Rng rng(2);
    for (long p : {2L, 3L, 5L, 7L})
      for (int t = 0; t < 60; ++t) {
        Rational x = random_rational(rng, 300);
        if (!oracle_square(x, p)) {
          CHECK_THROWS_AS(padic_sqrt(x, p), InputError);
          continue;
        }
        Rational c = padic_sqrt(x, p);
        Rational diff = c * c - x;
        if (diff != 0) CHECK(padic_valuation(diff, p) >= padic_valuation(x, p) + 40);
      }
  }

  TEST_CASE("quadratic local fields") {
    auto f = LocalField::quadratic(3, 3);
    CHECK(f.ramification() == 2);
    CHECK(f.describe() == "Q_3(sqrt 3) ramified");
    CHECK(f.valuation(LocalElement(0, 1)) == 1);
    CHECK(f.valuation(LocalElement(3)) == 2);
    auto g = LocalField::quadratic(2, 5);
    CHECK(g.residue_degree() == 2);
    CHECK(g.valuation(LocalElement(2)) == 1);
    CHECK(LocalField::quadratic(2, -1).ramification() == 2);
    CHECK(LocalField::quadratic(2, 2).ramification() == 2);
    CHECK(f.norm(LocalElement(1, 2)) == -11);
    CHECK_THROWS_AS(LocalField::quadratic(3, 9), InputError);
    CHECK_THROWS_AS(LocalField::quadratic(5, 4), InputError);
    CHECK_THROWS_AS(LocalField::quadratic(4, 3), InputError);
    LocalElement a(3, -2);
    auto prod = f.mul(a, f.inverse(a));
    CHECK(prod.x == 1);
    CHECK(prod.y == 0);
  }

  TEST_CASE("squares in quadratic extensions agree with the oracle") {
    testkit::Rng rng(3);
    for (long p : {2L, 3L, 5L, 7L})
      for (long u : quadratic_units(p)) {
        auto f = LocalField::quadratic(p, u);
        for (int t = 0; t < 25; ++t) {
          Rational x = random_rational(rng, 60);
          CHECK(f.is_square(LocalElement(x)) == (oracle_square(x, p) || oracle_square(x * u, p)));
          LocalElement a(random_rational(rng, 30), random_rational(rng, 30));
          CHECK_MESSAGE(f.is_square(a) == oracle_square(a, p, u), "p=", p, " u=", u, " a=", a.x.get_str(), "+",
                        a.y.get_str(), "sqrt u");
        }
      }
  }

  TEST_CASE("square classes form a group") {
    testkit::Rng rng(4);
    for (long p : {2L, 3L, 5L}) {
      std::vector<LocalField> fields{LocalField::rational(p)};
      for (long u : quadratic_units(p)) fields.push_back(LocalField::quadratic(p, u));
      for (const auto& f : fields)
        for (int t = 0; t < 30; ++t) {
          auto elem = [&] {
            return f.is_base() ? LocalElement(random_rational(rng, 40))
                               : LocalElement(random_rational(rng, 20), random_rational(rng, 20));
          };
          LocalElement a = elem(), b = elem();
          CHECK(f.is_square(mul(f, a, mul(f, b, b))) == f.is_square(a));
          const int count = int(f.is_square(a)) + int(f.is_square(b)) + int(f.is_square(mul(f, a, b)));
          CHECK(count != 2);
          CHECK(f.is_square(mul(f, a, a)));
        }
    }
  }

  TEST_CASE("base field parsing") {
    CHECK(BaseField::parse("Q") == BaseField::rationals());
    CHECK(BaseField::parse("Q(sqrt 17)") == BaseField::quadratic(17));
    CHECK(BaseField::parse("Q(sqrt(-1))") == BaseField::quadratic(-1));
    CHECK(BaseField::parse("Qp:3") == BaseField::padic(3));
    CHECK(BaseField::quadratic(17).to_string() == "Q(sqrt 17)");
    CHECK_THROWS_AS(BaseField::parse("Q(sqrt 4)"), InputError);
    CHECK_THROWS_AS(BaseField::parse("Q(sqrt 1)"), InputError);
    CHECK_THROWS_AS(BaseField::parse("Qp:6"), InputError);
    CHECK_THROWS_AS(BaseField::parse("R"), InputError);
  }

  TEST_CASE("tower degeneracy") {
    CHECK(tower_info(tower("Q(sqrt 2)", 3)).degenerate);
    CHECK(tower_info(tower("Q", 3, -1)).degenerate);
    CHECK(tower_info(tower("Q", 3, -2)).degenerate);
    CHECK_FALSE(tower_info(tower("Q", 3, 1)).degenerate);
    auto info = tower_info(tower("Q", 4, 7));
    CHECK(info.s0 == 4);
    CHECK(info.global_degree() == 8);
    CHECK(tower_info(tower("Q(sqrt 2)", 4)).s0 == 2);
    CHECK_THROWS_AS(tower_info(tower("Q", 5)), UnsupportedError);
    CHECK_THROWS_AS(tower_info(tower("Q", 2)), InputError);
    CHECK_THROWS_AS(tower_info(tower("Q", 3, 0)), InputError);
  }

  TEST_CASE("relevant places") {
    CHECK(relevant_places(tower("Q", 3)) == std::vector<std::string>{"2:0", "inf:0"});
    CHECK(relevant_places(tower("Q(sqrt 17)", 3)) == std::vector<std::string>{"2:0", "2:1", "inf:0", "inf:1"});
    CHECK(relevant_places(tower("Q", 3, 5)) == std::vector<std::string>{"2:0", "5:0", "inf:0"});
    CHECK(relevant_places(tower("Q", 3, 45)) == std::vector<std::string>{"2:0", "5:0", "inf:0"});
    CHECK(relevant_places(tower("Qp:3", 3, 3)) == std::vector<std::string>{"3:0"});
    CHECK_THROWS_AS(relevant_places(tower("Q(sqrt 2)", 3)), InputError);
    auto inf = decomposition_type(tower("Q(sqrt -1)", 3, 3), "inf:0");
    CHECK(inf.archimedean);
    CHECK(inf.completion == "C");
    CHECK(inf.deg_M == 1);
  }

  TEST_CASE("S over Q for s = 3 matches the biquadratic criterion") {
    for (long a = -80; a <= 80; ++a) {
      if (a == 0 || global_square(-a) || global_square(-2 * a)) continue;
      auto sets = compute_S_Sf(tower("Q", 3, a));
      std::vector<std::string> expected;
      std::vector<long> primes{2};
      for (long q : odd_prime_divisors(a)) primes.push_back(q);
      for (long q : primes) {
        const bool noncyclic = !oracle_square(2, q) && !oracle_square(Rational(-a), q) && !oracle_square(Rational(-2 * a), q);
        if (noncyclic) expected.push_back(std::to_string(q) + ":0");
      }
      CHECK_MESSAGE(sets.S == expected, "a = ", a);
      CHECK(sets.Sf == sets.S);
      for (const auto& pa : sets.analyses)
        if (pa.archimedean) CHECK_FALSE(pa.noncyclic);
    }
  }

  TEST_CASE("S is invariant under a -> a k^2") {
    for (long a : {3L, 5L, -3L, 7L, 11L, 6L})
      for (long k : {2L, 3L, 5L}) {
        auto base = compute_S_Sf(tower("Q", 3, a));
        auto scaled = compute_S_Sf(tower("Q", 3, a * k * k));
        CHECK(base.S == scaled.S);
        CHECK(base.Sf == scaled.Sf);
        auto b4 = compute_S_Sf(tower("Q", 4, a));
        auto s4 = compute_S_Sf(tower("Q", 4, a * k * k));
        CHECK(b4.S == s4.S);
        CHECK(b4.Sf == s4.Sf);
      }
  }

  TEST_CASE("known place sets") {
    auto q17 = compute_S_Sf(tower("Q(sqrt 17)", 3));
    CHECK(q17.S == std::vector<std::string>{"2:0", "2:1"});
    CHECK(q17.Sf == q17.S);
    auto q7 = compute_S_Sf(tower("Q", 4, 7));
    CHECK(q7.S == std::vector<std::string>{"7:0"});
    CHECK(q7.Sf.empty());
    CHECK(compute_S_Sf(tower("Q(sqrt 2)", 3)).S.empty());
  }

  TEST_CASE("auxiliary primes") {
    CHECK(find_auxiliary_prime(tower("Q", 4, 7)).q == 3);
    CHECK(find_auxiliary_prime(tower("Q(sqrt 17)", 3)).q == 13);
    for (long a : {1L, 3L, 5L, 15L, 33L, 105L}) {
      long expected = 3;
      while (!(is_prime(expected) && (expected % 8 == 3 || expected % 8 == 5) && a % expected != 0)) expected += 2;
      auto aux = find_auxiliary_prime(tower("Q", 3, a));
      CHECK_MESSAGE(aux.q == expected, "a = ", a);
      CHECK(aux.place.deg_E == 2);
      CHECK(aux.place.deg_M == 2);
    }
    CHECK_THROWS_AS(find_auxiliary_prime(tower("Qp:3", 3, 3)), InputError);
    CHECK_THROWS_AS(find_auxiliary_prime(tower("Q(sqrt 2)", 3)), InputError);
  }
}
