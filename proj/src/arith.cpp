#include "flasque/arith.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "flasque/error.hpp"

namespace flasque {
namespace {

// x + y * sqrt(d) in K. For Q and Q_p the y part is always zero.
struct KElement {
  Rational x;
  Rational y;
};

enum class Generator { two, theta_in_K, theta_over_F };

struct Tower {
  FieldTowerSpec spec;
  TowerInfo info;
  Generator gen = Generator::two;
  KElement theta;  // only for theta_in_K
};

enum class PlaceKind { real, complex, finite };

struct Place {
  std::string label;
  PlaceKind kind = PlaceKind::finite;
  BigInt p = 0;
  int sign = 1;  // image of sqrt d: +c or -c at split and real places
  bool split = false;
  LocalField field = LocalField::rational(2);
};

bool is_rational_square(const Rational& x) {
  if (x < 0) return false;
  if (x == 0) return true;
  return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

bool squarefree(const BigInt& d) {
  BigInt t = abs(d);
  for (BigInt q = 2; q * q <= t; ++q) {
    if (mpz_divisible_p(t.get_mpz_t(), BigInt(q * q).get_mpz_t())) return false;
  }
  return true;
}

bool is_global_square(const FieldTowerSpec& t, const KElement& e) {
  switch (t.base.kind) {
    case BaseField::Kind::rational:
      return is_rational_square(e.x);
    case BaseField::Kind::padic:
      return LocalField::rational(t.base.p).is_square(LocalElement(e.x));
    case BaseField::Kind::quadratic: {
      const Rational d(t.base.d);
      if (e.y == 0) return is_rational_square(e.x) || is_rational_square(e.x * d);
      const Rational nrm = e.x * e.x - d * e.y * e.y;
      if (!is_rational_square(nrm)) return false;
      mpz_class rn, rd;
      mpz_sqrt(rn.get_mpz_t(), nrm.get_num_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), nrm.get_den_mpz_t());
      const Rational r(rn, rd);
      for (const Rational& cand : {Rational((e.x + r) / 2), Rational((e.x - r) / 2)})
        if (cand != 0 && is_rational_square(cand)) return true;
      return false;
    }
  }
  return false;
}

KElement times(const KElement& e, const Rational& k) { return {e.x * k, e.y * k}; }

Tower make_tower(const FieldTowerSpec& spec) {
  if (spec.s < 3) throw InputError("s must be at least 3");
  if (spec.s > 4) throw UnsupportedError("exact local analysis is implemented for s = 3 and s = 4 only");
  if (spec.twisted() && *spec.a == 0) throw InputError("a must be nonzero");

  Tower t;
  t.spec = spec;
  TowerInfo& info = t.info;
  const KElement two{2, 0};
  const bool sqrt2_in_K = is_global_square(spec, two);

  if (spec.s == 3) {
    if (sqrt2_in_K) {
      info.s0 = 1;
    } else {
      info.s0 = 2;
      info.generator = "2";
    }
  } else if (sqrt2_in_K) {
    if (spec.base.kind == BaseField::Kind::quadratic)
      t.theta = {2, 1};
    else
      t.theta = {2 + padic_sqrt(2, spec.base.p), 0};
    if (is_global_square(spec, t.theta)) {
      info.s0 = 1;
    } else {
      info.s0 = 2;
      info.generator = "2+sqrt2";
      t.gen = Generator::theta_in_K;
    }
  } else if (spec.base.kind == BaseField::Kind::padic &&
             LocalField::quadratic(spec.base.p, 2).is_square(LocalElement(2, 1))) {
    info.s0 = 2;
    info.generator = "2";
  } else {
    info.s0 = 4;
    info.generator = "2+sqrt2";
    t.gen = Generator::theta_over_F;
  }

  const Rational n(spec.n());
  if (info.s0 == 1) {
    info.degenerate = true;
    info.degenerate_reason = "E = K";
  } else {
    const KElement ne{n, 0};
    KElement other = t.gen == Generator::theta_in_K ? times(t.theta, n) : KElement{2 * n, 0};
    if (is_global_square(spec, ne) || is_global_square(spec, other)) {
      info.degenerate = true;
      info.degenerate_reason = "sqrt(" + spec.n().get_str() + ") lies in E";
    }
  }
  return t;
}

std::vector<Place> places_over(const FieldTowerSpec& spec, const BigInt& p) {
  const std::string prefix = p.get_str() + ":";
  std::vector<Place> out;
  Place pl;
  pl.p = p;
  switch (spec.base.kind) {
    case BaseField::Kind::padic:
      if (p != spec.base.p) return out;
      [[fallthrough]];
    case BaseField::Kind::rational:
      pl.label = prefix + "0";
      pl.field = LocalField::rational(p);
      out.push_back(pl);
      return out;
    case BaseField::Kind::quadratic: {
      const BigInt& d = spec.base.d;
      if (!mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) && is_padic_square(Rational(d), p)) {
        pl.field = LocalField::rational(p);
        pl.split = true;
        pl.label = prefix + "0";
        out.push_back(pl);
        pl.label = prefix + "1";
        pl.sign = -1;
        out.push_back(pl);
      } else {
        pl.label = prefix + "0";
        pl.field = LocalField::quadratic(p, d);
        out.push_back(pl);
      }
      return out;
    }
  }
  return out;
}

std::vector<Place> archimedean_places(const FieldTowerSpec& spec) {
  std::vector<Place> out;
  if (spec.base.kind == BaseField::Kind::padic) return out;
  Place pl;
  pl.kind = PlaceKind::real;
  pl.label = "inf:0";
  if (spec.base.kind == BaseField::Kind::quadratic && spec.base.d < 0) {
    pl.kind = PlaceKind::complex;
    out.push_back(pl);
    return out;
  }
  out.push_back(pl);
  if (spec.base.kind == BaseField::Kind::quadratic) {
    pl.label = "inf:1";
    pl.sign = -1;
    out.push_back(pl);
  }
  return out;
}

std::vector<Place> all_relevant(const Tower& t) {
  const FieldTowerSpec& spec = t.spec;
  if (spec.base.kind == BaseField::Kind::padic) return places_over(spec, spec.base.p);

  std::vector<BigInt> primes{2};
  if (spec.twisted()) {
    BigInt rest = abs(*spec.a);
    BigInt q = 3;
    while (rest % 2 == 0) rest /= 2;
    while (rest > 1) {
      if (q * q > rest) q = rest;
      if (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
        long v = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
          rest /= q;
          ++v;
        }
        const bool divides_d = spec.base.kind == BaseField::Kind::quadratic &&
                               mpz_divisible_p(spec.base.d.get_mpz_t(), q.get_mpz_t());
        if (v % 2 == 1 && !divides_d) primes.push_back(q);
      }
      q += 2;
    }
  }
  std::vector<Place> out;
  for (const BigInt& p : primes)
    for (Place& pl : places_over(spec, p)) out.push_back(std::move(pl));
  for (Place& pl : archimedean_places(spec)) out.push_back(std::move(pl));
  return out;
}

LocalElement localize(const Tower& t, const Place& pl, const KElement& e) {
  if (t.spec.base.kind != BaseField::Kind::quadratic || e.y == 0) return LocalElement(e.x);
  if (pl.split) return LocalElement(e.x + pl.sign * e.y * padic_sqrt(Rational(t.spec.base.d), pl.p));
  return LocalElement(e.x, e.y);
}

int subgroup_size(bool a_sq, bool b_sq, bool ab_sq) {
  if (a_sq && b_sq) return 1;
  if (!a_sq && !b_sq && !ab_sq) return 4;
  return 2;
}

PlaceAnalysis analyze(const Tower& t, const Place& pl) {
  PlaceAnalysis out;
  out.label = pl.label;
  const Rational n(t.spec.n());

  if (pl.kind != PlaceKind::finite) {
    out.archimedean = true;
    out.completion = pl.kind == PlaceKind::real ? "R" : "C";
    if (pl.kind == PlaceKind::real && n < 0) out.deg_N = out.deg_M = 2;
    return out;
  }

  const LocalField& kv = pl.field;
  out.completion = kv.describe();
  auto sq = [&](const KElement& e) { return kv.is_square(localize(t, pl, e)); };
  const bool n_sq = sq({n, 0});
  out.deg_N = n_sq ? 1 : 2;

  if (t.gen != Generator::theta_over_F) {
    const KElement gen = t.gen == Generator::two ? KElement{2, 0} : t.theta;
    const bool g_sq = sq(gen);
    out.deg_E = g_sq ? 1 : 2;
    out.deg_M = subgroup_size(g_sq, n_sq, sq(times(gen, n)));
    out.noncyclic = out.deg_M == 4;
    out.full_degree = out.noncyclic;
    return out;
  }

  const bool two_sq = kv.is_square(LocalElement(2));
  int over_F = 1;
  bool theta_sq = false;
  if (two_sq) {
    LocalElement theta;
    if (kv.is_base() || is_padic_square(2, pl.p)) {
      theta = LocalElement(2 + padic_sqrt(2, pl.p));
    } else {
      const BigInt& d = t.spec.base.d;
      theta = LocalElement(2, padic_sqrt(Rational(2 * d), pl.p) / Rational(d));
    }
    theta_sq = kv.is_square(theta);
    over_F = subgroup_size(theta_sq, n_sq, kv.is_square(kv.mul(theta, LocalElement(n))));
  } else if (kv.is_base()) {
    const LocalField fp = LocalField::quadratic(pl.p, 2);
    theta_sq = fp.is_square(LocalElement(2, 1));
    over_F = subgroup_size(theta_sq, fp.is_square(LocalElement(n)), fp.is_square(LocalElement(2 * n, n)));
  } else if (pl.p != 2) {
    theta_sq = false;
    over_F = kv.valuation(LocalElement(n)) % 2 != 0 ? 4 : 2;
  } else {
    throw UnsupportedError("place " + pl.label + ": K(sqrt 2) has local degree 4 over Q_2");
  }
  const int f2 = two_sq ? 1 : 2;
  out.deg_E = f2 * (theta_sq ? 1 : 2);
  out.deg_M = f2 * over_F;
  out.noncyclic = over_F == 4;
  out.full_degree = out.noncyclic && f2 == 2;
  return out;
}

const Place& find_place(const std::vector<Place>& places, const std::string& label) {
  for (const Place& p : places)
    if (p.label == label) return p;
  throw InputError("unknown place '" + label + "'");
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

BigInt parse_integer(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  BigInt v;
  if (t.empty() || v.set_str(t, 10) != 0) throw InputError("invalid " + what + " '" + text + "'");
  return v;
}

}  // namespace

BaseField BaseField::rationals() { return {}; }

BaseField BaseField::quadratic(const BigInt& d) {
  if (d == 0 || d == 1) throw InputError("d must differ from 0 and 1");
  if (!squarefree(d)) throw InputError("d must be squarefree, got " + d.get_str());
  BaseField b;
  b.kind = Kind::quadratic;
  b.d = d;
  return b;
}

BaseField BaseField::padic(const BigInt& p) {
  if (!is_prime(p)) throw InputError("p must be prime, got " + p.get_str());
  BaseField b;
  b.kind = Kind::padic;
  b.p = p;
  return b;
}

BaseField BaseField::parse(const std::string& text) {
  std::string t = trim(text);
  if (t == "Q") return rationals();
  if (t.rfind("Qp:", 0) == 0) return padic(parse_integer(t.substr(3), "prime"));
  if (t.rfind("Q(", 0) == 0 && t.back() == ')') {
    std::string inner = trim(t.substr(2, t.size() - 3));
    if (inner.rfind("sqrt", 0) == 0) {
      inner = trim(inner.substr(4));
      if (!inner.empty() && inner.front() == '(' && inner.back() == ')') inner = inner.substr(1, inner.size() - 2);
      return quadratic(parse_integer(inner, "discriminant"));
    }
  }
  throw InputError("unrecognized base field '" + text + "' (expected Q, Q(sqrt D) or Qp:P)");
}

std::string BaseField::to_string() const {
  switch (kind) {
    case Kind::rational:
      return "Q";
    case Kind::quadratic:
      return "Q(sqrt " + d.get_str() + ")";
    case Kind::padic:
      return "Qp:" + p.get_str();
  }
  return "";
}

std::string FieldTowerSpec::to_string() const {
  std::ostringstream os;
  os << base.to_string() << ", s=" << s;
  if (twisted())
    os << ", twisted a=" << *a;
  else
    os << ", constant";
  return os.str();
}

TowerInfo tower_info(const FieldTowerSpec& tower) { return make_tower(tower).info; }

std::vector<std::string> relevant_places(const FieldTowerSpec& tower) {
  const Tower t = make_tower(tower);
  if (t.info.degenerate) throw InputError("degenerate tower (" + t.info.degenerate_reason + ")");
  std::vector<std::string> out;
  for (const Place& p : all_relevant(t)) out.push_back(p.label);
  return out;
}

PlaceAnalysis decomposition_type(const FieldTowerSpec& tower, const std::string& place) {
  const Tower t = make_tower(tower);
  if (t.info.degenerate) throw InputError("degenerate tower (" + t.info.degenerate_reason + ")");
  return analyze(t, find_place(all_relevant(t), place));
}

PlaceSets compute_S_Sf(const FieldTowerSpec& tower) {
  const Tower t = make_tower(tower);
  PlaceSets out;
  if (t.info.degenerate) return out;
  for (const Place& p : all_relevant(t)) {
    PlaceAnalysis a = analyze(t, p);
    if (a.noncyclic) out.S.push_back(a.label);
    if (a.full_degree) out.Sf.push_back(a.label);
    out.analyses.push_back(std::move(a));
  }
  return out;
}

AuxiliaryPrime find_auxiliary_prime(const FieldTowerSpec& tower, unsigned long bound) {
  const Tower t = make_tower(tower);
  if (t.info.degenerate) throw InputError("degenerate tower has no auxiliary prime");
  if (tower.base.is_local()) throw InputError("auxiliary primes need a number field base");
  const int s0 = static_cast<int>(t.info.s0);
  BigInt avoid = tower.twisted() ? BigInt(abs(*tower.a)) : BigInt(1);
  if (tower.base.kind == BaseField::Kind::quadratic) avoid *= abs(tower.base.d);
  for (BigInt q = 3; q <= bound; mpz_nextprime(q.get_mpz_t(), q.get_mpz_t())) {
    if (mpz_divisible_p(avoid.get_mpz_t(), q.get_mpz_t())) continue;
    for (const Place& pl : places_over(tower, q)) {
      PlaceAnalysis a = analyze(t, pl);
      if (a.deg_E == s0 && a.deg_M == s0) return {q, std::move(a)};
    }
  }
  throw Error("no auxiliary prime below " + std::to_string(bound));
}

}  // namespace flasque
