#include "flasque/brauer.hpp"

#include <algorithm>
#include <sstream>

#include "flasque/error.hpp"

namespace flasque {

Rational reduce_mod_one(const Rational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational out = x - Rational(fl);
  out.canonicalize();
  return out;
}

LocalInvariantVector::LocalInvariantVector(const std::map<std::string, Rational>& entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

void LocalInvariantVector::set(const std::string& place, const Rational& value) {
  Rational r = reduce_mod_one(value);
  if (r == 0)
    entries_.erase(place);
  else
    entries_[place] = r;
}

Rational LocalInvariantVector::at(const std::string& place) const {
  auto it = entries_.find(place);
  return it == entries_.end() ? Rational(0) : it->second;
}

LocalInvariantVector LocalInvariantVector::operator+(const LocalInvariantVector& other) const {
  LocalInvariantVector out = *this;
  for (const auto& [k, v] : other.entries_) out.set(k, out.at(k) + v);
  return out;
}

LocalInvariantVector LocalInvariantVector::operator-() const {
  LocalInvariantVector out;
  for (const auto& [k, v] : entries_) out.set(k, -v);
  return out;
}

std::string LocalInvariantVector::to_string() const {
  if (entries_.empty()) return "0";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : entries_) {
    os << (first ? "" : ", ") << k << ": " << v.get_str();
    first = false;
  }
  os << "}";
  return os.str();
}

BrauerContext::BrauerContext(const FieldTowerSpec& tower)
    : tower_(tower), info_(tower_info(tower)), places_(compute_S_Sf(tower)) {
  for (const auto& a : places_.analyses) known_[a.label] = a;
}

void BrauerContext::register_place(const PlaceAnalysis& a) { known_[a.label] = a; }

int BrauerContext::local_degree(const std::string& place) const {
  auto it = known_.find(place);
  if (it == known_.end()) throw InputError("place '" + place + "' is not known for " + tower_.to_string());
  return it->second.deg_M;
}

bool BrauerContext::is_real(const std::string& place) const {
  auto it = known_.find(place);
  return it != known_.end() && it->second.completion == "R";
}

bool BrauerContext::is_complex(const std::string& place) const {
  auto it = known_.find(place);
  return it != known_.end() && it->second.completion == "C";
}

std::vector<std::string> violations(const BrauerContext& ctx, const LocalInvariantVector& v) {
  std::vector<std::string> out;
  Rational total = 0;
  for (const auto& [place, inv] : v.entries()) {
    total += inv;
    int deg = 0;
    try {
      deg = ctx.local_degree(place);
    } catch (const InputError& e) {
      out.push_back(e.what());
      continue;
    }
    if (reduce_mod_one(inv * deg) != 0)
      out.push_back(place + ": invariant " + inv.get_str() + " is not killed by local degree " + std::to_string(deg));
    if (ctx.is_real(place) && inv != Rational(1, 2))
      out.push_back(place + ": real place invariant must be 0 or 1/2");
    if (ctx.is_complex(place)) out.push_back(place + ": complex place invariant must be 0");
  }
  if (!ctx.tower().base.is_local() && reduce_mod_one(total) != 0)
    out.push_back("invariants sum to " + reduce_mod_one(total).get_str() + ", not 0");
  return out;
}

const LocalInvariantVector& validate(const BrauerContext& ctx, const LocalInvariantVector& v) {
  auto bad = violations(ctx, v);
  if (bad.empty()) return v;
  std::string msg = "invalid invariant vector " + v.to_string() + ":";
  for (const auto& b : bad) msg += "\n  " + b;
  throw InputError(msg);
}

std::vector<Rational> invariant_map_I(const BrauerContext& ctx, const LocalInvariantVector& v,
                                      const std::vector<std::string>& S) {
  std::vector<Rational> out;
  out.reserve(S.size());
  for (const auto& place : S) out.push_back(reduce_mod_one(Rational(ctx.local_degree(place), 2) * v.at(place)));
  return out;
}

namespace {

BigInt two_pow(std::size_t k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

std::vector<LocalInvariantVector> representatives_for(BrauerContext& ctx, std::vector<std::string>& trace) {
  const auto& S = ctx.places().S;
  const auto& Sf = ctx.places().Sf;
  std::vector<LocalInvariantVector> gens;

  if (ctx.info().degenerate || S.empty()) return {LocalInvariantVector{}};

  if (ctx.tower().base.is_local()) {
    LocalInvariantVector g;
    g.set(S.front(), Rational(1, ctx.local_degree(S.front())));
    gens.push_back(g);
  } else {
    std::string aux_label;
    std::vector<std::string> outside;
    for (const auto& r : S)
      if (std::find(Sf.begin(), Sf.end(), r) == Sf.end()) outside.push_back(r);
    if (!outside.empty()) {
      AuxiliaryPrime aux = find_auxiliary_prime(ctx.tower());
      ctx.register_place(aux.place);
      aux_label = aux.place.label;
      trace.push_back("auxiliary prime q = " + aux.q.get_str() + " at place " + aux_label);
    }
    for (const auto& r : outside) {
      LocalInvariantVector g;
      const Rational step(1, ctx.local_degree(r));
      g.set(r, step);
      g.set(aux_label, -step);
      gens.push_back(g);
    }
    if (!Sf.empty()) {
      const std::string& anchor = Sf.front();
      trace.push_back("anchor place " + anchor);
      const Rational step(1, static_cast<long>(ctx.info().global_degree()));
      for (std::size_t i = 1; i < Sf.size(); ++i) {
        LocalInvariantVector g;
        g.set(Sf[i], step);
        g.set(anchor, -step);
        gens.push_back(g);
      }
    }
  }

  std::vector<LocalInvariantVector> out;
  const std::size_t count = std::size_t{1} << gens.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    LocalInvariantVector v;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (mask >> i & 1) v = v + gens[i];
    validate(ctx, v);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

RClassReport r_count(const FieldTowerSpec& tower, bool with_representatives) {
  BrauerContext ctx(tower);
  RClassReport rep;
  rep.tower = tower;
  rep.info = ctx.info();
  rep.S = ctx.places().S;
  rep.Sf = ctx.places().Sf;
  rep.analyses = ctx.places().analyses;
  if (!rep.info.degenerate)
    rep.trace.push_back("s0 = " + std::to_string(rep.info.s0) + ", [M:K] = " + std::to_string(rep.info.global_degree()));

  if (rep.info.degenerate) {
    rep.trace.push_back("degenerate tower (" + rep.info.degenerate_reason + "): r = 1");
    rep.r = 1;
  } else if (rep.S.empty()) {
    rep.trace.push_back("S is empty: r = 1");
    rep.r = 1;
  } else if (tower.base.is_local()) {
    rep.r = two_pow(rep.S.size());
    rep.trace.push_back("local base, no sum constraint: r = 2^|S| = " + rep.r.get_str());
  } else if (!rep.Sf.empty()) {
    rep.r = two_pow(rep.S.size() - 1);
    rep.trace.push_back("Sf nonempty: r = 2^(|S|-1) = " + rep.r.get_str());
  } else {
    rep.r = two_pow(rep.S.size());
    rep.trace.push_back("Sf empty: r = 2^|S| = " + rep.r.get_str() +
                        " (differs from the 2^(m-1) count, which assumes Sf nonempty)");
  }

  if (with_representatives) {
    rep.representatives = representatives_for(ctx, rep.trace);
    if (BigInt(static_cast<unsigned long>(rep.representatives.size())) != rep.r)
      throw Error("representative count " + std::to_string(rep.representatives.size()) + " differs from r = " +
                  rep.r.get_str());
  }
  return rep;
}

std::vector<LocalInvariantVector> quotient_representatives(const FieldTowerSpec& tower) {
  return r_count(tower, true).representatives;
}

namespace {

void trim_poly(Polynomial& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim_poly(out);
  return out;
}

Rational poly_eval(const Polynomial& a, const Rational& t) {
  Rational acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
  Polynomial den = b;
  trim_poly(den);
  if (den.empty()) throw InputError("polynomial division by zero");
  Polynomial rem = a;
  trim_poly(rem);
  if (rem.size() < den.size()) return {{}, rem};
  Polynomial quo(rem.size() - den.size() + 1, Rational(0));
  while (!rem.empty() && rem.size() >= den.size()) {
    const std::size_t shift = rem.size() - den.size();
    const Rational c = rem.back() / den.back();
    quo[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) rem[shift + i] -= c * den[i];
    rem.pop_back();
    trim_poly(rem);
  }
  trim_poly(quo);
  return {quo, rem};
}

int poly_degree(const Polynomial& a) {
  Polynomial t = a;
  trim_poly(t);
  return static_cast<int>(t.size()) - 1;
}

std::string poly_to_string(const Polynomial& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Rational c = a[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    if (first && c < 0 && i > 0 && c == -1) {
      os << "-";
      c = 1;
    }
    if (i == 0)
      os << c.get_str();
    else if (c != 1)
      os << c.get_str() << "*";
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

Connector dihedral_connector(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw InputError("connector parameters must be nonzero");
  Connector c;
  c.q = {Rational(1), b - 1};
  c.l = {Rational(-1), a / b + 1};
  trim_poly(c.q);
  trim_poly(c.l);
  c.p = poly_mul(c.q, c.l);
  return c;
}

std::vector<std::string> connector_failures(const Connector& c, const Rational& a, const Rational& b) {
  std::vector<std::string> bad;
  if (poly_eval(c.q, 0) != 1) bad.push_back("q(0) = 1");
  if (poly_eval(c.q, 1) != b) bad.push_back("q(1) = b");
  if (poly_eval(c.p, 0) != -1) bad.push_back("p(0) = -1");
  if (poly_eval(c.p, 1) != a) bad.push_back("p(1) = a");
  if (c.q.empty() || !poly_divmod(c.p, c.q).second.empty()) bad.push_back("q divides p");
  if (poly_degree(c.p) > 2) bad.push_back("deg p <= 2");
  if (poly_degree(c.q) > 1) bad.push_back("deg q <= 1");
  return bad;
}

}  // namespace flasque
