#include "flasque/local_field.hpp"

#include <sstream>

#include "flasque/error.hpp"

namespace flasque {
namespace {

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw InputError("value is not invertible");
  return r;
}

// num * den^{-1} mod m for a p-integral rational.
BigInt residue(const Rational& x, const BigInt& m) {
  return mod_pos(BigInt(x.get_num()) * inverse_mod(BigInt(x.get_den()), m), m);
}

int legendre(const BigInt& a, const BigInt& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

BigInt tonelli_shanks(const BigInt& a, const BigInt& p) {
  BigInt n = mod_pos(a, p);
  if (n == 0) return 0;
  BigInt q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  BigInt z = 2;
  while (legendre(z, p) != -1) ++z;
  BigInt c, r, t, tmp;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  BigInt e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    tmp = t;
    while (tmp != 1) {
      tmp = mod_pos(tmp * tmp, p);
      ++i;
    }
    BigInt b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod_pos(b * b, p);
    r = mod_pos(r * b, p);
    c = mod_pos(b * b, p);
    t = mod_pos(t * c, p);
    m = i;
  }
  return r;
}

Rational unit_part(const Rational& x, const BigInt& p, long v) {
  Rational u = x;
  if (v > 0) u /= Rational(pow_big(p, static_cast<unsigned long>(v)));
  if (v < 0) u *= Rational(pow_big(p, static_cast<unsigned long>(-v)));
  return u;
}

}  // namespace

bool is_prime(const BigInt& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

long padic_valuation(const BigInt& x, const BigInt& p) {
  if (x == 0) throw InputError("valuation of zero");
  BigInt t = abs(x);
  long v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    t /= p;
    ++v;
  }
  return v;
}

long padic_valuation(const Rational& x, const BigInt& p) {
  if (x == 0) throw InputError("valuation of zero");
  return padic_valuation(BigInt(x.get_num()), p) - padic_valuation(BigInt(x.get_den()), p);
}

bool is_padic_square(const Rational& x, const BigInt& p) {
  if (x == 0) return true;
  const long v = padic_valuation(x, p);
  if (v % 2 != 0) return false;
  const Rational u = unit_part(x, p, v);
  if (p == 2) return residue(u, 8) == 1;
  return legendre(residue(u, p), p) == 1;
}

Rational padic_sqrt(const Rational& x, const BigInt& p, unsigned precision) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (x == 0) return 0;
  if (!is_padic_square(x, p)) throw InputError("value is not a square in Q_p");
  const long v = padic_valuation(x, p);
  const Rational u = unit_part(x, p, v);
  const BigInt modulus = pow_big(p, precision);
  const BigInt w = residue(u, modulus);
  BigInt r;
  if (p == 2) {
    r = 1;
    for (unsigned k = 3; k + 1 <= precision; ++k) {
      BigInt diff = r * r - w;
      if (!mpz_divisible_2exp_p(diff.get_mpz_t(), k + 1)) r += pow_big(2, k - 1);
    }
  } else {
    r = tonelli_shanks(w, p);
    for (int iter = 0; iter < 64; ++iter) {
      BigInt diff = mod_pos(r * r - w, modulus);
      if (diff == 0) break;
      r = mod_pos(r - diff * inverse_mod(2 * r, modulus), modulus);
    }
  }
  Rational out(r);
  if (v >= 0)
    out *= Rational(pow_big(p, static_cast<unsigned long>(v / 2)));
  else
    out /= Rational(pow_big(p, static_cast<unsigned long>(-v / 2)));
  return out;
}

LocalField LocalField::rational(const BigInt& p) {
  if (!is_prime(p)) throw InputError("p must be prime, got " + p.get_str());
  LocalField f;
  f.p_ = p;
  return f;
}

LocalField LocalField::quadratic(const BigInt& p, const BigInt& u) {
  if (!is_prime(p)) throw InputError("p must be prime, got " + p.get_str());
  if (u == 0) throw InputError("u must be nonzero");
  const long vu = padic_valuation(u, p);
  if (vu > 1) throw InputError("u must have p-adic valuation 0 or 1");
  if (is_padic_square(Rational(u), p)) throw InputError(u.get_str() + " is a square in Q_" + p.get_str());
  LocalField f;
  f.p_ = p;
  f.u_ = u;
  if (vu == 1 || (p == 2 && mod_pos(u, 4) == 3)) {
    f.e_ = 2;
    f.f_ = 1;
  } else {
    f.e_ = 1;
    f.f_ = 2;
  }
  return f;
}

std::string LocalField::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (!is_base()) os << "(sqrt " << u_ << ") " << (e_ == 2 ? "ramified" : "unramified");
  return os.str();
}

LocalElement LocalField::mul(const LocalElement& a, const LocalElement& b) const {
  return {a.x * b.x + Rational(u_) * a.y * b.y, a.x * b.y + a.y * b.x};
}

Rational LocalField::norm(const LocalElement& a) const {
  if (is_base()) return a.x;
  return a.x * a.x - Rational(u_) * a.y * a.y;
}

LocalElement LocalField::inverse(const LocalElement& a) const {
  if (a.is_zero()) throw InputError("inverse of zero");
  if (is_base()) return {1 / a.x, 0};
  const Rational n = norm(a);
  return {a.x / n, -a.y / n};
}

long LocalField::valuation(const LocalElement& a) const {
  if (a.is_zero()) throw InputError("valuation of zero");
  if (is_base()) {
    if (a.y != 0) throw InputError("element has an irrational part in Q_p");
    return padic_valuation(a.x, p_);
  }
  return e_ * padic_valuation(norm(a), p_) / 2;
}

LocalElement LocalField::uniformizer() const {
  if (is_base() || e_ == 1) return {Rational(p_), 0};
  if (mpz_divisible_p(u_.get_mpz_t(), p_.get_mpz_t())) return {0, 1};
  return {1, 1};
}

bool LocalField::unit_is_square(const LocalElement& unit) const {
  if (p_ != 2) {
    if (e_ == 1) return legendre(residue(norm(unit), p_), p_) == 1;
    return legendre(residue(unit.x, p_), p_) == 1;
  }
  const bool half_basis = mod_pos(u_, 4) == 1;
  const long target = 2 * e_ + 1;
  for (int g0 = 0; g0 < 8; ++g0)
    for (int g1 = 0; g1 < 8; ++g1) {
      LocalElement g = half_basis ? LocalElement(Rational(g0) + Rational(g1, 2), Rational(g1, 2))
                                  : LocalElement(Rational(g0), Rational(g1));
      LocalElement sq = mul(g, g);
      LocalElement diff(unit.x - sq.x, unit.y - sq.y);
      if (diff.is_zero() || valuation(diff) >= target) return true;
    }
  return false;
}

bool LocalField::is_square(const LocalElement& a) const {
  if (a.is_zero()) return true;
  if (is_base()) {
    if (a.y != 0) throw InputError("element has an irrational part in Q_p");
    return is_padic_square(a.x, p_);
  }
  const long k = valuation(a);
  if (k % 2 != 0) return false;
  LocalElement shift(1, 0);
  const LocalElement pi = uniformizer();
  for (long i = 0; i < k; ++i) shift = mul(shift, pi);
  for (long i = 0; i > k; --i) shift = mul(shift, inverse(pi));
  return unit_is_square(mul(a, inverse(shift)));
}

}  // namespace flasque
