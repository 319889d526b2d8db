#pragma once

// Q_p and its quadratic extensions Q_p(sqrt u), with exact square-class tests.

#include <gmpxx.h>

#include <string>

#include "flasque/exactlin.hpp"

namespace flasque {

using Rational = mpq_class;

bool is_prime(const BigInt& n);

// v_p of a nonzero rational.
long padic_valuation(const Rational& x, const BigInt& p);
long padic_valuation(const BigInt& x, const BigInt& p);

// Whether a nonzero rational is a square in Q_p.
bool is_padic_square(const Rational& x, const BigInt& p);

// An integer c with c^2 = x up to relative precision p^precision. Throws
// InputError when x is not a square in Q_p.
Rational padic_sqrt(const Rational& x, const BigInt& p, unsigned precision = 48);

// x + y * sqrt(u) in the ambient field.
struct LocalElement {
  Rational x;
  Rational y;
  LocalElement() = default;
  LocalElement(Rational x_, Rational y_ = 0) : x(std::move(x_)), y(std::move(y_)) {}
  bool is_zero() const { return x == 0 && y == 0; }
};

class LocalField {
 public:
  static LocalField rational(const BigInt& p);
  // u must satisfy v_p(u) in {0, 1} and must not be a square in Q_p.
  static LocalField quadratic(const BigInt& p, const BigInt& u);

  const BigInt& p() const noexcept { return p_; }
  const BigInt& u() const noexcept { return u_; }
  bool is_base() const noexcept { return u_ == 0; }
  int ramification() const noexcept { return e_; }
  int residue_degree() const noexcept { return f_; }
  int degree() const noexcept { return e_ * f_; }
  std::string describe() const;

  LocalElement mul(const LocalElement& a, const LocalElement& b) const;
  LocalElement inverse(const LocalElement& a) const;
  Rational norm(const LocalElement& a) const;

  // Normalized so that a uniformizer has valuation 1.
  long valuation(const LocalElement& a) const;
  bool is_square(const LocalElement& a) const;

 private:
  bool unit_is_square(const LocalElement& unit) const;
  LocalElement uniformizer() const;

  BigInt p_;
  BigInt u_ = 0;
  int e_ = 1;
  int f_ = 1;
};

}  // namespace flasque
