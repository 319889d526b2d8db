#pragma once

// Brauer classes of M/K as vectors of local invariants, the map I into
// (1/2 Z / Z)^S, class counts and explicit coset representatives.

#include <map>
#include <string>
#include <vector>

#include "flasque/arith.hpp"

namespace flasque {

// Rational residue in [0, 1).
Rational reduce_mod_one(const Rational& x);

class LocalInvariantVector {
 public:
  LocalInvariantVector() = default;
  explicit LocalInvariantVector(const std::map<std::string, Rational>& entries);

  // Zero entries are dropped; everything else is reduced into [0, 1).
  void set(const std::string& place, const Rational& value);
  Rational at(const std::string& place) const;
  const std::map<std::string, Rational>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }

  LocalInvariantVector operator+(const LocalInvariantVector& other) const;
  LocalInvariantVector operator-() const;
  bool operator==(const LocalInvariantVector&) const = default;
  std::string to_string() const;

 private:
  std::map<std::string, Rational> entries_;
};

// Local degrees [M_v : K_v] and place types needed to validate vectors.
class BrauerContext {
 public:
  explicit BrauerContext(const FieldTowerSpec& tower);

  const FieldTowerSpec& tower() const noexcept { return tower_; }
  const TowerInfo& info() const noexcept { return info_; }
  const PlaceSets& places() const noexcept { return places_; }
  // Local degree at a labelled place; places outside the relevant set are
  // analyzed on demand (auxiliary primes) or treated as cyclic of degree 1.
  int local_degree(const std::string& place) const;
  bool is_real(const std::string& place) const;
  bool is_complex(const std::string& place) const;
  void register_place(const PlaceAnalysis& a);

 private:
  FieldTowerSpec tower_;
  TowerInfo info_;
  PlaceSets places_;
  std::map<std::string, PlaceAnalysis> known_;
};

// Returns the list of violations; empty means valid.
std::vector<std::string> violations(const BrauerContext& ctx, const LocalInvariantVector& v);
// Throws InputError listing every violation.
const LocalInvariantVector& validate(const BrauerContext& ctx, const LocalInvariantVector& v);

// Entry at p in S is ([M_p : K_p] / 2) * inv_p(v) mod 1.
std::vector<Rational> invariant_map_I(const BrauerContext& ctx, const LocalInvariantVector& v,
                                      const std::vector<std::string>& S);

struct RClassReport {
  FieldTowerSpec tower;
  TowerInfo info;
  std::vector<std::string> S;
  std::vector<std::string> Sf;
  std::vector<PlaceAnalysis> analyses;
  BigInt r = 1;
  std::vector<LocalInvariantVector> representatives;
  std::vector<std::string> trace;
};

// Count and representatives. Representatives are built only when requested,
// since they need the auxiliary prime.
RClassReport r_count(const FieldTowerSpec& tower, bool with_representatives = true);
std::vector<LocalInvariantVector> quotient_representatives(const FieldTowerSpec& tower);

// Polynomials as coefficient lists, constant term first, trailing zeros
// trimmed (the zero polynomial is empty).
using Polynomial = std::vector<Rational>;

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Rational poly_eval(const Polynomial& a, const Rational& t);
// Quotient and remainder of a by a nonzero b.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);
int poly_degree(const Polynomial& a);
std::string poly_to_string(const Polynomial& a);

struct Connector {
  Polynomial q;
  Polynomial l;
  Polynomial p;
};
// Throws InputError when a or b is zero.
Connector dihedral_connector(const Rational& a, const Rational& b);
// Names of the connector identities that fail (empty when all hold).
std::vector<std::string> connector_failures(const Connector& c, const Rational& a, const Rational& b);

}  // namespace flasque
