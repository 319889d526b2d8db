#pragma once

// Base fields Q, Q(sqrt d) and Q_p, the towers K <= E = K(eta_s) <= M over
// them, and the local behaviour of M/K at the places that can matter.

#include <optional>
#include <string>
#include <vector>

#include "flasque/local_field.hpp"

namespace flasque {

struct BaseField {
  enum class Kind { rational, quadratic, padic };
  Kind kind = Kind::rational;
  BigInt d = 0;  // quadratic only: squarefree, not 0 or 1
  BigInt p = 0;  // padic only: prime

  static BaseField rationals();
  static BaseField quadratic(const BigInt& d);
  static BaseField padic(const BigInt& p);
  // "Q", "Q(sqrt D)", "Q(sqrt(D))", "Qp:P"
  static BaseField parse(const std::string& text);

  bool is_local() const noexcept { return kind == Kind::padic; }
  std::string to_string() const;
  bool operator==(const BaseField&) const = default;
};

struct FieldTowerSpec {
  BaseField base;
  int s = 3;
  std::optional<BigInt> a;  // set for the twisted variant

  bool twisted() const noexcept { return a.has_value(); }
  int epsilon() const noexcept { return twisted() ? -1 : 1; }
  // N = K(sqrt n)
  BigInt n() const { return twisted() ? BigInt(-*a) : BigInt(-1); }
  std::string to_string() const;
  bool operator==(const FieldTowerSpec&) const = default;
};

struct PlaceAnalysis {
  std::string label;
  bool archimedean = false;
  std::string completion;
  int deg_E = 1;
  int deg_N = 1;
  int deg_M = 1;
  bool noncyclic = false;
  bool full_degree = false;
};

struct TowerInfo {
  std::size_t s0 = 1;
  // Square class generating E over K when s0 = 2 ("2" or "2+sqrt2"), or the
  // element generating E over F = K(sqrt 2) when s0 = 4.
  std::string generator;
  bool degenerate = false;
  std::string degenerate_reason;
  std::size_t global_degree() const noexcept { return degenerate ? s0 : 2 * s0; }
};

// Throws InputError for s < 3 or a = 0, UnsupportedError for s >= 5.
TowerInfo tower_info(const FieldTowerSpec& tower);

// Throws InputError on a degenerate tower.
std::vector<std::string> relevant_places(const FieldTowerSpec& tower);
PlaceAnalysis decomposition_type(const FieldTowerSpec& tower, const std::string& place);

struct PlaceSets {
  std::vector<std::string> S;
  std::vector<std::string> Sf;
  std::vector<PlaceAnalysis> analyses;
};
PlaceSets compute_S_Sf(const FieldTowerSpec& tower);

struct AuxiliaryPrime {
  BigInt q;
  PlaceAnalysis place;
};
inline constexpr unsigned long kAuxiliarySearchBound = 1000000;
AuxiliaryPrime find_auxiliary_prime(const FieldTowerSpec& tower, unsigned long bound = kAuxiliarySearchBound);

}  // namespace flasque
