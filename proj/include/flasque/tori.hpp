#pragma once

// The explicit lattice family over G = C2 x C_{s0} = <sigma, tau>: the
// permutation lattice XP = Z[G], the flasque lattice XS with basis
// a, tau*a, ..., b, tau*b, ..., c, its permutation cover XQ, the kernel XT,
// and the quotient lattice XT' carrying the map into XP.

#include <cstddef>
#include <string>
#include <vector>

#include "flasque/gmod.hpp"
#include "flasque/tate.hpp"

namespace flasque {

inline constexpr int kMaxFamilyS = 5;

struct TorusFamilyParams {
  int s = 3;
  std::size_t s0 = 2;
  long m = 3;
  int epsilon = 1;
};

// Smallest m > 1 of multiplicative order s0 modulo 2^s with (m^s0 - 1) / 2^s odd.
long choose_m(int s, std::size_t s0);
// Throws InputError describing the first violated condition.
void validate_params(const TorusFamilyParams& p);
TorusFamilyParams make_params(int s, std::size_t s0, int epsilon = 1);

FiniteGroup family_group(std::size_t s0);
GLattice build_XS(std::size_t s0);
GLattice build_XQ(std::size_t s0);
// XQ -> XS: first Z[G] onto the orbit of b, the middle Z onto c, the last
// Z[G] onto the orbit of a.
IntMatrix restriction_map(const GLattice& xs, const GLattice& xq);

struct FamilyResolution {
  GLattice XS;
  GLattice XQ;
  GLattice XT;
  IntMatrix incl;  // XT -> XQ
  IntMatrix quot;  // XQ -> XS
};
// Uses the given XS (which must have the family's basis layout).
FamilyResolution build_resolution(const GLattice& xs);
GLattice build_XT(std::size_t s0);

struct Pi0Dual {
  GLattice XP;
  GLattice XTprime;
  IntMatrix map;  // XTprime -> XP
  FiniteAbelianGroup cokernel;
};
Pi0Dual build_pi0_dual(const TorusFamilyParams& p);

// Basis roles for XS: the a- and b-blocks are replicated, c is fixed.
BasisRoles xs_roles(std::size_t s0);

// The family lattice for k*s0 viewed over the index-k subgroup <sigma, tau^k>,
// presented over family_group(s0). Each tau-orbit of a and b splits into k
// orbits and sigma links consecutive ones. k = 1 gives build_XS(s0).
GLattice build_XS_induced(std::size_t s0, std::size_t k, bool drop_c = false);

struct Section3Item {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Section3Report {
  TorusFamilyParams params;
  std::vector<Section3Item> items;
  bool passed() const;
};

// drop_c runs every check on the mutated lattice with sigma*b = -b.
Section3Report verify_section3(const TorusFamilyParams& p, bool drop_c = false,
                               Execution mode = Execution::parallel);

// XS with sigma*b = -b (the c term dropped).
GLattice build_XS_without_c(std::size_t s0);

}  // namespace flasque
