#pragma once

// Tate cohomology in degrees -1 and 0, H^1, and the flasque / coflasque
// conditions built on them.

#include <optional>
#include <string>
#include <vector>

#include "flasque/exactlin.hpp"
#include "flasque/gmod.hpp"
#include "flasque/sweep.hpp"

namespace flasque {

IntMatrix norm_matrix(const GLattice& x, const Subgroup& h);

// ker(N_H) / I_H X
FiniteAbelianGroup tate_minus1(const GLattice& x, const Subgroup& h);
// X^H / N_H X
FiniteAbelianGroup tate_0(const GLattice& x, const Subgroup& h);
// Crossed homomorphisms modulo principal ones.
FiniteAbelianGroup h1(const GLattice& x, const Subgroup& h);
// degree in {-1, 0, 1}
FiniteAbelianGroup cohomology(const GLattice& x, const Subgroup& h, int degree);

struct CohomologyReport {
  std::string subgroup;
  std::size_t subgroup_order = 0;
  int degree = 0;
  FiniteAbelianGroup result;
};

std::vector<CohomologyReport> cohomology_sweep(const GLattice& x, const std::vector<Subgroup>& subs, int degree,
                                               Execution mode = Execution::parallel);

struct PredicateReport {
  bool holds = true;
  std::vector<CohomologyReport> per_subgroup;
  // Index into per_subgroup of the first nontrivial group, if any.
  std::optional<std::size_t> witness;
};

// Every subgroup has trivial degree -1 Tate cohomology.
PredicateReport is_flasque(const GLattice& x, Execution mode = Execution::parallel);
// Every subgroup has trivial H^1.
PredicateReport is_coflasque(const GLattice& x, Execution mode = Execution::parallel);

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ResolutionCheck {
  std::vector<CheckItem> items;
  // One entry per subgroup: does (XQ*)^H map onto (XT*)^H?
  std::vector<CheckItem> dual_surjectivity;
  PredicateReport flasque_s;

  bool passed() const;
};

// incl: XT -> XQ (XQ.rank x XT.rank), quot: XQ -> XS (XS.rank x XQ.rank).
ResolutionCheck check_flasque_resolution(const GLattice& xt, const GLattice& xq, const GLattice& xs,
                                         const IntMatrix& incl, const IntMatrix& quot,
                                         Execution mode = Execution::parallel);

struct FlasqueResolution {
  GLattice XT;
  GLattice XQ;
  GLattice XS;
  IntMatrix incl;
  IntMatrix quot;
};

FlasqueResolution construct_flasque_resolution(const GLattice& xt);

bool is_permutation_matrix(const IntMatrix& m);

}  // namespace flasque
