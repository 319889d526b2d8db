#pragma once

// Finite groups given by multiplication tables, their subgroups, and integer
// representations (G-lattices) together with the usual constructions on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flasque/exactlin.hpp"

namespace flasque {

struct GroupGenerator {
  std::string name;
  std::size_t index = 0;
  bool operator==(const GroupGenerator&) const = default;
};

class FiniteGroup {
 public:
  static constexpr std::size_t kMaxOrder = 64;

  FiniteGroup() = default;
  // Validates the table (closure, associativity, identity, inverses) and that
  // the generators generate.
  FiniteGroup(std::vector<std::vector<std::size_t>> table, std::vector<GroupGenerator> generators);

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t element_order(std::size_t a) const;
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
  const std::vector<GroupGenerator>& generators() const noexcept { return generators_; }
  std::optional<std::size_t> generator_position(const std::string& name) const;

  // Shortest word for each element as positions into generators(); the word
  // [s1, s2, ..., sk] denotes s1 * s2 * ... * sk.
  const std::vector<std::vector<std::size_t>>& words() const noexcept { return words_; }
  // "e", "tau", "tau^2", "sigma*tau".
  std::string element_name(std::size_t g) const;
  // Inverse of element_name; accepts the same syntax.
  std::size_t parse_element(const std::string& text) const;

  bool operator==(const FiniteGroup& rhs) const {
    return table_ == rhs.table_ && generators_ == rhs.generators_;
  }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<GroupGenerator> generators_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::size_t>> words_;
  std::size_t identity_ = 0;
};

// Direct product of cyclic groups of the given orders. Element indices are
// mixed-radix with the first factor most significant.
FiniteGroup group_from_abelian_invariants(const std::vector<std::size_t>& factors,
                                          const std::vector<std::string>& names = {});
FiniteGroup cyclic_group(std::size_t n, const std::string& name = "g");
// Group generated by permutations of {0, ..., n-1}; elements are ordered
// lexicographically, so the identity comes first.
FiniteGroup group_from_permutations(const std::vector<std::vector<std::size_t>>& perms,
                                    const std::vector<std::string>& names);

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated_by(const FiniteGroup& g, const std::vector<std::size_t>& gens);
  // Throws InputError unless the set is closed under the group law.
  static Subgroup from_elements(const FiniteGroup& g, std::vector<std::size_t> elements);
  static Subgroup whole(const FiniteGroup& g);
  static Subgroup trivial(const FiniteGroup& g);

  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(std::size_t g) const noexcept { return (mask_ >> g) & 1U; }
  const std::vector<std::size_t>& elements() const noexcept { return elements_; }
  // A small generating set, chosen greedily from elements of largest order.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }
  std::uint64_t mask() const noexcept { return mask_; }
  bool is_cyclic(const FiniteGroup& g) const;
  // "1", "<tau>", "<sigma, tau^2>".
  std::string name(const FiniteGroup& g) const;

  bool operator==(const Subgroup& rhs) const { return mask_ == rhs.mask_; }

 private:
  std::vector<std::size_t> elements_;
  std::vector<std::size_t> generators_;
  std::uint64_t mask_ = 0;
};

// Every subgroup, ordered by size and then by sorted element list.
std::vector<Subgroup> subgroups(const FiniteGroup& g);

// Resolves "all", "1"/"trivial", "G"/"whole", or a comma-separated list of
// element names generating the subgroup.
Subgroup parse_subgroup(const FiniteGroup& g, const std::string& selector);

class GLattice {
 public:
  GLattice() = default;
  // One matrix per group generator, in the group's generator order. Verifies
  // that the matrices define a representation of the group.
  GLattice(FiniteGroup group, std::size_t rank, std::vector<IntMatrix> generator_action,
           std::vector<std::string> labels = {});

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<IntMatrix>& generator_actions() const noexcept { return gen_action_; }
  const IntMatrix& generator_action(std::size_t i) const { return gen_action_[i]; }
  const IntMatrix& action(std::size_t element) const { return element_action_[element]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(std::size_t i) const;

  bool operator==(const GLattice& rhs) const {
    return group_ == rhs.group_ && rank_ == rhs.rank_ && gen_action_ == rhs.gen_action_ &&
           labels_ == rhs.labels_;
  }

 private:
  FiniteGroup group_;
  std::size_t rank_ = 0;
  std::vector<IntMatrix> gen_action_;
  std::vector<IntMatrix> element_action_;
  std::vector<std::string> labels_;
};

// An equivariant homomorphism of lattices over the same group.
struct GLatticeMap {
  GLattice source;
  GLattice target;
  IntMatrix matrix;  // target.rank() x source.rank()

  GLatticeMap(GLattice src, GLattice dst, IntMatrix m);
};

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& m);

GLattice trivial_lattice(const FiniteGroup& g, std::size_t rank);
// Rank-one lattice on which generator i acts by signs[i] (each +1 or -1).
GLattice sign_lattice(const FiniteGroup& g, const std::vector<int>& signs);
// Z[G/H]; cosets ordered by their smallest element index.
GLattice permutation_module(const FiniteGroup& g, const Subgroup& h);
GLattice dual(const GLattice& x);
// The lattice viewed over h, which becomes a group in its own right.
GLattice restrict(const GLattice& x, const Subgroup& h);
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h);
IntMatrix invariants_sublattice(const GLattice& x, const Subgroup& h);
GLattice direct_sum(const GLattice& x, const GLattice& y);
// Same group, basis conjugated by a unimodular matrix p (new basis = columns of p).
GLattice change_basis(const GLattice& x, const IntMatrix& p);

struct BasisRoles {
  std::vector<std::size_t> replicated;
  std::vector<std::size_t> fixed;
};
// k copies of the replicated part sharing one copy of the fixed part. The
// fixed part must be a sublattice (no fixed vector may map into replicated
// coordinates).
GLattice ind_copies(const GLattice& x, const BasisRoles& roles, std::size_t k);

// Action on a sublattice given by a basis (columns), which must be stable.
GLattice induced_on_sublattice(const GLattice& x, const IntMatrix& basis,
                               std::vector<std::string> labels = {});

// Finite G-module presented as Z/d_1 + ... + Z/d_k with actions reduced mod d_i.
class FiniteGModule {
 public:
  FiniteGModule(FiniteGroup group, std::vector<BigInt> factors, std::vector<IntMatrix> generator_action);

  const FiniteGroup& group() const noexcept { return group_; }
  const std::vector<BigInt>& factors() const noexcept { return factors_; }
  const IntMatrix& action(std::size_t element) const { return element_action_[element]; }
  std::vector<BigInt> reduce(std::vector<BigInt> v) const;
  BigInt order() const;

 private:
  IntMatrix reduce_matrix(IntMatrix m) const;

  FiniteGroup group_;
  std::vector<BigInt> factors_;
  std::vector<IntMatrix> element_action_;
};

struct QuasitrivialCover {
  GLattice P;
  // factors.size() x P.rank(): image of each permutation basis vector in A.
  IntMatrix projection;
  GLattice XT;
  // P.rank() x XT.rank(): the kernel lattice inside P.
  IntMatrix kernel_basis;
};

QuasitrivialCover quasitrivial_cover(const FiniteGModule& a);

}  // namespace flasque
