#pragma once

// Random groups, random lattices and brute-force oracles shared by the tests
// and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "flasque/exactlin.hpp"
#include "flasque/gmod.hpp"

namespace testkit {

using flasque::BigInt;
using flasque::FiniteGroup;
using flasque::GLattice;
using flasque::IntMatrix;
using flasque::Subgroup;

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(v.size()) - 1))];
}

inline FiniteGroup symmetric3() { return flasque::group_from_permutations({{1, 0, 2}, {1, 2, 0}}, {"t", "r"}); }
inline FiniteGroup dihedral4() { return flasque::group_from_permutations({{1, 0, 3, 2}, {1, 2, 3, 0}}, {"f", "r"}); }
inline FiniteGroup quaternion8() {
  // Left regular action of Q8 on {1, i, j, k, -1, -i, -j, -k}.
  return flasque::group_from_permutations({{1, 4, 3, 6, 5, 0, 7, 2}, {2, 7, 4, 1, 6, 3, 0, 5}}, {"i", "j"});
}

// Groups of order <= max_order drawn from a fixed menu.
inline std::vector<FiniteGroup> group_menu(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 2; n <= std::min<std::size_t>(max_order, 16); ++n) out.push_back(flasque::cyclic_group(n));
  auto add = [&](FiniteGroup g) {
    if (g.order() <= max_order) out.push_back(std::move(g));
  };
  add(flasque::group_from_abelian_invariants({2, 2}));
  add(flasque::group_from_abelian_invariants({2, 4}));
  add(flasque::group_from_abelian_invariants({2, 2, 2}));
  add(flasque::group_from_abelian_invariants({2, 8}));
  add(flasque::group_from_abelian_invariants({4, 4}));
  add(flasque::group_from_abelian_invariants({2, 6}));
  add(symmetric3());
  add(dihedral4());
  add(quaternion8());
  return out;
}

// Random unimodular n x n matrix built from elementary operations.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 6) {
  IntMatrix p = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && uniform(rng, 0, 1)) p(0, 0) = -1;
    return p;
  }
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long k = uniform(rng, -2, 2);
    for (std::size_t r = 0; r < n; ++r) p(r, i) += k * p(r, j);
  }
  return p;
}

// Kernel of the augmentation Z[G/H] -> Z.
inline GLattice augmentation_lattice(const FiniteGroup& g, const Subgroup& h) {
  GLattice perm = flasque::permutation_module(g, h);
  IntMatrix sum(1, perm.rank());
  for (std::size_t i = 0; i < perm.rank(); ++i) sum(0, i) = 1;
  IntMatrix ker = flasque::lin::kernel_basis(sum);
  if (ker.cols() == 0) return flasque::trivial_lattice(g, 0);
  return flasque::induced_on_sublattice(perm, ker);
}

// Sign characters: generator images in {+1, -1} that define a homomorphism.
inline std::vector<std::vector<int>> sign_characters(const FiniteGroup& g) {
  std::vector<std::vector<int>> out;
  const std::size_t k = g.generators().size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> signs(k);
    for (std::size_t i = 0; i < k; ++i) signs[i] = (mask >> i & 1) ? -1 : 1;
    try {
      flasque::sign_lattice(g, signs);
      out.push_back(signs);
    } catch (const std::exception&) {
    }
  }
  return out;
}

// A random indecomposable-ish building block of rank <= max_rank.
inline GLattice random_block(Rng& rng, const FiniteGroup& g, std::size_t max_rank) {
  const auto subs = flasque::subgroups(g);
  for (int attempt = 0; attempt < 40; ++attempt) {
    GLattice x;
    switch (uniform(rng, 0, 4)) {
      case 0:
        x = flasque::trivial_lattice(g, 1);
        break;
      case 1:
        x = flasque::sign_lattice(g, pick(rng, sign_characters(g)));
        break;
      case 2:
        x = flasque::permutation_module(g, pick(rng, subs));
        break;
      case 3:
        x = augmentation_lattice(g, pick(rng, subs));
        break;
      default:
        x = flasque::dual(augmentation_lattice(g, pick(rng, subs)));
        break;
    }
    if (x.rank() >= 1 && x.rank() <= max_rank) return x;
  }
  return flasque::trivial_lattice(g, 1);
}

// Upper-triangular extension of the trivial lattice by a sign lattice for an
// element of order 2: generator acts by [[1, b], [0, -1]].
inline GLattice twisted_extension(const FiniteGroup& g, const std::vector<int>& signs, long b) {
  std::vector<IntMatrix> acts;
  for (int s : signs) acts.push_back(s == 1 ? IntMatrix::identity(2) : IntMatrix{{1, b}, {0, -1}});
  return GLattice(g, 2, acts);
}

// Random lattice of rank in [1, max_rank], conjugated by a unimodular matrix.
inline GLattice random_lattice(Rng& rng, const FiniteGroup& g, std::size_t max_rank) {
  const auto target = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_rank)));
  GLattice x = flasque::trivial_lattice(g, 0);
  if (uniform(rng, 0, 3) == 0 && target >= 2) {
    auto chars = sign_characters(g);
    std::vector<std::vector<int>> nontrivial;
    for (auto& c : chars)
      if (std::any_of(c.begin(), c.end(), [](int s) { return s == -1; })) nontrivial.push_back(c);
    if (!nontrivial.empty()) x = twisted_extension(g, pick(rng, nontrivial), uniform(rng, -3, 3));
  }
  while (x.rank() < target) x = flasque::direct_sum(x, random_block(rng, g, target - x.rank()));
  return flasque::change_basis(x, random_unimodular(rng, x.rank()));
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

// gcd of all k x k minors (0 when every minor vanishes).
inline BigInt determinant_divisor(const IntMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(m.rows()), cols(m.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  BigInt g = 0;
  std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
  std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
  do {
    std::fill(csel.begin(), csel.end(), false);
    std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
    do {
      IntMatrix minor(k, k);
      std::size_t r = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!rsel[i]) continue;
        std::size_t c = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (csel[j]) minor(r, c++) = m(i, j);
        ++r;
      }
      BigInt d = flasque::lin::determinant(minor);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (std::next_permutation(csel.begin(), csel.end()));
  } while (std::next_permutation(rsel.begin(), rsel.end()));
  return abs(g);
}

// Every subset closed under multiplication (brute force, order <= 16).
inline std::vector<std::uint64_t> brute_force_subgroup_masks(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask >> g.identity() & 1)) continue;
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      if (mask >> a & 1)
        for (std::size_t b = 0; b < n && closed; ++b)
          if ((mask >> b & 1) && !(mask >> g.mul(a, b) & 1)) closed = false;
    if (closed) out.push_back(mask);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testkit
