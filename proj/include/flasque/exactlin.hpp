#pragma once

// Exact integer linear algebra over arbitrary-precision integers.
//
// Matrices act on column vectors: an m x n matrix is a map Z^n -> Z^m and a
// lattice is presented by the column span of a matrix.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace flasque {

using BigInt = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols);
  static IntMatrix column(const std::vector<BigInt>& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<BigInt> col(std::size_t c) const;
  std::vector<BigInt> row(std::size_t r) const;
  void set_col(std::size_t c, const std::vector<BigInt>& v);

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator-() const;
  IntMatrix scaled(const BigInt& k) const;
  std::vector<BigInt> apply(const std::vector<BigInt>& v) const;

  // Columns [first, first + count).
  IntMatrix col_range(std::size_t first, std::size_t count) const;
  IntMatrix row_range(std::size_t first, std::size_t count) const;
  IntMatrix hstack(const IntMatrix& rhs) const;
  IntMatrix vstack(const IntMatrix& rhs) const;
  static IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const IntMatrix& rhs) const = default;

  // Row-major entries, for serialization.
  const std::vector<BigInt>& entries() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// U * M * V == S with U, V unimodular and S diagonal with d1 | d2 | ... >= 0.
struct NormalFormResult {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  std::size_t rank() const;
  std::vector<BigInt> diagonal() const;
};

// Invariant-factor presentation Z^free_rank + Z/d1 + ... + Z/dk, d1 | d2 | ...
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  FiniteAbelianGroup(std::vector<BigInt> invariant_factors, std::size_t free_rank);

  // Arbitrary cyclic orders; normalized to invariant factors.
  static FiniteAbelianGroup from_cyclic_orders(const std::vector<BigInt>& orders,
                                               std::size_t free_rank = 0);

  const std::vector<BigInt>& invariant_factors() const noexcept { return factors_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  bool is_trivial() const noexcept { return factors_.empty() && free_rank_ == 0; }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_cyclic() const noexcept { return free_rank_ == 0 && factors_.size() <= 1; }
  // Order of the torsion part.
  BigInt order() const;
  // The p-primary part of the torsion subgroup.
  FiniteAbelianGroup primary_part(const BigInt& p) const;
  FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& other) const;

  // "trivial", "Z/2", "Z/2 + Z/4", "Z^2 + Z/3".
  std::string to_string() const;

  bool operator==(const FiniteAbelianGroup& rhs) const = default;

 private:
  std::vector<BigInt> factors_;
  std::size_t free_rank_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g);

namespace lin {

NormalFormResult smith_normal_form(const IntMatrix& m);

// Canonical basis (column Hermite form, lower echelon, zero columns dropped)
// of the lattice spanned by the columns of m.
IntMatrix column_hermite_basis(const IntMatrix& m);

// Saturated basis of {x in Z^cols : m x = 0}, in column Hermite form.
IntMatrix kernel_basis(const IntMatrix& m);

// Cokernel of m : Z^cols -> Z^rows.
FiniteAbelianGroup cokernel(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Integer solution x of basis * x == target for a full-column-rank basis, or
// false when target is not in the column span.
bool solve_in_lattice(const IntMatrix& basis, const std::vector<BigInt>& target,
                      std::vector<BigInt>& x);

// Coordinates of every column of `vectors` in terms of the columns of a
// full-column-rank `basis`. Throws ContainmentError naming the first column
// outside the span.
IntMatrix coordinates(const IntMatrix& basis, const IntMatrix& vectors);

// span(generators) / span(subgenerators). Throws ContainmentError when the
// second span is not contained in the first.
FiniteAbelianGroup sublattice_quotient(std::size_t ambient_rank, const IntMatrix& generators,
                                       const IntMatrix& subgenerators);

// Whether the column span of m equals the lattice spanned by target_basis.
// Throws ContainmentError when span(m) is not inside span(target_basis).
bool is_surjective_onto(const IntMatrix& m, const IntMatrix& target_basis);

// Equality of column spans.
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

// Whether the column span of m is saturated in Z^rows.
bool is_saturated(const IntMatrix& m);

// Exact determinant (Bareiss) of a square matrix.
BigInt determinant(const IntMatrix& m);

// gcd of the entries of v (non-negative).
BigInt content(const std::vector<BigInt>& v);

// A complement to a saturated sublattice: returns (Q, R) with Q * x giving the
// coordinates of x modulo span(sub) and R a section (Q * R = identity).
struct QuotientMaps {
  IntMatrix projection;  // (n - k) x n
  IntMatrix section;     // n x (n - k)
};
QuotientMaps quotient_maps(const IntMatrix& saturated_sub, std::size_t ambient_rank);

}  // namespace lin
}  // namespace flasque
