#include "flasque/exactlin.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "flasque/error.hpp"

namespace flasque {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("IntMatrix: row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::column(const std::vector<BigInt>& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

std::vector<BigInt> IntMatrix::col(std::size_t c) const {
  std::vector<BigInt> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<BigInt> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::set_col(std::size_t c, const std::vector<BigInt>& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("IntMatrix: dimension mismatch in sum");
  IntMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("IntMatrix: dimension mismatch in difference");
  IntMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out(*this);
  for (auto& v : out.data_) v = -v;
  return out;
}

IntMatrix IntMatrix::scaled(const BigInt& k) const {
  IntMatrix out(*this);
  for (auto& v : out.data_) v *= k;
  return out;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
  if (v.size() != cols_) throw InputError("IntMatrix: vector length mismatch");
  std::vector<BigInt> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::col_range(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw InputError("IntMatrix: hstack row mismatch");
  IntMatrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, cols_ + j) = rhs(i, j);
  }
  return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& rhs) const {
  if (cols_ != rhs.cols_) throw InputError("IntMatrix: vstack column mismatch");
  IntMatrix out(rows_ + rhs.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(rhs.data_.begin(), rhs.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

IntMatrix IntMatrix::block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) out(a.rows_ + i, a.cols_ + j) = b(i, j);
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

std::size_t NormalFormResult::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(S.rows(), S.cols());
  while (r < n && S(r, r) != 0) ++r;
  return r;
}

std::vector<BigInt> NormalFormResult::diagonal() const {
  const std::size_t n = std::min(S.rows(), S.cols());
  std::vector<BigInt> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = S(i, i);
  return d;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<BigInt> invariant_factors, std::size_t free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw InputError("FiniteAbelianGroup: invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw InputError("FiniteAbelianGroup: invariant factors must form a divisibility chain");
  }
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const std::vector<BigInt>& orders,
                                                          std::size_t free_rank) {
  IntMatrix d(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] <= 0) throw InputError("FiniteAbelianGroup: cyclic orders must be positive");
    d(i, i) = orders[i];
  }
  auto g = lin::cokernel(d);
  return {g.invariant_factors(), free_rank};
}

BigInt FiniteAbelianGroup::order() const {
  BigInt n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

FiniteAbelianGroup FiniteAbelianGroup::primary_part(const BigInt& p) const {
  std::vector<BigInt> parts;
  for (const auto& d : factors_) {
    BigInt q = 1;
    BigInt rest = d;
    while (rest % p == 0) {
      rest /= p;
      q *= p;
    }
    if (q > 1) parts.push_back(q);
  }
  return {parts, 0};
}

FiniteAbelianGroup FiniteAbelianGroup::direct_sum(const FiniteAbelianGroup& other) const {
  std::vector<BigInt> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return from_cyclic_orders(all, free_rank_ + other.free_rank_);
}

std::string FiniteAbelianGroup::to_string() const {
  if (is_trivial()) return "trivial";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << 'Z';
    if (free_rank_ > 1) os << '^' << free_rank_;
    first = false;
  }
  for (const auto& d : factors_) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g) { return os << g.to_string(); }

namespace lin {
namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void row_submul(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

void col_submul(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

void negate_col(IntMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt trunc_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

NormalFormResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix S = m;
  IntMatrix U = IntMatrix::identity(rows);
  IntMatrix V = IntMatrix::identity(cols);
  const std::size_t n = std::min(rows, cols);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero |entry| in the remaining block, first in row-major order.
      bool found = false;
      std::size_t pi = t, pj = t;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const BigInt& v = S(i, j);
          if (v == 0) continue;
          BigInt a = abs(v);
          if (!found || a < best) {
            found = true;
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        if (S(t, t) < 0) {
          negate_row(S, t);
          negate_row(U, t);
        }
        return {std::move(S), std::move(U), std::move(V)};
      }
      swap_rows(S, t, pi);
      swap_rows(U, t, pi);
      swap_cols(S, t, pj);
      swap_cols(V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        BigInt q = trunc_div(S(i, t), S(t, t));
        row_submul(S, i, t, q);
        row_submul(U, i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        BigInt q = trunc_div(S(t, j), S(t, t));
        col_submul(S, j, t, q);
        col_submul(V, j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and go again.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (S(i, j) % S(t, t) != 0) {
            row_submul(S, t, i, BigInt(-1));
            row_submul(U, t, i, BigInt(-1));
            divisible = false;
            break;
          }
      if (!divisible) continue;

      if (S(t, t) < 0) {
        negate_row(S, t);
        negate_row(U, t);
      }
      break;
    }
  }
  return {std::move(S), std::move(U), std::move(V)};
}

IntMatrix column_hermite_basis(const IntMatrix& m) {
  IntMatrix A = m;
  const std::size_t rows = A.rows();
  const std::size_t cols = A.cols();
  std::size_t c = 0;
  for (std::size_t r = 0; r < rows && c < cols; ++r) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = c; j < cols; ++j)
        if (A(r, j) != 0 && (best == cols || abs(A(r, j)) < abs(A(r, best)))) best = j;
      if (best == cols) break;
      swap_cols(A, c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (A(r, j) == 0) continue;
        col_submul(A, j, c, floor_div(A(r, j), A(r, c)));
        if (A(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) negate_col(A, c);
    for (std::size_t k = 0; k < c; ++k)
      if (A(r, k) != 0) col_submul(A, k, c, floor_div(A(r, k), A(r, c)));
    ++c;
  }
  return A.col_range(0, c);
}

IntMatrix kernel_basis(const IntMatrix& m) {
  auto nf = smith_normal_form(m);
  const std::size_t r = nf.rank();
  IntMatrix k = nf.V.col_range(r, m.cols() - r);
  for (std::size_t j = 0; j < k.cols(); ++j) {
    auto v = k.col(j);
    BigInt g = content(v);
    if (g > 1)
      for (auto& x : v) x /= g;
    k.set_col(j, v);
  }
  return column_hermite_basis(k);
}

FiniteAbelianGroup cokernel(const IntMatrix& m) {
  auto nf = smith_normal_form(m);
  const std::size_t r = nf.rank();
  std::vector<BigInt> factors;
  for (std::size_t i = 0; i < r; ++i)
    if (nf.S(i, i) > 1) factors.push_back(nf.S(i, i));
  return {factors, m.rows() - r};
}

std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank(); }

namespace {

bool solve_with(const NormalFormResult& nf, std::size_t k, const std::vector<BigInt>& target,
                std::vector<BigInt>& x) {
  auto y = nf.U.apply(target);
  std::vector<BigInt> z(nf.V.rows());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < k) {
      if (y[i] % nf.S(i, i) != 0) return false;
      z[i] = y[i] / nf.S(i, i);
    } else if (y[i] != 0) {
      return false;
    }
  }
  x = nf.V.apply(z);
  return true;
}

}  // namespace

bool solve_in_lattice(const IntMatrix& basis, const std::vector<BigInt>& target, std::vector<BigInt>& x) {
  auto nf = smith_normal_form(basis);
  const std::size_t k = nf.rank();
  if (k != basis.cols()) throw InputError("solve_in_lattice: basis columns are not independent");
  return solve_with(nf, k, target, x);
}

IntMatrix coordinates(const IntMatrix& basis, const IntMatrix& vectors) {
  if (basis.rows() != vectors.rows()) throw InputError("coordinates: ambient rank mismatch");
  auto nf = smith_normal_form(basis);
  const std::size_t k = nf.rank();
  if (k != basis.cols()) throw InputError("coordinates: basis columns are not independent");
  IntMatrix out(k, vectors.cols());
  std::vector<BigInt> x;
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    if (!solve_with(nf, k, vectors.col(j), x)) {
      std::ostringstream os;
      os << "column " << j << " lies outside the target lattice";
      throw ContainmentError(j, os.str());
    }
    out.set_col(j, x);
  }
  return out;
}

FiniteAbelianGroup sublattice_quotient(std::size_t ambient_rank, const IntMatrix& generators,
                                       const IntMatrix& subgenerators) {
  if (generators.rows() != ambient_rank || subgenerators.rows() != ambient_rank)
    throw InputError("sublattice_quotient: generator rows must equal the ambient rank");
  IntMatrix basis = column_hermite_basis(generators);
  return cokernel(coordinates(basis, subgenerators));
}

bool is_surjective_onto(const IntMatrix& m, const IntMatrix& target_basis) {
  IntMatrix basis = column_hermite_basis(target_basis);
  if (basis.cols() == 0) {
    if (!m.is_zero()) throw ContainmentError(0, "image is nonzero but the target lattice is zero");
    return true;
  }
  return cokernel(coordinates(basis, m)).is_trivial();
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return column_hermite_basis(a) == column_hermite_basis(b);
}

bool is_saturated(const IntMatrix& m) {
  auto nf = smith_normal_form(m);
  const std::size_t r = nf.rank();
  for (std::size_t i = 0; i < r; ++i)
    if (nf.S(i, i) != 1) return false;
  return true;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) /= prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

BigInt content(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

QuotientMaps quotient_maps(const IntMatrix& saturated_sub, std::size_t ambient_rank) {
  if (saturated_sub.rows() != ambient_rank) throw InputError("quotient_maps: ambient rank mismatch");
  IntMatrix sub = column_hermite_basis(saturated_sub);
  auto nf = smith_normal_form(sub);
  const std::size_t k = nf.rank();
  for (std::size_t i = 0; i < k; ++i)
    if (nf.S(i, i) != 1) throw Error("quotient_maps: sublattice is not saturated; the quotient has torsion");
  // U is unimodular; its inverse comes from its own normal form.
  auto inv = smith_normal_form(nf.U);
  IntMatrix u_inv = inv.V * inv.U;
  return {nf.U.row_range(k, ambient_rank - k), u_inv.col_range(k, ambient_rank - k)};
}

}  // namespace lin
}  // namespace flasque
