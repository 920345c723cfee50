#pragma once

// Exact integer and rational linear algebra: dense integer matrices,
// Hermite and Smith normal forms, saturated integer kernels, exact ranks and
// a Fourier-Motzkin feasibility oracle for mixed strict/non-strict systems.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latsum/error.hpp"

namespace latsum {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

// ---------------------------------------------------------------------------
// Scalar helpers

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer floor_of(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q),
                   boost::multiprecision::denominator(q));
}

inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// Narrows to int64, throwing instead of wrapping.
inline std::int64_t to_int64(const Integer& x) {
  static const Integer lo = std::numeric_limits<std::int64_t>::min();
  static const Integer hi = std::numeric_limits<std::int64_t>::max();
  if (x < lo || x > hi) {
    throw DomainError("overflow", "integer value does not fit in 64 bits");
  }
  return x.convert_to<std::int64_t>();
}

inline std::int64_t to_int64(__int128 x) {
  if (x < static_cast<__int128>(std::numeric_limits<std::int64_t>::min()) ||
      x > static_cast<__int128>(std::numeric_limits<std::int64_t>::max())) {
    throw DomainError("overflow", "integer value does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(x);
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  return to_int64(static_cast<__int128>(a) * b);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  return to_int64(static_cast<__int128>(a) + b);
}

/// Exact dot product of two int64 vectors of equal length.
inline __int128 dot128(std::span<const std::int64_t> a,
                       std::span<const std::int64_t> b) {
  assert(a.size() == b.size());
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += static_cast<__int128>(a[i]) * b[i];
  }
  return s;
}

inline std::int64_t dot(std::span<const std::int64_t> a,
                        std::span<const std::int64_t> b) {
  return to_int64(dot128(a, b));
}

// ---------------------------------------------------------------------------
// IntegerMatrix

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw DomainError("dimension_mismatch", "ragged matrix initializer");
      }
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose rows are the given vectors (all of length `cols`).
  static IntegerMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                 std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        throw DomainError("dimension_mismatch", "row length mismatch");
      }
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  const Integer& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("IntegerMatrix::at");
    return (*this)(i, j);
  }

  std::vector<Integer> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  std::vector<Integer> col(std::size_t j) const {
    std::vector<Integer> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<std::int64_t> row_int64(std::size_t i) const {
    std::vector<std::int64_t> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = to_int64((*this)(i, j));
    return r;
  }

  std::vector<std::int64_t> col_int64(std::size_t j) const {
    std::vector<std::int64_t> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = to_int64((*this)(i, j));
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [begin, end) as a new matrix.
  IntegerMatrix row_block(std::size_t begin, std::size_t end) const {
    IntegerMatrix b(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j) b(i - begin, j) = (*this)(i, j);
    return b;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DomainError("dimension_mismatch", "matrix product shape mismatch");
    }
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  /// Matrix-vector product over the integers.
  std::vector<Integer> apply(std::span<const std::int64_t> v) const {
    if (v.size() != cols_) {
      throw DomainError("dimension_mismatch", "matrix-vector shape mismatch");
    }
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// ---------------------------------------------------------------------------
// Determinant (Bareiss, fraction-free)

inline Integer determinant(IntegerMatrix m) {
  if (m.rows() != m.cols()) {
    throw DomainError("dimension_mismatch", "determinant of non-square matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Hermite normal form

struct HermiteDecomposition {
  IntegerMatrix h;  // row echelon form
  IntegerMatrix u;  // unimodular, u * m == h
  std::size_t rank = 0;
};

/// Row-style Hermite normal form: u * m = h, with h upper echelon, positive
/// pivots, and entries above each pivot reduced into [0, pivot).
inline HermiteDecomposition hermite_normal_form(const IntegerMatrix& m) {
  IntegerMatrix h = m;
  IntegerMatrix u = IntegerMatrix::identity(m.rows());
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
    for (;;) {
      // Smallest nonzero |entry| in column c at or below pivot_row.
      std::optional<std::size_t> best;
      std::size_t nonzero = 0;
      for (std::size_t i = pivot_row; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        ++nonzero;
        if (!best || abs(h(i, c)) < abs(h(*best, c))) best = i;
      }
      if (!best) break;
      h.swap_rows(pivot_row, *best);
      u.swap_rows(pivot_row, *best);
      if (nonzero == 1) break;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(pivot_row, c);
        h.add_row_multiple(i, pivot_row, -q);
        u.add_row_multiple(i, pivot_row, -q);
      }
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0) {
      h.negate_row(pivot_row);
      u.negate_row(pivot_row);
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Integer q = floor_div(h(i, c), h(pivot_row, c));
      h.add_row_multiple(i, pivot_row, -q);
      u.add_row_multiple(i, pivot_row, -q);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u), pivot_row};
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithDecomposition {
  std::vector<Integer> diagonal;  // d1 | d2 | ... ; zeros trail
  IntegerMatrix left;             // unimodular, rows x rows
  IntegerMatrix right;            // unimodular, cols x cols
};

/// left * m * right = diag(diagonal). Pivot choice: minimal |entry| in the
/// remaining block, ties broken by lowest row then lowest column.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  IntegerMatrix d = m;
  IntegerMatrix left = IntegerMatrix::identity(m.rows());
  IntegerMatrix right = IntegerMatrix::identity(m.cols());
  const std::size_t n = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < n; ++t) {
    bool block_zero = false;
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
          if (d(i, j) == 0) continue;
          if (!piv || abs(d(i, j)) < abs(d(piv->first, piv->second))) piv = {i, j};
        }
      if (!piv) {
        block_zero = true;
        break;
      }
      d.swap_rows(t, piv->first);
      left.swap_rows(t, piv->first);
      d.swap_cols(t, piv->second);
      right.swap_cols(t, piv->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        left.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col_multiple(j, t, -q);
        right.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < d.rows() && !bad_row; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      d.add_row_multiple(t, *bad_row, 1);
      left.add_row_multiple(t, *bad_row, 1);
    }
    if (block_zero) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      left.negate_row(t);
    }
  }

  SmithDecomposition out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = d(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

// ---------------------------------------------------------------------------
// Integer kernel

/// Lattice basis of {v in Z^cols : m v = 0}, one basis vector per column of
/// the result. The basis spans a saturated lattice and is returned in
/// Hermite-reduced form, so it is canonical for the kernel.
inline IntegerMatrix integer_kernel(const IntegerMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntegerMatrix::identity(n);
  auto hnf = hermite_normal_form(m.transpose());
  const std::size_t k = n - hnf.rank;
  if (k == 0) return IntegerMatrix(n, 0);
  IntegerMatrix basis = hnf.u.row_block(hnf.rank, n);
  IntegerMatrix canonical = hermite_normal_form(basis).h;
  return canonical.transpose();
}

// ---------------------------------------------------------------------------
// Exact rank via incremental echelon basis

/// Incrementally maintained echelon basis of a rational row space. Rows are
/// sparse (column -> value). Each stored row has a distinct pivot column
/// (its smallest column) normalized to 1.
class RowSpace {
 public:
  using SparseRow = std::map<std::size_t, Rational>;

  /// Inserts a row; returns true when it increased the rank.
  bool insert(SparseRow v) {
    for (auto it = v.begin(); it != v.end();) {
      if (it->second == 0) {
        it = v.erase(it);
      } else {
        ++it;
      }
    }
    while (!v.empty()) {
      const std::size_t c = v.begin()->first;
      auto piv = pivots_.find(c);
      if (piv == pivots_.end()) {
        const Rational lead = v.begin()->second;
        for (auto& [col, val] : v) val /= lead;
        pivots_.emplace(c, std::move(v));
        return true;
      }
      const Rational factor = v.begin()->second;
      for (const auto& [col, val] : piv->second) {
        auto& slot = v[col];
        slot -= factor * val;
        if (slot == 0) v.erase(col);
      }
    }
    return false;
  }

  bool insert_dense(std::span<const std::int64_t> v) {
    SparseRow row;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) row.emplace(j, Rational(v[j]));
    return insert(std::move(row));
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> cols;
    cols.reserve(pivots_.size());
    for (const auto& [c, row] : pivots_) cols.push_back(c);
    return cols;
  }

 private:
  std::map<std::size_t, SparseRow> pivots_;
};

inline std::size_t rank(const IntegerMatrix& m) {
  RowSpace space;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RowSpace::SparseRow row;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) row.emplace(j, Rational(m(i, j)));
    space.insert(std::move(row));
  }
  return space.rank();
}

inline std::size_t rank_of_vectors(const std::vector<std::vector<std::int64_t>>& vs) {
  RowSpace space;
  for (const auto& v : vs) space.insert_dense(v);
  return space.rank();
}

/// Solves the square system a x = b exactly; nullopt when a is singular.
inline std::optional<RationalVector> solve_square(std::vector<RationalVector> a,
                                                  RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin feasibility

enum class Relation { GreaterEqual, Greater, Equal };

struct LinearConstraint {
  RationalVector coeffs;
  Relation relation = Relation::GreaterEqual;
  Rational rhs;
};

struct FeasibilityResult {
  bool feasible = false;
  RationalVector witness;  // exact point satisfying every constraint when feasible
};

namespace detail {

struct FmRow {
  std::vector<Integer> coeffs;  // primitive integer direction
  Rational rhs;
  bool strict = false;
};

// Scales a rational constraint by a positive factor so its coefficients are
// coprime integers. Returns false when all coefficients vanish.
inline bool normalize_row(const RationalVector& coeffs, const Rational& rhs, bool strict,
                          FmRow& out) {
  Integer l = 1;
  for (const auto& c : coeffs) {
    if (c == 0) continue;
    l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(c)));
  }
  std::vector<Integer> ints(coeffs.size());
  Integer g = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Rational scaled = coeffs[i] * l;
    ints[i] = boost::multiprecision::numerator(scaled);
    g = boost::multiprecision::gcd(g, ints[i]);
  }
  if (g == 0) return false;
  g = abs(g);
  for (auto& x : ints) x /= g;
  out.coeffs = std::move(ints);
  out.rhs = rhs * l / g;
  out.strict = strict;
  return true;
}

// Keeps the strongest bound per direction; returns false on a trivially
// violated constant constraint.
class FmSystem {
 public:
  bool add(const RationalVector& coeffs, const Rational& rhs, bool strict) {
    FmRow row;
    if (!normalize_row(coeffs, rhs, strict, row)) {
      return strict ? (rhs < 0) : (rhs <= 0);
    }
    auto [it, inserted] = rows_.try_emplace(row.coeffs, row);
    if (!inserted) {
      FmRow& cur = it->second;
      if (row.rhs > cur.rhs || (row.rhs == cur.rhs && row.strict && !cur.strict)) cur = row;
    }
    return true;
  }
  std::vector<FmRow> rows() const {
    std::vector<FmRow> out;
    out.reserve(rows_.size());
    for (const auto& [k, v] : rows_) out.push_back(v);
    return out;
  }

 private:
  std::map<std::vector<Integer>, FmRow> rows_;
};

}  // namespace detail

/// Decides whether the system has a real (hence rational) solution by exact
/// Fourier-Motzkin elimination. Strict inequalities are tracked as a flag
/// through every combination, so no epsilon is introduced. The witness is
/// deterministic: during back-substitution each variable takes 0 if allowed,
/// else the integer nearest its binding bound, else the midpoint of its
/// interval.
inline FeasibilityResult rational_feasible(std::span<const LinearConstraint> constraints,
                                           std::size_t num_vars) {
  using detail::FmRow;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != num_vars) {
      throw DomainError("dimension_mismatch", "constraint length differs from variable count");
    }
  }

  // 1. Eliminate equalities by exact substitution.
  struct Substitution {
    std::size_t var;
    RationalVector coeffs;  // x_var = rhs - sum coeffs[i] x_i  (coeffs[var] = 0)
    Rational rhs;
  };
  std::vector<Substitution> subs;
  std::vector<LinearConstraint> work(constraints.begin(), constraints.end());
  auto substitute = [&](LinearConstraint& c, const Substitution& s) {
    const Rational a = c.coeffs[s.var];
    if (a == 0) return;
    c.coeffs[s.var] = 0;
    for (std::size_t i = 0; i < num_vars; ++i) c.coeffs[i] -= a * s.coeffs[i];
    c.rhs -= a * s.rhs;
  };
  for (std::size_t idx = 0; idx < work.size(); ++idx) {
    if (work[idx].relation != Relation::Equal) continue;
    for (const auto& s : subs) substitute(work[idx], s);
    const auto& c = work[idx];
    auto lead = std::find_if(c.coeffs.begin(), c.coeffs.end(),
                             [](const Rational& x) { return x != 0; });
    if (lead == c.coeffs.end()) {
      if (c.rhs != 0) return {};
      continue;
    }
    const std::size_t var = static_cast<std::size_t>(lead - c.coeffs.begin());
    Substitution s{var, RationalVector(num_vars), c.rhs / *lead};
    for (std::size_t i = 0; i < num_vars; ++i)
      if (i != var) s.coeffs[i] = c.coeffs[i] / *lead;
    subs.push_back(std::move(s));
  }

  // 2. Inequalities over the remaining variables.
  detail::FmSystem system;
  for (auto c : work) {
    if (c.relation == Relation::Equal) continue;
    for (const auto& s : subs) substitute(c, s);
    if (!system.add(c.coeffs, c.rhs, c.relation == Relation::Greater)) return {};
  }

  std::vector<bool> substituted(num_vars, false);
  for (const auto& s : subs) substituted[s.var] = true;

  std::vector<std::size_t> order;
  std::vector<std::vector<FmRow>> stages;
  std::vector<FmRow> current = system.rows();
  for (std::size_t var = 0; var < num_vars; ++var) {
    if (substituted[var]) continue;
    order.push_back(var);
    std::vector<FmRow> pos, neg;
    detail::FmSystem next;
    for (const auto& row : current) {
      if (row.coeffs[var] > 0) {
        pos.push_back(row);
      } else if (row.coeffs[var] < 0) {
        neg.push_back(row);
      } else {
        RationalVector rc(row.coeffs.begin(), row.coeffs.end());
        next.add(rc, row.rhs, row.strict);
      }
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        const Integer wp = -q.coeffs[var];
        const Integer wq = p.coeffs[var];
        RationalVector rc(num_vars);
        for (std::size_t i = 0; i < num_vars; ++i)
          rc[i] = Rational(wp * p.coeffs[i] + wq * q.coeffs[i]);
        if (!next.add(rc, p.rhs * wp + q.rhs * wq, p.strict || q.strict)) return {};
      }
    std::vector<FmRow> involved = pos;
    involved.insert(involved.end(), neg.begin(), neg.end());
    stages.push_back(std::move(involved));
    current = next.rows();
  }

  // 3. Back-substitution in reverse elimination order.
  RationalVector x(num_vars);
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t var = order[k];
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& row : stages[k]) {
      Rational rest = row.rhs;
      for (std::size_t i = 0; i < num_vars; ++i)
        if (i != var && row.coeffs[i] != 0) rest -= Rational(row.coeffs[i]) * x[i];
      const Rational bound = rest / Rational(row.coeffs[var]);
      if (row.coeffs[var] > 0) {
        if (!lo || bound > *lo || (bound == *lo && row.strict)) {
          lo = bound;
          lo_strict = row.strict;
        }
      } else {
        if (!hi || bound < *hi || (bound == *hi && row.strict)) {
          hi = bound;
          hi_strict = row.strict;
        }
      }
    }
    auto admissible = [&](const Rational& v) {
      if (lo && (lo_strict ? !(v > *lo) : !(v >= *lo))) return false;
      if (hi && (hi_strict ? !(v < *hi) : !(v <= *hi))) return false;
      return true;
    };
    Rational value = 0;
    if (!admissible(value)) {
      std::optional<Rational> candidate;
      if (lo) {
        candidate = Rational(lo_strict ? floor_of(*lo) + 1 : ceil_of(*lo));
      } else if (hi) {
        candidate = Rational(hi_strict ? ceil_of(*hi) - 1 : floor_of(*hi));
      }
      if (candidate && admissible(*candidate)) {
        value = *candidate;
      } else {
        assert(lo && hi);
        value = (*lo + *hi) / 2;
        if (*lo == *hi) value = *lo;
      }
    }
    x[var] = value;
  }
  for (std::size_t k = subs.size(); k-- > 0;) {
    const auto& s = subs[k];
    Rational v = s.rhs;
    for (std::size_t i = 0; i < num_vars; ++i)
      if (s.coeffs[i] != 0) v -= s.coeffs[i] * x[i];
    x[s.var] = v;
  }

  for (const auto& c : constraints) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < num_vars; ++i) lhs += c.coeffs[i] * x[i];
    const bool ok = c.relation == Relation::Equal     ? lhs == c.rhs
                    : c.relation == Relation::Greater ? lhs > c.rhs
                                                      : lhs >= c.rhs;
    if (!ok) throw std::logic_error("rational_feasible produced an invalid witness");
  }
  return {true, std::move(x)};
}

inline FeasibilityResult rational_feasible(const std::vector<LinearConstraint>& constraints,
                                           std::size_t num_vars) {
  return rational_feasible(std::span<const LinearConstraint>(constraints), num_vars);
}

}  // namespace latsum
