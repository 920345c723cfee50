#pragma once

// The linear Gale transform of a ray configuration: pi*: M -> M~ with
// pi*(m)_j = <m, n_j>, its cokernel (the class group), the degree classes
// mu_j of the coordinate divisors, linear equivalence and the D+/D- split.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "latsum/error.hpp"
#include "latsum/exactlin.hpp"
#include "latsum/fan.hpp"
#include "latsum/polytope.hpp"

namespace latsum {

/// Element of the class group, in the fixed presentation of one GaleData:
/// free coordinates followed by torsion residues in [0, d_i).
struct ClassElement {
  std::vector<std::int64_t> free;
  std::vector<std::int64_t> torsion;

  bool is_zero() const {
    return std::all_of(free.begin(), free.end(), [](auto x) { return x == 0; }) &&
           std::all_of(torsion.begin(), torsion.end(), [](auto x) { return x == 0; });
  }
  bool has_torsion() const {
    return std::any_of(torsion.begin(), torsion.end(), [](auto x) { return x != 0; });
  }
  friend auto operator<=>(const ClassElement&, const ClassElement&) = default;
};

class GaleData {
 public:
  GaleData() = default;

  /// Requires rays spanning R^r (pi* injective).
  explicit GaleData(std::vector<LatticePoint> rays) : rays_(std::move(rays)) {
    if (rays_.empty()) throw DomainError("not_spanning", "empty ray configuration");
    dim_ = rays_.front().size();
    for (const auto& n : rays_)
      if (n.size() != dim_) throw DomainError("dimension_mismatch", "rays of different dimensions");
    const std::size_t l = rays_.size();
    if (l < dim_ || rank_of_vectors(rays_) != dim_) {
      throw DomainError("not_spanning", "rays do not span the ambient space; pi* is not injective");
    }
    pi_star_ = IntegerMatrix::from_rows(rays_, dim_);

    auto snf = smith_normal_form(pi_star_);
    // Free coordinates: canonical basis of the left kernel of pi*.
    IntegerMatrix left_kernel = integer_kernel(pi_star_.transpose());
    free_rows_ = left_kernel.transpose();
    torsion_rows_ = IntegerMatrix(0, l);
    std::vector<std::vector<std::int64_t>> trows;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (snf.diagonal[i] > 1) {
        torsion_.push_back(to_int64(snf.diagonal[i]));
        trows.push_back(snf.left.row_int64(i));
      }
    }
    torsion_rows_ = IntegerMatrix::from_rows(trows, l);

    // W = [first r rows of the SNF left transform; free rows] is unimodular,
    // so a class lifts through W^{-1}.
    IntegerMatrix w(l, l);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < l; ++j) w(i, j) = snf.left(i, j);
    for (std::size_t k = 0; k < free_rows_.rows(); ++k)
      for (std::size_t j = 0; j < l; ++j) w(dim_ + k, j) = free_rows_(k, j);
    lift_ = invert_unimodular(w);
    lift_torsion_slot_.clear();
    for (std::size_t i = 0; i < dim_; ++i)
      if (snf.diagonal[i] > 1) lift_torsion_slot_.push_back(i);

    for (std::size_t j = 0; j < l; ++j) mu_.push_back(class_of(TorusDivisor::unit(l, j)));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_rays() const noexcept { return rays_.size(); }
  const std::vector<LatticePoint>& rays() const noexcept { return rays_; }
  /// l x r matrix with row j = n_j.
  const IntegerMatrix& pi_star() const noexcept { return pi_star_; }
  std::size_t free_rank() const noexcept { return free_rows_.rows(); }
  const std::vector<std::int64_t>& torsion() const noexcept { return torsion_; }
  /// mu_j, the class of the j-th coordinate divisor.
  const std::vector<ClassElement>& classes() const noexcept { return mu_; }
  /// Rows giving the free coordinates of a divisor's class.
  const IntegerMatrix& free_rows() const noexcept { return free_rows_; }

  TorusDivisor pi_star_of(const LatticePoint& m) const {
    if (m.size() != dim_) throw DomainError("dimension_mismatch", "character of wrong dimension");
    TorusDivisor d = TorusDivisor::zero(rays_.size());
    for (std::size_t j = 0; j < rays_.size(); ++j) d.coefficients[j] = dot(m, rays_[j]);
    return d;
  }

  ClassElement class_of(const TorusDivisor& d) const {
    if (d.size() != rays_.size()) throw DomainError("dimension_mismatch", "divisor length differs from ray count");
    ClassElement c;
    for (const auto& v : free_rows_.apply(d.coefficients)) c.free.push_back(to_int64(v));
    const auto t = torsion_rows_.apply(d.coefficients);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      Integer r = t[i] % torsion_[i];
      if (r < 0) r += torsion_[i];
      c.torsion.push_back(to_int64(r));
    }
    return c;
  }

  /// Some divisor (not necessarily effective) of class alpha.
  TorusDivisor lift(const ClassElement& alpha) const {
    validate(alpha);
    const std::size_t l = rays_.size();
    std::vector<std::int64_t> y(l, 0);
    for (std::size_t i = 0; i < torsion_.size(); ++i) y[lift_torsion_slot_[i]] = alpha.torsion[i];
    for (std::size_t k = 0; k < alpha.free.size(); ++k) y[dim_ + k] = alpha.free[k];
    TorusDivisor d = TorusDivisor::zero(l);
    const auto v = lift_.apply(y);
    for (std::size_t j = 0; j < l; ++j) d.coefficients[j] = to_int64(v[j]);
    return d;
  }

  ClassElement zero() const {
    return {std::vector<std::int64_t>(free_rank(), 0), std::vector<std::int64_t>(torsion_.size(), 0)};
  }

  ClassElement add(const ClassElement& a, const ClassElement& b) const {
    validate(a);
    validate(b);
    ClassElement c;
    c.free = add_vec(a.free, b.free);
    for (std::size_t i = 0; i < torsion_.size(); ++i) c.torsion.push_back((a.torsion[i] + b.torsion[i]) % torsion_[i]);
    return c;
  }

  ClassElement negate(const ClassElement& a) const {
    validate(a);
    ClassElement c;
    for (auto x : a.free) c.free.push_back(-x);
    for (std::size_t i = 0; i < torsion_.size(); ++i) c.torsion.push_back((torsion_[i] - a.torsion[i]) % torsion_[i]);
    return c;
  }

  void validate(const ClassElement& a) const {
    if (a.free.size() != free_rank() || a.torsion.size() != torsion_.size()) {
      throw DomainError("dimension_mismatch", "class element has the wrong shape for this class group");
    }
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      if (a.torsion[i] < 0 || a.torsion[i] >= torsion_[i]) {
        throw DomainError("invalid_class", "torsion residue out of canonical range");
      }
  }

 private:
  static std::vector<std::int64_t> add_vec(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    return latsum::add(a, b);
  }

  static IntegerMatrix invert_unimodular(const IntegerMatrix& w) {
    const std::size_t n = w.rows();
    IntegerMatrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<RationalVector> a(n, RationalVector(n));
      RationalVector b(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(w(i, j));
        b[i] = (i == c) ? 1 : 0;
      }
      auto x = solve_square(std::move(a), std::move(b));
      if (!x) throw std::logic_error("presentation matrix is singular");
      for (std::size_t i = 0; i < n; ++i) {
        if (!is_integral((*x)[i])) throw std::logic_error("presentation matrix is not unimodular");
        inv(i, c) = boost::multiprecision::numerator((*x)[i]);
      }
    }
    return inv;
  }

  std::vector<LatticePoint> rays_;
  std::size_t dim_ = 0;
  IntegerMatrix pi_star_;
  IntegerMatrix free_rows_;
  IntegerMatrix torsion_rows_;
  std::vector<std::int64_t> torsion_;
  std::vector<std::size_t> lift_torsion_slot_;
  IntegerMatrix lift_;
  std::vector<ClassElement> mu_;
};

inline GaleData gale_transform(const std::vector<LatticePoint>& rays) { return GaleData(rays); }

/// [D] = sum a_j mu_j.
inline ClassElement divisor_class(const GaleData& g, const TorusDivisor& d) { return g.class_of(d); }

namespace detail {

// Integral solution m of pi*(m) = v, if any, by solving on r independent
// rows and checking the rest. Independent of the Smith presentation.
inline std::optional<LatticePoint> solve_pi_star(const GaleData& g, const TorusDivisor& v) {
  const std::size_t r = g.dim();
  RowSpace space;
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < g.num_rays() && rows.size() < r; ++j)
    if (space.insert_dense(g.rays()[j])) rows.push_back(j);
  std::vector<RationalVector> a;
  RationalVector b;
  for (auto j : rows) {
    a.emplace_back(g.rays()[j].begin(), g.rays()[j].end());
    b.emplace_back(v[j]);
  }
  auto x = solve_square(std::move(a), std::move(b));
  if (!x) return std::nullopt;
  LatticePoint m(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (!is_integral((*x)[i])) return std::nullopt;
    m[i] = to_int64(boost::multiprecision::numerator((*x)[i]));
  }
  if (g.pi_star_of(m) != v) return std::nullopt;
  return m;
}

}  // namespace detail

/// D ~ E, decided both by comparing classes and by solving
/// D - E = pi*(m) over the integers; the two routes must agree.
inline bool linearly_equivalent(const GaleData& g, const TorusDivisor& d, const TorusDivisor& e) {
  if (d.size() != g.num_rays() || e.size() != g.num_rays()) {
    throw DomainError("dimension_mismatch", "divisor length differs from ray count");
  }
  const bool by_class = g.class_of(d) == g.class_of(e);
  const bool by_solve = detail::solve_pi_star(g, d - e).has_value();
  if (by_class != by_solve) throw std::logic_error("class-group presentation disagrees with pi* image test");
  return by_class;
}

/// Zero divisor D+(m) and polar divisor D-(m) of the character e(m).
inline std::pair<TorusDivisor, TorusDivisor> plus_minus_parts(const GaleData& g, const LatticePoint& m) {
  const TorusDivisor p = g.pi_star_of(m);
  TorusDivisor plus = TorusDivisor::zero(p.size()), minus = TorusDivisor::zero(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] > 0) plus.coefficients[j] = p[j];
    if (p[j] < 0) minus.coefficients[j] = -p[j];
  }
  return {plus, minus};
}

}  // namespace latsum
