#pragma once

// Graded-dimension checks on projective space: Koszul complex of Omega and
// Eagon-Northcott complex of the diagonal ideal.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "latsum/coxring.hpp"
#include "latsum/error.hpp"
#include "latsum/exactlin.hpp"
#include "latsum/fan.hpp"

namespace latsum {

struct GradedDims {
  std::size_t r = 0;
  std::map<std::vector<std::int64_t>, std::int64_t> table;

  std::int64_t at(const std::vector<std::int64_t>& degree) const {
    auto it = table.find(degree);
    return it == table.end() ? 0 : it->second;
  }
};

namespace detail {

inline std::vector<std::vector<std::int64_t>> pascal_rows(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> rows{{1}};
  for (std::int64_t i = 1; i <= n; ++i) {
    const auto& prev = rows.back();
    std::vector<std::int64_t> row(static_cast<std::size_t>(i) + 1, 1);
    for (std::size_t k = 1; k < row.size() - 1; ++k) row[k] = checked_add(prev[k - 1], prev[k]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// C(n, k) by Pascal recursion; 0 outside 0 <= k <= n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 66) throw DomainError("overflow", "binomial argument too large");
  return detail::pascal_rows(n)[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

/// Number of degree-a monomials in r+1 variables.
inline std::int64_t s_dim(std::size_t r, std::int64_t a) {
  if (a < 0) return 0;
  return binomial(a + static_cast<std::int64_t>(r), static_cast<std::int64_t>(r));
}

inline GradedDims s_dim_table(std::size_t r, std::int64_t aMax) {
  GradedDims g{r, {}};
  for (std::int64_t a = 0; a <= aMax; ++a) g.table[{a}] = s_dim(r, a);
  return g;
}

inline void require_nonnegative(std::int64_t a, std::int64_t b = 0) {
  if (a < 0 || b < 0) throw DomainError("negative_degree", "degrees must be nonnegative");
}

/// dim I_(a,b) = s(a)s(b) - s(a+b), the multiplication map being onto.
inline std::int64_t ideal_dim(std::size_t r, std::int64_t a, std::int64_t b) {
  require_nonnegative(a, b);
  return checked_add(checked_mul(s_dim(r, a), s_dim(r, b)), -s_dim(r, a + b));
}

inline std::int64_t eagon_northcott_euler(std::size_t r, std::int64_t a, std::int64_t b) {
  require_nonnegative(a, b);
  const auto n = static_cast<std::int64_t>(r) + 1;
  std::int64_t total = 0;
  for (std::int64_t p = 1; p <= static_cast<std::int64_t>(r); ++p) {
    std::int64_t inner = 0;
    for (std::int64_t j = 1; j <= p; ++j) inner = checked_add(inner, checked_mul(s_dim(r, a - j), s_dim(r, b - (p + 1 - j))));
    const auto term = checked_mul(binomial(n, p + 1), inner);
    total = checked_add(total, p % 2 == 1 ? term : -term);
  }
  return total;
}

inline std::int64_t koszul_euler(std::size_t r, std::int64_t a) {
  const auto n = static_cast<std::int64_t>(r) + 1;
  std::int64_t total = 0;
  for (std::int64_t j = 2; j <= n; ++j) {
    const auto term = checked_mul(binomial(n, j), s_dim(r, a - j));
    total = checked_add(total, j % 2 == 0 ? term : -term);
  }
  return total;
}

/// Kernel dimension of the multiplication pairing S_a x S_b -> S_{a+b},
/// computed from explicit monomial bases.
inline std::int64_t ideal_dim_direct(std::size_t r, std::int64_t a, std::int64_t b) {
  require_nonnegative(a, b);
  CoxRing ring(projective_space_fan(r));
  const auto rep = multiplication_check(ring, ring.free_class({a}), ring.free_class({b}));
  return static_cast<std::int64_t>(rep.dimAlpha * rep.dimBeta) - static_cast<std::int64_t>(rep.imageDim);
}

/// Exact kernel dimension of f_j dx_j -> f_j x_j in degree a.
inline std::int64_t omega_dim_direct(std::size_t r, std::int64_t a) {
  require_nonnegative(a);
  CoxRing ring(projective_space_fan(r));
  return static_cast<std::int64_t>(omega_dimension(ring, ring.free_class({a})).omegaDim);
}

struct IdentityCell {
  std::vector<std::int64_t> degree;
  std::int64_t direct = 0, euler = 0;
  bool equal() const { return direct == euler; }
};

struct IdentityCheck {
  std::size_t r = 0;
  bool allEqual = true;
  std::vector<IdentityCell> cells;
  std::vector<IdentityCell> mismatches;

  void add(IdentityCell c) {
    if (!c.equal()) {
      allEqual = false;
      mismatches.push_back(c);
    }
    cells.push_back(std::move(c));
  }
};

inline void require_desk_scale(std::size_t r, std::int64_t degree) {
  if (r < 1 || r > 4) throw DomainError("out_of_range", "r must lie in [1, 4]");
  if (degree < 0 || degree > 8) throw DomainError("out_of_range", "degree bound must lie in [0, 8]");
}

/// ideal_dim against the Eagon-Northcott Euler characteristic on [0,aMax]x[0,bMax].
inline IdentityCheck check_en_identity(std::size_t r, std::int64_t aMax, std::int64_t bMax) {
  require_desk_scale(r, std::max(aMax, bMax));
  IdentityCheck out{r, true, {}, {}};
  for (std::int64_t a = 0; a <= aMax; ++a)
    for (std::int64_t b = 0; b <= bMax; ++b) out.add({{a, b}, ideal_dim(r, a, b), eagon_northcott_euler(r, a, b)});
  return out;
}

/// omega_dim_direct against the alternating binomial sum for a in [0, aMax].
inline IdentityCheck check_koszul_identity(std::size_t r, std::int64_t aMax) {
  require_desk_scale(r, aMax);
  CoxRing ring(projective_space_fan(r));
  IdentityCheck out{r, true, {}, {}};
  for (std::int64_t a = 0; a <= aMax; ++a) {
    const auto direct = static_cast<std::int64_t>(omega_dimension(ring, ring.free_class({a})).omegaDim);
    out.add({{a}, direct, koszul_euler(r, a)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary maps for r = 1

struct BoundaryRankCheck {
  std::vector<std::int64_t> degree;
  std::size_t sourceDim = 0;
  std::size_t rank = 0;
  std::int64_t targetKernelDim = 0;  // dimension of the piece the map should hit
  bool composesToZero = true;
  bool exact() const {
    return composesToZero && rank == sourceDim && static_cast<std::int64_t>(rank) == targetKernelDim;
  }
};

/// 0 -> S(-1,-1) -> I -> 0 in bidegree (a,b): multiplication by the minor
/// x1 (x) x2 - x2 (x) x1. Exact iff the map is injective with image all of I.
inline BoundaryRankCheck en_boundary_check_r1(std::int64_t a, std::int64_t b) {
  require_nonnegative(a, b);
  BoundaryRankCheck out;
  out.degree = {a, b};
  out.targetKernelDim = ideal_dim(1, a, b);
  if (a < 1 || b < 1) return out;
  // S_a (x) S_b indexed by (x1-exponent of left, x1-exponent of right).
  auto index = [&](std::int64_t i, std::int64_t k) { return static_cast<std::size_t>(i * (b + 1) + k); };
  RowSpace rows;
  for (std::int64_t i = 0; i < a; ++i)
    for (std::int64_t k = 0; k < b; ++k) {
      RowSpace::SparseRow row;
      row[index(i + 1, k)] += 1;  // (A x1) (x) (B x2)
      row[index(i, k + 1)] -= 1;  // (A x2) (x) (B x1)
      // Multiplying out: both terms give x1^{i+k+1} x2^{...}.
      std::map<std::int64_t, Rational> product;
      for (const auto& [col, c] : row) product[static_cast<std::int64_t>(col) / (b + 1) + static_cast<std::int64_t>(col) % (b + 1)] += c;
      for (const auto& [deg, c] : product) out.composesToZero &= c == 0;
      ++out.sourceDim;
      rows.insert(std::move(row));
    }
  out.rank = rows.rank();
  return out;
}

/// 0 -> Omega^2_S -> Omega in degree a: dx1 ^ dx2 maps to x1 dx2 - x2 dx1.
inline BoundaryRankCheck koszul_boundary_check_r1(std::int64_t a) {
  require_nonnegative(a);
  BoundaryRankCheck out;
  out.degree = {a};
  out.targetKernelDim = omega_dim_direct(1, a);
  if (a < 2) return out;
  // Omega^1_a basis: x1^i x2^{a-1-i} dx_j, index j*a + i.
  auto index = [&](std::int64_t j, std::int64_t i) { return static_cast<std::size_t>(j * a + i); };
  RowSpace rows;
  for (std::int64_t i = 0; i <= a - 2; ++i) {
    RowSpace::SparseRow row;
    row[index(1, i + 1)] += 1;  // x^F x1 dx2
    row[index(0, i)] -= 1;      // x^F x2 dx1
    std::map<std::int64_t, Rational> euler;
    for (const auto& [col, c] : row) {
      const auto j = static_cast<std::int64_t>(col) / a, e = static_cast<std::int64_t>(col) % a;
      euler[e + (j == 0 ? 1 : 0)] += c;
    }
    for (const auto& [deg, c] : euler) out.composesToZero &= c == 0;
    ++out.sourceDim;
    rows.insert(std::move(row));
  }
  out.rank = rows.rank();
  return out;
}

}  // namespace latsum
