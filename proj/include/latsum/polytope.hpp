#pragma once

// Lattice polytopes in M = Z^r with a paired V/H representation, exact hulls,
// Minkowski sums, dilation, lattice-point enumeration and the sumset checks
// (M cap P) + (M cap Q) versus M cap (P + Q).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latsum/error.hpp"
#include "latsum/exactlin.hpp"

namespace latsum {

using LatticePoint = std::vector<std::int64_t>;

/// Half-space <m, normal> >= offset, normal primitive.
struct Facet {
  LatticePoint normal;
  std::int64_t offset = 0;
  friend auto operator<=>(const Facet&, const Facet&) = default;
};

/// Affine-span equation <m, normal> == value.
struct AffineEquation {
  LatticePoint normal;
  std::int64_t value = 0;
  friend auto operator<=>(const AffineEquation&, const AffineEquation&) = default;
};

// ---------------------------------------------------------------------------
// Small vector helpers

inline LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = checked_add(a[i], b[i]);
  return c;
}

inline LatticePoint subtract(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = checked_add(a[i], -b[i]);
  return c;
}

inline LatticePoint scale(const LatticePoint& a, std::int64_t k) {
  LatticePoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = checked_mul(a[i], k);
  return c;
}

inline LatticePoint negate(const LatticePoint& a) { return scale(a, -1); }

inline std::int64_t content(const LatticePoint& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

inline bool is_primitive(const LatticePoint& v) { return content(v) == 1; }

inline LatticePoint primitive(LatticePoint v) {
  const std::int64_t g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

struct PointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Membership structure for a finite point set: a dense bitmap over the
/// bounding box when it is small, a hash set otherwise.
class PointIndex {
 public:
  explicit PointIndex(const std::vector<LatticePoint>& pts) {
    if (pts.empty()) return;
    const std::size_t r = pts.front().size();
    lo_ = pts.front();
    LatticePoint hi = pts.front();
    for (const auto& p : pts)
      for (std::size_t i = 0; i < r; ++i) {
        lo_[i] = std::min(lo_[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    __int128 volume = 1;
    extent_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      extent_[i] = hi[i] - lo_[i] + 1;
      volume *= extent_[i];
      if (volume > kDenseLimit) break;
    }
    if (volume <= kDenseLimit) {
      dense_ = true;
      bits_.assign(static_cast<std::size_t>(volume), false);
      for (const auto& p : pts) bits_[offset(p)] = true;
    } else {
      sparse_.insert(pts.begin(), pts.end());
    }
  }

  bool contains(const LatticePoint& p) const {
    if (lo_.empty()) return false;
    if (!dense_) return sparse_.count(p) > 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const __int128 d = static_cast<__int128>(p[i]) - lo_[i];
      if (d < 0 || d >= extent_[i]) return false;
    }
    return bits_[offset(p)];
  }

 private:
  static constexpr __int128 kDenseLimit = __int128(1) << 27;

  std::size_t offset(const LatticePoint& p) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      off = off * static_cast<std::size_t>(extent_[i]) + static_cast<std::size_t>(p[i] - lo_[i]);
    return off;
  }

  LatticePoint lo_;
  std::vector<std::int64_t> extent_;
  bool dense_ = false;
  std::vector<bool> bits_;
  std::unordered_set<LatticePoint, PointHash> sparse_;
};

// ---------------------------------------------------------------------------
// Lattice enumeration over linear constraints

namespace detail {

struct LinearBound {
  LatticePoint coeffs;  // coeffs . x >= rhs, or == rhs when equality
  std::int64_t rhs = 0;
  bool equality = false;
};

inline std::int64_t floor_div64(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return to_int64(q);
}

inline std::int64_t ceil_div64(__int128 a, __int128 b) { return -floor_div64(-a, b); }

/// Visits the integer points of the box [lo, hi] satisfying every bound, in
/// lexicographic order. Each coordinate's range is tightened from the
/// constraints whose last nonzero coefficient sits at that coordinate, so
/// the innermost loop only walks feasible fibers.
template <class Visit>
void enumerate_lattice(const std::vector<LinearBound>& bounds, const LatticePoint& lo,
                       const LatticePoint& hi, Visit&& visit) {
  const std::size_t r = lo.size();
  std::vector<std::vector<const LinearBound*>> by_level(r);
  for (const auto& b : bounds) {
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < r; ++i)
      if (b.coeffs[i] != 0) last = i;
    if (!last) {
      const bool ok = b.equality ? (b.rhs == 0) : (b.rhs <= 0);
      if (!ok) return;
      continue;
    }
    by_level[*last].push_back(&b);
  }
  if (r == 0) {
    visit(LatticePoint{});
    return;
  }
  LatticePoint x(r);
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    std::int64_t a = lo[level];
    std::int64_t z = hi[level];
    for (const LinearBound* b : by_level[level]) {
      __int128 rest = b->rhs;
      for (std::size_t j = 0; j < level; ++j) rest -= static_cast<__int128>(b->coeffs[j]) * x[j];
      const __int128 c = b->coeffs[level];
      if (b->equality) {
        if (rest % c != 0) return;
        const std::int64_t v = to_int64(rest / c);
        a = std::max(a, v);
        z = std::min(z, v);
      } else if (c > 0) {
        a = std::max(a, ceil_div64(rest, c));
      } else {
        z = std::min(z, floor_div64(rest, c));
      }
      if (a > z) return;
    }
    for (std::int64_t v = a; v <= z; ++v) {
      x[level] = v;
      if (level + 1 == r) {
        visit(static_cast<const LatticePoint&>(x));
      } else {
        rec(level + 1);
      }
    }
  };
  rec(0);
}

template <class Range>
void for_each_combination(std::size_t n, std::size_t k, Range&& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Primitive normal of the hyperplane through the given points of Z^d, or
/// nullopt when they do not span a (d-1)-dimensional affine subspace.
inline std::optional<LatticePoint> hyperplane_normal(const std::vector<LatticePoint>& pts,
                                                     std::size_t d) {
  if (pts.empty()) return std::nullopt;
  RowSpace space;
  std::vector<LatticePoint> diffs;
  for (std::size_t i = 1; i < pts.size() && diffs.size() + 1 < d; ++i) {
    LatticePoint diff = subtract(pts[i], pts[0]);
    if (space.insert_dense(diff)) diffs.push_back(std::move(diff));
  }
  if (diffs.size() + 1 != d) return std::nullopt;
  IntegerMatrix kernel = integer_kernel(IntegerMatrix::from_rows(diffs, d));
  assert(kernel.cols() == 1);
  return kernel.col_int64(0);
}

inline std::size_t affine_rank(const std::vector<LatticePoint>& pts,
                               const std::vector<std::size_t>& ids) {
  if (ids.empty()) return 0;
  RowSpace space;
  for (std::size_t i = 1; i < ids.size(); ++i) space.insert_dense(subtract(pts[ids[i]], pts[ids[0]]));
  return space.rank();
}

struct HullFacet {
  LatticePoint normal;
  std::int64_t offset = 0;
  std::vector<std::size_t> incident;  // sorted indices of points on the facet
};

inline std::int64_t cross2(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  const __int128 v = static_cast<__int128>(a[0] - o[0]) * (b[1] - o[1]) -
                     static_cast<__int128>(a[1] - o[1]) * (b[0] - o[0]);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

/// Andrew's monotone chain on distinct points spanning the plane. Returns
/// the counterclockwise vertex cycle and the inward edge facets.
inline std::pair<std::vector<std::size_t>, std::vector<Facet>> hull_2d(
    const std::vector<LatticePoint>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  std::vector<std::size_t> chain(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i : order) {
    while (k >= 2 && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= 0) --k;
    chain[k++] = i;
  }
  for (std::size_t t = order.size() - 1, lower = k + 1; t-- > 0;) {
    const std::size_t i = order[t];
    while (k >= lower && cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= 0) --k;
    chain[k++] = i;
  }
  chain.resize(k - 1);
  std::vector<Facet> facets;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const LatticePoint& a = pts[chain[i]];
    const LatticePoint& b = pts[chain[(i + 1) % chain.size()]];
    LatticePoint normal = primitive({-(b[1] - a[1]), b[0] - a[0]});
    facets.push_back({normal, dot(normal, a)});
  }
  return {chain, facets};
}

/// Incremental (beneath-beyond) hull of distinct points affinely spanning
/// R^d, d >= 2. Every facet keeps the full list of input points lying on it,
/// which makes ridge detection a rank test on shared incidences.
inline std::vector<HullFacet> hull_incremental(const std::vector<LatticePoint>& pts, std::size_t d) {
  std::vector<std::size_t> simplex{0};
  {
    RowSpace space;
    for (std::size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i)
      if (space.insert_dense(subtract(pts[i], pts[0]))) simplex.push_back(i);
  }
  if (simplex.size() != d + 1) throw std::logic_error("hull_incremental: input not full-dimensional");

  auto make_facet = [&](std::vector<std::size_t> on, std::size_t inside) {
    std::vector<LatticePoint> face;
    for (auto i : on) face.push_back(pts[i]);
    auto normal = hyperplane_normal(face, d);
    if (!normal) throw std::logic_error("hull_incremental: degenerate facet");
    std::int64_t off = dot(*normal, face.front());
    if (dot(*normal, pts[inside]) < off) {
      *normal = negate(*normal);
      off = -off;
    }
    std::sort(on.begin(), on.end());
    return HullFacet{std::move(*normal), off, std::move(on)};
  };

  std::vector<HullFacet> facets;
  for (std::size_t omit = 0; omit <= d; ++omit) {
    std::vector<std::size_t> on;
    for (std::size_t j = 0; j <= d; ++j)
      if (j != omit) on.push_back(simplex[j]);
    facets.push_back(make_facet(on, simplex[omit]));
  }

  std::vector<bool> used(pts.size(), false);
  for (auto i : simplex) used[i] = true;

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (used[p]) continue;
    used[p] = true;
    std::vector<std::size_t> visible, hidden;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      (dot(facets[f].normal, pts[p]) < facets[f].offset ? visible : hidden).push_back(f);
    }
    std::vector<HullFacet> next;
    for (auto f : hidden) {
      HullFacet h = facets[f];
      if (dot(h.normal, pts[p]) == h.offset) {
        h.incident.insert(std::upper_bound(h.incident.begin(), h.incident.end(), p), p);
      }
      next.push_back(std::move(h));
    }
    if (!visible.empty()) {
      for (auto v : visible)
        for (auto w : hidden) {
          std::vector<std::size_t> ridge;
          std::set_intersection(facets[v].incident.begin(), facets[v].incident.end(),
                                facets[w].incident.begin(), facets[w].incident.end(),
                                std::back_inserter(ridge));
          if (ridge.size() + 1 < d || affine_rank(pts, ridge) != d - 2) continue;
          std::size_t inside = facets[v].incident.front();
          for (auto q : facets[v].incident)
            if (!std::binary_search(ridge.begin(), ridge.end(), q)) {
              inside = q;
              break;
            }
          ridge.push_back(p);
          next.push_back(make_facet(ridge, inside));
        }
    }
    // Merge coplanar facets produced from neighbouring ridges.
    std::sort(next.begin(), next.end(), [](const HullFacet& a, const HullFacet& b) {
      return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
    });
    facets.clear();
    for (auto& h : next) {
      if (!facets.empty() && facets.back().normal == h.normal && facets.back().offset == h.offset) {
        std::vector<std::size_t> merged;
        std::set_union(facets.back().incident.begin(), facets.back().incident.end(),
                       h.incident.begin(), h.incident.end(), std::back_inserter(merged));
        facets.back().incident = std::move(merged);
      } else {
        facets.push_back(std::move(h));
      }
    }
  }
  return facets;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// LatticePolytope

class LatticePolytope;
inline LatticePolytope hull(const std::vector<LatticePoint>& points);
inline LatticePolytope dilate(const LatticePolytope& p, std::int64_t nu);

/// Convex lattice polytope with both representations. The H-representation
/// is the facet list (irredundant within the affine span) plus the affine
/// span equations; vertices are exactly the extreme points, sorted.
class LatticePolytope {
 public:
  LatticePolytope() = default;

  static LatticePolytope empty(std::size_t dim) {
    LatticePolytope p;
    p.dim_ = dim;
    p.affine_dim_ = -1;
    return p;
  }

  std::size_t dim() const noexcept { return dim_; }
  /// Dimension of the affine span; -1 for the empty polytope.
  int affine_dim() const noexcept { return affine_dim_; }
  bool is_empty() const noexcept { return vertices_.empty(); }
  bool full_dimensional() const noexcept {
    return affine_dim_ == static_cast<int>(dim_) && dim_ > 0;
  }

  const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const std::vector<AffineEquation>& equations() const noexcept { return equations_; }

  bool contains(const LatticePoint& m) const {
    if (is_empty() || m.size() != dim_) return false;
    for (const auto& e : equations_)
      if (dot128(e.normal, m) != e.value) return false;
    for (const auto& f : facets_)
      if (dot128(f.normal, m) < f.offset) return false;
    return true;
  }

  /// Minimum of <m, direction> over the polytope.
  std::int64_t support_min(const LatticePoint& direction) const {
    if (is_empty()) throw DomainError("empty_polytope", "support function of an empty polytope");
    __int128 best = dot128(direction, vertices_.front());
    for (const auto& v : vertices_) best = std::min(best, dot128(direction, v));
    return to_int64(best);
  }

  std::vector<detail::LinearBound> constraints() const {
    std::vector<detail::LinearBound> out;
    for (const auto& e : equations_) out.push_back({e.normal, e.value, true});
    for (const auto& f : facets_) out.push_back({f.normal, f.offset, false});
    return out;
  }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  friend LatticePolytope hull(const std::vector<LatticePoint>& points);
  friend LatticePolytope dilate(const LatticePolytope& p, std::int64_t nu);

  std::size_t dim_ = 0;
  int affine_dim_ = -1;
  std::vector<LatticePoint> vertices_;
  std::vector<Facet> facets_;
  std::vector<AffineEquation> equations_;
};

/// Convex hull of a nonempty lattice point set. Lower-dimensional inputs are
/// handled by projecting onto coordinates that are injective on the affine
/// span and carrying the span's equations explicitly.
inline LatticePolytope hull(const std::vector<LatticePoint>& points) {
  if (points.empty()) throw DomainError("empty_input", "hull of an empty point set");
  const std::size_t r = points.front().size();
  for (const auto& p : points)
    if (p.size() != r) throw DomainError("dimension_mismatch", "points of different dimensions");

  std::vector<LatticePoint> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LatticePolytope out;
  out.dim_ = r;

  // Affine span: greedy independent differences; pivot columns give an
  // injective coordinate projection.
  RowSpace span;
  std::vector<LatticePoint> span_basis;
  for (std::size_t i = 1; i < pts.size() && span_basis.size() < r; ++i) {
    LatticePoint diff = subtract(pts[i], pts[0]);
    if (span.insert_dense(diff)) span_basis.push_back(std::move(diff));
  }
  const std::size_t k = span_basis.size();
  out.affine_dim_ = static_cast<int>(k);
  const std::vector<std::size_t> pivots = span.pivot_columns();

  if (k < r) {
    IntegerMatrix kernel = integer_kernel(IntegerMatrix::from_rows(span_basis, r));
    for (std::size_t c = 0; c < kernel.cols(); ++c) {
      LatticePoint n = kernel.col_int64(c);
      out.equations_.push_back({n, dot(n, pts[0])});
    }
  }

  auto lift = [&](const LatticePoint& projected) {
    LatticePoint n(r, 0);
    for (std::size_t i = 0; i < k; ++i) n[pivots[i]] = projected[i];
    return n;
  };
  std::vector<LatticePoint> proj(pts.size(), LatticePoint(k));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) proj[i][j] = pts[i][pivots[j]];

  std::vector<std::size_t> vertex_ids;
  if (k == 0) {
    vertex_ids = {0};
  } else if (k == 1) {
    auto [mn, mx] = std::minmax_element(proj.begin(), proj.end());
    const auto imin = static_cast<std::size_t>(mn - proj.begin());
    const auto imax = static_cast<std::size_t>(mx - proj.begin());
    vertex_ids = {imin, imax};
    out.facets_.push_back({lift({1}), (*mn)[0]});
    out.facets_.push_back({lift({-1}), -(*mx)[0]});
  } else if (k == 2) {
    auto [ids, facets] = detail::hull_2d(proj);
    vertex_ids = ids;
    for (auto& f : facets) out.facets_.push_back({lift(f.normal), f.offset});
  } else {
    auto facets = detail::hull_incremental(proj, k);
    std::vector<std::vector<LatticePoint>> tight(pts.size());
    for (const auto& f : facets) {
      out.facets_.push_back({lift(f.normal), f.offset});
      for (auto i : f.incident) tight[i].push_back(f.normal);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (tight[i].size() >= k && rank_of_vectors(tight[i]) == k) vertex_ids.push_back(i);
  }

  for (auto i : vertex_ids) out.vertices_.push_back(pts[i]);
  std::sort(out.vertices_.begin(), out.vertices_.end());
  out.vertices_.erase(std::unique(out.vertices_.begin(), out.vertices_.end()), out.vertices_.end());
  std::sort(out.facets_.begin(), out.facets_.end());
  return out;
}

inline LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.dim() != q.dim()) throw DomainError("dimension_mismatch", "Minkowski sum of polytopes in different dimensions");
  if (p.is_empty() || q.is_empty()) return LatticePolytope::empty(p.dim());
  std::vector<LatticePoint> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(add(a, b));
  return hull(sums);
}

inline LatticePolytope dilate(const LatticePolytope& p, std::int64_t nu) {
  if (nu <= 0) throw DomainError("invalid_argument", "dilation factor must be positive");
  LatticePolytope out = p;
  for (auto& v : out.vertices_) v = scale(v, nu);
  for (auto& f : out.facets_) f.offset = checked_mul(f.offset, nu);
  for (auto& e : out.equations_) e.value = checked_mul(e.value, nu);
  return out;
}

/// M cap P in lexicographic order.
inline std::vector<LatticePoint> lattice_points(const LatticePolytope& p) {
  std::vector<LatticePoint> out;
  if (p.is_empty()) return out;
  LatticePoint lo = p.vertices().front(), hi = lo;
  for (const auto& v : p.vertices())
    for (std::size_t i = 0; i < v.size(); ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  detail::enumerate_lattice(p.constraints(), lo, hi,
                            [&](const LatticePoint& x) { out.push_back(x); });
  return out;
}

/// Pairwise sums {a + b}, deduplicated and sorted.
inline std::vector<LatticePoint> sumset(const std::vector<LatticePoint>& a,
                                        const std::vector<LatticePoint>& b) {
  std::vector<LatticePoint> out;
  if (a.empty() || b.empty()) return out;
  if (a.front().size() != b.front().size()) {
    throw DomainError("dimension_mismatch", "sumset of point sets in different dimensions");
  }
  std::unordered_set<LatticePoint, PointHash> seen;
  for (const auto& x : a)
    for (const auto& y : b) {
      LatticePoint s = add(x, y);
      if (seen.insert(s).second) out.push_back(std::move(s));
    }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sumset equality checks

struct SumsetReport {
  bool equal = true;
  std::size_t sumsetSize = 0;
  std::size_t targetSize = 0;
  std::vector<LatticePoint> missing;  // lexicographic
};

namespace detail {

// For each target point t decides whether t - a lies in `b` for some a in
// `a`. Only valid when the sumset is known to lie inside the target (true
// for lattice points of P, Q and P + Q), which makes
// sumsetSize = targetSize - |missing|.
inline SumsetReport compare_sumset(const std::vector<LatticePoint>& a,
                                   const std::vector<LatticePoint>& b,
                                   const std::vector<LatticePoint>& target) {
  SumsetReport report;
  report.targetSize = target.size();
  const PointIndex index(b);
  std::size_t hint = 0;
  for (const auto& t : target) {
    bool hit = false;
    if (!a.empty() && index.contains(subtract(t, a[hint]))) hit = true;
    for (std::size_t i = 0; i < a.size() && !hit; ++i) {
      if (index.contains(subtract(t, a[i]))) {
        hint = i;
        hit = true;
      }
    }
    if (!hit) report.missing.push_back(t);
  }
  report.sumsetSize = report.targetSize - report.missing.size();
  report.equal = report.missing.empty();
  return report;
}

}  // namespace detail

/// (M cap P) + (M cap Q) against M cap (P + Q).
inline SumsetReport problem1_check(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.dim() != q.dim()) throw DomainError("dimension_mismatch", "polytopes in different dimensions");
  return detail::compare_sumset(lattice_points(p), lattice_points(q),
                                lattice_points(minkowski_sum(p, q)));
}

struct IdpEntry {
  std::int64_t nu = 0;
  SumsetReport report;
};

/// Smallest dilation bound worth scanning by default: max(1, r - 1).
inline std::int64_t default_idp_nu_max(const LatticePolytope& p) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(p.dim()) - 1);
}

/// (M cap P) + (M cap nu P) against M cap (nu + 1) P for nu = 1..nu_max.
inline std::vector<IdpEntry> idp_check(const LatticePolytope& p, std::int64_t nu_max) {
  if (nu_max < 1) throw DomainError("invalid_argument", "nu_max must be at least 1");
  std::vector<IdpEntry> out;
  const auto base = lattice_points(p);
  auto current = base;
  for (std::int64_t nu = 1; nu <= nu_max; ++nu) {
    auto next = lattice_points(dilate(p, nu + 1));
    out.push_back({nu, detail::compare_sumset(base, current, next)});
    current = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// H-described polytopes

/// Vertices of {m : <m, n_j> >= offset_j}, computed exactly from every
/// r-subset of independent constraints. Sorted and deduplicated.
inline std::vector<RationalVector> hrep_vertices(const std::vector<Facet>& halfspaces,
                                                 std::size_t dim) {
  std::set<RationalVector> found;
  detail::for_each_combination(halfspaces.size(), dim, [&](const std::vector<std::size_t>& idx) {
    std::vector<RationalVector> a(dim, RationalVector(dim));
    RationalVector b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) a[i][j] = halfspaces[idx[i]].normal[j];
      b[i] = halfspaces[idx[i]].offset;
    }
    auto x = solve_square(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& h : halfspaces) {
      Rational s = 0;
      for (std::size_t j = 0; j < dim; ++j) s += (*x)[j] * h.normal[j];
      if (s < h.offset) return;
    }
    found.insert(std::move(*x));
  });
  return {found.begin(), found.end()};
}

/// True when the recession cone {x : <x, n_j> >= 0} is {0}.
inline bool hrep_bounded(const std::vector<Facet>& halfspaces, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i)
    for (int s : {1, -1}) {
      std::vector<LinearConstraint> sys;
      for (const auto& h : halfspaces) {
        RationalVector c(h.normal.begin(), h.normal.end());
        sys.push_back({std::move(c), Relation::GreaterEqual, 0});
      }
      RationalVector e(dim);
      e[i] = s;
      sys.push_back({std::move(e), Relation::GreaterEqual, 1});
      if (rational_feasible(sys, dim).feasible) return false;
    }
  return true;
}

namespace detail {

// Caller guarantees boundedness.
inline std::vector<LatticePoint> bounded_hrep_lattice_points(const std::vector<Facet>& halfspaces,
                                                             std::size_t dim) {
  std::vector<LatticePoint> out;
  const auto verts = hrep_vertices(halfspaces, dim);
  if (verts.empty()) return out;
  LatticePoint lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Rational mn = verts.front()[i], mx = mn;
    for (const auto& v : verts) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = to_int64(ceil_of(mn));
    hi[i] = to_int64(floor_of(mx));
    if (lo[i] > hi[i]) return out;
  }
  std::vector<detail::LinearBound> bounds;
  for (const auto& h : halfspaces) bounds.push_back({h.normal, h.offset, false});
  detail::enumerate_lattice(bounds, lo, hi, [&](const LatticePoint& x) { out.push_back(x); });
  return out;
}

}  // namespace detail

/// Lattice points of a bounded H-described polytope, lexicographic.
inline std::vector<LatticePoint> hrep_lattice_points(const std::vector<Facet>& halfspaces,
                                                     std::size_t dim) {
  if (!hrep_bounded(halfspaces, dim)) {
    throw DomainError("unbounded", "half-space system does not define a bounded polytope");
  }
  return detail::bounded_hrep_lattice_points(halfspaces, dim);
}

}  // namespace latsum
