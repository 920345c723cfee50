#pragma once

// Complete fans, torus-invariant divisors, divisor polytopes and the
// nef/ample tests via local sections m_sigma on each maximal cone.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latsum/cone.hpp"
#include "latsum/error.hpp"
#include "latsum/exactlin.hpp"
#include "latsum/polytope.hpp"

namespace latsum {

/// D = sum a_j D_j over the rays of a fan; an element of M~ (effective when
/// all a_j >= 0).
struct TorusDivisor {
  std::vector<std::int64_t> coefficients;

  TorusDivisor() = default;
  explicit TorusDivisor(std::vector<std::int64_t> a) : coefficients(std::move(a)) {}
  TorusDivisor(std::initializer_list<std::int64_t> a) : coefficients(a) {}

  static TorusDivisor zero(std::size_t l) { return TorusDivisor(std::vector<std::int64_t>(l, 0)); }
  static TorusDivisor unit(std::size_t l, std::size_t j) {
    auto d = zero(l);
    d.coefficients[j] = 1;
    return d;
  }

  std::size_t size() const noexcept { return coefficients.size(); }
  std::int64_t operator[](std::size_t j) const { return coefficients[j]; }

  bool effective() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](auto a) { return a >= 0; });
  }

  friend TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b) {
    if (a.size() != b.size()) throw DomainError("dimension_mismatch", "divisors over different ray sets");
    return TorusDivisor(add(a.coefficients, b.coefficients));
  }
  friend TorusDivisor operator-(const TorusDivisor& a, const TorusDivisor& b) {
    if (a.size() != b.size()) throw DomainError("dimension_mismatch", "divisors over different ray sets");
    return TorusDivisor(subtract(a.coefficients, b.coefficients));
  }
  friend auto operator<=>(const TorusDivisor&, const TorusDivisor&) = default;
};

class Fan {
 public:
  Fan() = default;

  /// Validates rays (nonzero, primitive, distinct) and maximal cones
  /// (full-dimensional, pointed, listed rays are exactly the extreme rays),
  /// then runs the completeness check.
  Fan(std::size_t dim, std::vector<LatticePoint> rays, std::vector<std::vector<std::size_t>> cones)
      : dim_(dim), rays_(std::move(rays)), cones_(std::move(cones)) {
    if (dim_ == 0) throw DomainError("invalid_fan", "fan dimension must be positive");
    for (std::size_t j = 0; j < rays_.size(); ++j) {
      const auto& n = rays_[j];
      if (n.size() != dim_) throw DomainError("dimension_mismatch", "ray of wrong dimension");
      if (!is_primitive(n)) throw DomainError("invalid_fan", "ray generators must be primitive and nonzero");
      for (std::size_t i = 0; i < j; ++i)
        if (rays_[i] == n) throw DomainError("invalid_fan", "duplicate ray");
    }
    if (cones_.empty()) throw DomainError("invalid_fan", "fan without maximal cones");
    for (auto& cone : cones_) {
      std::sort(cone.begin(), cone.end());
      cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
      std::vector<LatticePoint> gens;
      for (auto j : cone) {
        if (j >= rays_.size()) throw DomainError("invalid_fan", "cone references unknown ray");
        gens.push_back(rays_[j]);
      }
      if (gens.empty() || rank_of_vectors(gens) != dim_) {
        throw DomainError("invalid_fan", "maximal cones must be full-dimensional");
      }
      auto facets = cone_facets(gens, dim_);
      if (!cone_is_pointed(facets, dim_)) throw DomainError("invalid_fan", "cone is not pointed");
      if (extreme_generators(gens, facets, dim_).size() != gens.size()) {
        throw DomainError("invalid_fan", "cone lists a ray that is not extreme");
      }
      for (auto& f : facets)
        for (auto& g : f.generators) g = cone[g];
      facets_.push_back(std::move(facets));
    }
    check_completeness();
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_rays() const noexcept { return rays_.size(); }
  const std::vector<LatticePoint>& rays() const noexcept { return rays_; }
  const std::vector<std::vector<std::size_t>>& cones() const noexcept { return cones_; }
  /// Facets of maximal cone i; generator indices refer to the fan's rays.
  const std::vector<ConeFacet>& cone_facets_of(std::size_t i) const { return facets_.at(i); }

  bool complete() const noexcept { return complete_; }
  const std::string& completeness_issue() const noexcept { return issue_; }

  bool cone_contains(std::size_t i, const LatticePoint& x) const {
    for (const auto& f : facets_[i])
      if (dot128(f.normal, x) < 0) return false;
    return true;
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

 private:
  // Every facet of every maximal cone must be shared, with opposite normal,
  // by exactly one other maximal cone. Deterministic sample points then
  // certify coverage: each lies in some cone and in at most one interior.
  void check_completeness() {
    for (std::size_t i = 0; i < cones_.size(); ++i)
      for (const auto& f : facets_[i]) {
        std::size_t partners = 0;
        for (std::size_t k = 0; k < cones_.size(); ++k) {
          if (k == i) continue;
          for (const auto& g : facets_[k])
            if (g.generators == f.generators && g.normal == negate(f.normal)) ++partners;
        }
        if (partners != 1) {
          issue_ = "facet of cone " + std::to_string(i) + " is shared by " + std::to_string(partners) +
                   " other cones";
          return;
        }
      }
    std::uint64_t state = 0x2545F4914F6CDD1Dull;
    for (int s = 0; s < 64; ++s) {
      LatticePoint x(dim_);
      for (auto& c : x) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        c = static_cast<std::int64_t>((state >> 33) % 195) - 97;
      }
      std::size_t inside = 0, interior = 0;
      for (std::size_t i = 0; i < cones_.size(); ++i) {
        if (!cone_contains(i, x)) continue;
        ++inside;
        bool strict = std::all_of(facets_[i].begin(), facets_[i].end(),
                                  [&](const ConeFacet& f) { return dot128(f.normal, x) > 0; });
        if (strict) ++interior;
      }
      if (inside == 0 || interior > 1) {
        issue_ = "sample point not covered exactly once";
        return;
      }
    }
    complete_ = true;
  }

  std::size_t dim_ = 0;
  std::vector<LatticePoint> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  std::vector<std::vector<ConeFacet>> facets_;
  bool complete_ = false;
  std::string issue_;
};

/// Rays are the primitive inward facet normals of p (in p's facet order);
/// maximal cones are the vertex normal cones.
inline Fan normal_fan(const LatticePolytope& p) {
  if (!p.full_dimensional()) throw DomainError("not_full_dimensional", "normal fan needs a full-dimensional polytope");
  std::vector<LatticePoint> rays;
  for (const auto& f : p.facets()) rays.push_back(f.normal);
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& v : p.vertices()) {
    std::vector<std::size_t> cone;
    for (std::size_t j = 0; j < p.facets().size(); ++j)
      if (dot(p.facets()[j].normal, v) == p.facets()[j].offset) cone.push_back(j);
    cones.push_back(std::move(cone));
  }
  return Fan(p.dim(), std::move(rays), std::move(cones));
}

/// Fan of projective r-space: rays e_1..e_r and -(e_1+..+e_r), cones all
/// r-subsets of rays.
inline Fan projective_space_fan(std::size_t r) {
  std::vector<LatticePoint> rays;
  for (std::size_t i = 0; i < r; ++i) {
    LatticePoint e(r, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.emplace_back(r, -1);
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t omit = 0; omit <= r; ++omit) {
    std::vector<std::size_t> c;
    for (std::size_t j = 0; j <= r; ++j)
      if (j != omit) c.push_back(j);
    cones.push_back(c);
  }
  return Fan(r, std::move(rays), std::move(cones));
}

namespace detail {

inline std::vector<Facet> divisor_halfspaces(const std::vector<LatticePoint>& rays, const TorusDivisor& d) {
  if (d.size() != rays.size()) throw DomainError("dimension_mismatch", "divisor length differs from ray count");
  std::vector<Facet> hs;
  for (std::size_t j = 0; j < rays.size(); ++j) hs.push_back({rays[j], -d[j]});
  return hs;
}

}  // namespace detail

/// Lattice points of P_D = {m : <m, n_j> >= -a_j} straight from the
/// inequalities (vertices of P_D may be rational).
inline std::vector<LatticePoint> divisor_lattice_points(const std::vector<LatticePoint>& rays,
                                                        std::size_t dim, const TorusDivisor& d) {
  return hrep_lattice_points(detail::divisor_halfspaces(rays, d), dim);
}

/// P_D as a lattice polytope. Throws "non_lattice_polytope" when a vertex of
/// P_D is not integral (possible for non-Cartier divisors).
inline LatticePolytope divisor_polytope(const Fan& f, const TorusDivisor& d) {
  auto hs = detail::divisor_halfspaces(f.rays(), d);
  if (!f.complete() && !hrep_bounded(hs, f.dim())) {
    throw DomainError("unbounded", "divisor polytope is unbounded on this fan");
  }
  auto verts = hrep_vertices(hs, f.dim());
  if (verts.empty()) return LatticePolytope::empty(f.dim());
  std::vector<LatticePoint> pts;
  for (const auto& v : verts) {
    LatticePoint p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_integral(v[i])) throw DomainError("non_lattice_polytope", "divisor polytope has a non-lattice vertex");
      p[i] = to_int64(boost::multiprecision::numerator(v[i]));
    }
    pts.push_back(std::move(p));
  }
  return hull(pts);
}

/// a_j = -min_{m in p} <m, n_j>. Requires that f refines the normal fan of
/// p, checked by the round trip divisor_polytope(f, D) == p.
inline TorusDivisor polytope_divisor(const Fan& f, const LatticePolytope& p) {
  if (p.dim() != f.dim()) throw DomainError("dimension_mismatch", "polytope and fan dimensions differ");
  if (p.is_empty()) throw DomainError("empty_polytope", "empty polytope has no divisor");
  TorusDivisor d = TorusDivisor::zero(f.num_rays());
  for (std::size_t j = 0; j < f.num_rays(); ++j) d.coefficients[j] = -p.support_min(f.rays()[j]);
  std::optional<LatticePolytope> back;
  try {
    back = divisor_polytope(f, d);
  } catch (const DomainError&) {
  }
  if (!back || !(*back == p)) {
    throw DomainError("not_refined", "fan does not refine the normal fan of the polytope");
  }
  return d;
}

struct NefVerdict {
  bool nef = false;
  std::vector<RationalVector> sections;   // m_sigma per maximal cone when nef
  std::optional<std::size_t> failingCone;  // first cone without a section
};

struct AmpleVerdict {
  bool ample = false;
  std::vector<RationalVector> sections;
  std::optional<std::size_t> failingCone;
};

namespace detail {

inline std::optional<RationalVector> local_section(const Fan& f, const TorusDivisor& d,
                                                   std::size_t cone, bool strict) {
  std::vector<LinearConstraint> sys;
  const auto& members = f.cones()[cone];
  for (std::size_t j = 0; j < f.num_rays(); ++j) {
    RationalVector c(f.rays()[j].begin(), f.rays()[j].end());
    const bool in = std::binary_search(members.begin(), members.end(), j);
    const Relation rel = in ? Relation::Equal : (strict ? Relation::Greater : Relation::GreaterEqual);
    sys.push_back({std::move(c), rel, Rational(-d[j])});
  }
  auto res = rational_feasible(sys, f.dim());
  if (!res.feasible) return std::nullopt;
  return res.witness;
}

inline void require_complete(const Fan& f, const TorusDivisor& d) {
  if (!f.complete()) throw DomainError("incomplete_fan", "fan is not complete: " + f.completeness_issue());
  if (d.size() != f.num_rays()) throw DomainError("dimension_mismatch", "divisor length differs from ray count");
}

}  // namespace detail

/// D is nef iff each maximal cone sigma carries m_sigma with
/// <m_sigma, n_j> = -a_j on sigma and >= -a_j on every ray.
inline NefVerdict is_nef(const Fan& f, const TorusDivisor& d) {
  detail::require_complete(f, d);
  NefVerdict v;
  for (std::size_t c = 0; c < f.cones().size(); ++c) {
    auto m = detail::local_section(f, d, c, false);
    if (!m) {
      v.failingCone = c;
      v.sections.clear();
      return v;
    }
    v.sections.push_back(std::move(*m));
  }
  v.nef = true;
  return v;
}

/// Ample: local sections exist with strict inequality off sigma, and the
/// sections are pairwise distinct.
inline AmpleVerdict is_ample(const Fan& f, const TorusDivisor& d) {
  detail::require_complete(f, d);
  AmpleVerdict v;
  for (std::size_t c = 0; c < f.cones().size(); ++c) {
    auto m = detail::local_section(f, d, c, true);
    if (!m) {
      v.failingCone = c;
      v.sections.clear();
      return v;
    }
    v.sections.push_back(std::move(*m));
  }
  for (std::size_t a = 0; a < v.sections.size(); ++a)
    for (std::size_t b = a + 1; b < v.sections.size(); ++b)
      if (v.sections[a] == v.sections[b]) {
        v.failingCone = b;
        v.sections.clear();
        return v;
      }
  v.ample = true;
  return v;
}

}  // namespace latsum
