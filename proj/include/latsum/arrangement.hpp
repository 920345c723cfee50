#pragma once

// The central hyperplane arrangement {n_j^perp} in M_R: chambers, Hilbert
// bases of their lattice semigroups, the binomial generators they yield for
// the diagonal ideal I and for Omega, and degree-wise generation checks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latsum/cone.hpp"
#include "latsum/coxring.hpp"
#include "latsum/error.hpp"
#include "latsum/exactlin.hpp"
#include "latsum/gale.hpp"
#include "latsum/polytope.hpp"

namespace latsum {

struct Chamber {
  std::string signs;                  // '+' or '-' per ray: sign of <m, n_j> inside
  RationalVector witness;             // interior point
  std::vector<LatticePoint> facetNormals;  // inward, primitive, irredundant
  std::vector<LatticePoint> extremeRays;
  std::vector<LatticePoint> hilbertBasis;
};

/// Generator attached to a lattice point m. The same data is read either as
/// x^{D+} (x) x^{D-} - x^{D-} (x) x^{D+} in S (x) S, or as
/// x^{D+} dx^{D-} - x^{D-} dx^{D+} in Omega_S^1.
enum class BinomialReading { DiagonalIdeal, Differential };

struct BinomialGenerator {
  LatticePoint m;
  TorusDivisor dPlus, dMinus;
  BinomialReading reading = BinomialReading::DiagonalIdeal;
};

namespace detail {

// Orientation with first nonzero coordinate positive.
inline LatticePoint canonical_orientation(LatticePoint v) {
  for (auto c : v) {
    if (c > 0) return v;
    if (c < 0) return negate(v);
  }
  return v;
}

inline LinearConstraint strict_side(const LatticePoint& h, int sign) {
  RationalVector c;
  for (auto x : h) c.emplace_back(sign * x);
  return {std::move(c), Relation::Greater, 0};
}

inline int sign_at(const LatticePoint& h, const RationalVector& w) {
  Rational s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) s += w[i] * h[i];
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

/// Hilbert basis of the pointed full-dimensional cone {x : <u, x> >= 0}.
/// Every irreducible element lies in the zonotope sum [0,1] v_i over the
/// extreme rays, so candidates come from its bounding box. Candidates are
/// processed by increasing degree <w, x> with w the sum of the facet normals
/// (positive on the cone minus the origin); x is kept unless x - h lies in
/// the cone for an already kept h.
inline std::vector<LatticePoint> hilbert_basis_hrep(const std::vector<LatticePoint>& normals,
                                                    const std::vector<LatticePoint>& extreme,
                                                    std::size_t dim) {
  LatticePoint lo(dim, 0), hi(dim, 0), w(dim, 0);
  for (const auto& v : extreme)
    for (std::size_t i = 0; i < dim; ++i) {
      if (v[i] < 0) lo[i] = checked_add(lo[i], v[i]);
      else hi[i] = checked_add(hi[i], v[i]);
    }
  for (const auto& u : normals) w = add(w, u);
  std::vector<LinearBound> bounds;
  for (const auto& u : normals) bounds.push_back({u, 0, false});
  std::vector<std::pair<std::int64_t, LatticePoint>> cand;
  enumerate_lattice(bounds, lo, hi, [&](const LatticePoint& x) {
    const auto deg = dot(w, x);
    if (deg > 0) cand.emplace_back(deg, x);
  });
  std::sort(cand.begin(), cand.end());
  auto in_cone = [&](const LatticePoint& x) {
    return std::all_of(normals.begin(), normals.end(), [&](const LatticePoint& u) { return dot128(u, x) >= 0; });
  };
  std::vector<LatticePoint> basis;
  for (const auto& [deg, x] : cand) {
    bool reducible = false;
    for (const auto& h : basis) {
      if (dot(w, h) >= deg) break;
      if (in_cone(subtract(x, h))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace detail

/// Minimal generating set of the semigroup of lattice points of the cone
/// generated by `generators` (full-dimensional and pointed).
inline std::vector<LatticePoint> hilbert_basis(const std::vector<LatticePoint>& generators) {
  if (generators.empty()) throw DomainError("not_full_dimensional", "empty cone");
  const std::size_t dim = generators.front().size();
  auto facets = cone_facets(generators, dim);
  if (!cone_is_pointed(facets, dim)) throw DomainError("non_pointed", "cone contains a line");
  std::vector<LatticePoint> normals, extreme;
  for (const auto& f : facets) normals.push_back(f.normal);
  for (auto i : extreme_generators(generators, facets, dim)) extreme.push_back(primitive(generators[i]));
  return detail::hilbert_basis_hrep(normals, extreme, dim);
}

/// All chambers of the arrangement, ordered by sign vector ('+' before '-').
/// Hyperplanes are inserted one at a time; a region is split when both open
/// sides of the new hyperplane meet it.
inline std::vector<Chamber> chambers(const std::vector<LatticePoint>& rays) {
  if (rays.empty()) throw DomainError("not_spanning", "empty ray configuration");
  const std::size_t r = rays.front().size();
  for (const auto& n : rays)
    if (n.size() != r) throw DomainError("dimension_mismatch", "rays of different dimensions");
  if (rank_of_vectors(rays) != r) throw DomainError("not_spanning", "rays do not span the ambient space");

  std::vector<LatticePoint> planes;
  for (const auto& n : rays) {
    auto h = detail::canonical_orientation(primitive(n));
    if (std::find(planes.begin(), planes.end(), h) == planes.end()) planes.push_back(h);
  }

  struct Region {
    std::vector<int> sides;  // per inserted plane
    RationalVector witness;
  };
  std::vector<Region> regions{{{}, RationalVector(r, 0)}};
  for (std::size_t k = 0; k < planes.size(); ++k) {
    std::vector<Region> next;
    for (auto& reg : regions) {
      std::vector<LinearConstraint> sys;
      for (std::size_t i = 0; i < k; ++i) sys.push_back(detail::strict_side(planes[i], reg.sides[i]));
      const int known = detail::sign_at(planes[k], reg.witness);
      for (int s : {1, -1}) {
        Region child{reg.sides, {}};
        child.sides.push_back(s);
        if (known == s) {
          child.witness = reg.witness;
        } else {
          auto trial = sys;
          trial.push_back(detail::strict_side(planes[k], s));
          auto res = rational_feasible(trial, r);
          if (!res.feasible) continue;
          child.witness = std::move(res.witness);
        }
        next.push_back(std::move(child));
      }
    }
    regions = std::move(next);
  }

  std::vector<Chamber> out;
  for (const auto& reg : regions) {
    Chamber ch;
    ch.witness = reg.witness;
    for (const auto& n : rays) ch.signs.push_back(detail::sign_at(n, reg.witness) > 0 ? '+' : '-');
    for (std::size_t k = 0; k < planes.size(); ++k) {
      std::vector<LinearConstraint> sys;
      for (std::size_t i = 0; i < planes.size(); ++i) {
        if (i == k) continue;
        sys.push_back(detail::strict_side(planes[i], reg.sides[i]));
      }
      RationalVector eq(planes[k].begin(), planes[k].end());
      sys.push_back({std::move(eq), Relation::Equal, 0});
      if (rational_feasible(sys, r).feasible) ch.facetNormals.push_back(scale(planes[k], reg.sides[k]));
    }
    std::sort(ch.facetNormals.begin(), ch.facetNormals.end());
    ch.extremeRays = cone_extreme_rays(ch.facetNormals, r);
    ch.hilbertBasis = detail::hilbert_basis_hrep(ch.facetNormals, ch.extremeRays, r);
    out.push_back(std::move(ch));
  }
  std::sort(out.begin(), out.end(), [](const Chamber& a, const Chamber& b) { return a.signs < b.signs; });
  return out;
}

/// Union of the chamber Hilbert bases up to m <-> -m, each m paired with
/// its zero and polar divisors. Sorted by m.
inline std::vector<BinomialGenerator> diagonal_generators(const std::vector<Chamber>& chs,
                                                          const GaleData& g) {
  std::set<LatticePoint> ms;
  for (const auto& ch : chs)
    for (const auto& h : ch.hilbertBasis) ms.insert(detail::canonical_orientation(h));
  std::vector<BinomialGenerator> out;
  for (const auto& m : ms) {
    auto [p, q] = plus_minus_parts(g, m);
    out.push_back({m, std::move(p), std::move(q), BinomialReading::DiagonalIdeal});
  }
  return out;
}

inline std::vector<BinomialGenerator> diagonal_generators(const std::vector<LatticePoint>& rays) {
  return diagonal_generators(chambers(rays), GaleData(rays));
}

inline std::vector<BinomialGenerator> omega_generators(const std::vector<LatticePoint>& rays) {
  auto gens = diagonal_generators(rays);
  for (auto& g : gens) g.reading = BinomialReading::Differential;
  return gens;
}

// ---------------------------------------------------------------------------
// Degree-wise verification

struct GenerationVerdict {
  bool equal = false;
  std::size_t expectedDim = 0;   // dimension of the graded piece itself
  std::size_t generatedDim = 0;  // rank of the multiples of the generators
  std::size_t multiples = 0;     // number of monomial multiples examined
};

namespace detail {

inline std::int64_t total_degree(const ClassElement& c) {
  std::int64_t s = 0;
  for (auto x : c.free) s += x < 0 ? -x : x;
  return s;
}

inline std::size_t index_of(const std::vector<TorusDivisor>& sorted, const TorusDivisor& d) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), d);
  if (it == sorted.end() || !(*it == d)) throw std::logic_error("monomial outside its graded piece");
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace detail

/// Bidegree (alpha, beta) piece of the diagonal ideal: dim S_alpha dim S_beta
/// minus the number of distinct products, against the rank of all
/// (x^A (x) x^B) g with g a generator.
inline GenerationVerdict verify_generation_at_degree(const CoxRing& ring, const std::vector<BinomialGenerator>& gens,
                                                     const ClassElement& alpha, const ClassElement& beta,
                                                     std::int64_t max_total_degree) {
  const auto& g = ring.gale();
  g.validate(alpha);
  g.validate(beta);
  if (detail::total_degree(alpha) + detail::total_degree(beta) > max_total_degree) {
    throw DomainError("degree_out_of_bound", "bidegree exceeds the configured total-degree bound");
  }
  const auto sa = monomial_basis(ring, alpha).monomials;
  const auto sb = monomial_basis(ring, beta).monomials;
  std::set<TorusDivisor> products;
  for (const auto& d : sa)
    for (const auto& e : sb) products.insert(d + e);
  GenerationVerdict v;
  v.expectedDim = sa.size() * sb.size() - products.size();

  RowSpace space;
  for (const auto& gen : gens) {
    const auto gamma = g.class_of(gen.dPlus);
    const auto sa_rest = monomial_basis(ring, g.add(alpha, g.negate(gamma))).monomials;
    if (sa_rest.empty()) continue;
    const auto sb_rest = monomial_basis(ring, g.add(beta, g.negate(gamma))).monomials;
    for (const auto& a : sa_rest)
      for (const auto& b : sb_rest) {
        ++v.multiples;
        const auto i1 = detail::index_of(sa, a + gen.dPlus) * sb.size() + detail::index_of(sb, b + gen.dMinus);
        const auto i2 = detail::index_of(sa, a + gen.dMinus) * sb.size() + detail::index_of(sb, b + gen.dPlus);
        RowSpace::SparseRow row;
        row.emplace(i1, Rational(1));
        row[i2] -= 1;
        space.insert(std::move(row));
      }
  }
  v.generatedDim = space.rank();
  v.equal = v.generatedDim == v.expectedDim;
  return v;
}

/// Degree-alpha piece of Omega (kernel of the Euler map) against the rank of
/// the multiples x^A (x^{D+} dx^{D-} - x^{D-} dx^{D+}). The generator has
/// coefficient D-_j - D+_j at x^{D+ + D- - D_j} dx_j.
inline GenerationVerdict verify_generation_at_degree(const CoxRing& ring, const std::vector<BinomialGenerator>& gens,
                                                     const ClassElement& alpha, std::int64_t max_total_degree) {
  const auto& g = ring.gale();
  g.validate(alpha);
  if (detail::total_degree(alpha) > max_total_degree) {
    throw DomainError("degree_out_of_bound", "degree exceeds the configured total-degree bound");
  }
  const auto src = differential_basis(ring, alpha);
  std::map<std::pair<std::size_t, TorusDivisor>, std::size_t> index;
  for (std::size_t i = 0; i < src.terms.size(); ++i) index.emplace(src.terms[i], i);

  GenerationVerdict v;
  v.expectedDim = omega_dimension(ring, alpha).omegaDim;
  const std::size_t l = g.num_rays();
  RowSpace space;
  for (const auto& gen : gens) {
    const auto gamma = g.class_of(gen.dPlus);
    const auto rest = monomial_basis(ring, g.add(alpha, g.negate(g.add(gamma, gamma)))).monomials;
    const TorusDivisor both = gen.dPlus + gen.dMinus;
    for (const auto& a : rest) {
      ++v.multiples;
      RowSpace::SparseRow row;
      for (std::size_t j = 0; j < l; ++j) {
        const std::int64_t c = gen.dMinus[j] - gen.dPlus[j];
        if (c == 0) continue;
        row.emplace(index.at({j, a + both - TorusDivisor::unit(l, j)}), Rational(c));
      }
      space.insert(std::move(row));
    }
  }
  v.generatedDim = space.rank();
  v.equal = v.generatedDim == v.expectedDim;
  return v;
}

}  // namespace latsum
