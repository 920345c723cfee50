#pragma once

// Polyhedral cone helpers shared by fans and the hyperplane arrangement.
// Cones here are full-dimensional; facets are found by testing every
// (d-1)-subset of generators, which is fine at the sizes this library targets.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "latsum/error.hpp"
#include "latsum/exactlin.hpp"
#include "latsum/polytope.hpp"

namespace latsum {

/// Supporting half-space <normal, x> >= 0 of a cone together with the
/// indices of the generators lying on it.
struct ConeFacet {
  LatticePoint normal;
  std::vector<std::size_t> generators;
};

inline std::vector<ConeFacet> cone_facets(const std::vector<LatticePoint>& gens, std::size_t dim) {
  if (rank_of_vectors(gens) != dim) {
    throw DomainError("not_full_dimensional", "cone generators do not span the ambient space");
  }
  std::map<LatticePoint, ConeFacet> found;
  detail::for_each_combination(gens.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<LatticePoint> rows;
    for (auto i : idx) rows.push_back(gens[i]);
    if (rank_of_vectors(rows) != dim - 1) return;
    IntegerMatrix k = integer_kernel(IntegerMatrix::from_rows(rows, dim));
    LatticePoint normal = k.col_int64(0);
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      const auto s = dot128(normal, g);
      pos |= s > 0;
      neg |= s < 0;
    }
    if (pos && neg) return;
    if (neg) normal = negate(normal);
    if (found.count(normal)) return;
    ConeFacet f{normal, {}};
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (dot128(normal, gens[i]) == 0) f.generators.push_back(i);
    found.emplace(normal, std::move(f));
  });
  std::vector<ConeFacet> out;
  for (auto& [n, f] : found) out.push_back(std::move(f));
  return out;
}

inline bool cone_is_pointed(const std::vector<ConeFacet>& facets, std::size_t dim) {
  std::vector<LatticePoint> normals;
  for (const auto& f : facets) normals.push_back(f.normal);
  return rank_of_vectors(normals) == dim;
}

/// Primitive extreme rays of the pointed closed cone {x : <u, x> >= 0 for all u}.
inline std::vector<LatticePoint> cone_extreme_rays(const std::vector<LatticePoint>& inequalities,
                                                   std::size_t dim) {
  std::set<LatticePoint> rays;
  detail::for_each_combination(inequalities.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<LatticePoint> rows;
    for (auto i : idx) rows.push_back(inequalities[i]);
    if (rank_of_vectors(rows) != dim - 1) return;
    IntegerMatrix k = integer_kernel(IntegerMatrix::from_rows(rows, dim));
    LatticePoint v = k.col_int64(0);
    for (int attempt = 0; attempt < 2; ++attempt, v = negate(v)) {
      bool ok = std::all_of(inequalities.begin(), inequalities.end(),
                            [&](const LatticePoint& u) { return dot128(u, v) >= 0; });
      if (ok) rays.insert(v);
    }
  });
  return {rays.begin(), rays.end()};
}

/// Generators (indices) that are extreme rays of the cone they generate.
inline std::vector<std::size_t> extreme_generators(const std::vector<LatticePoint>& gens,
                                                   const std::vector<ConeFacet>& facets,
                                                   std::size_t dim) {
  std::vector<std::vector<LatticePoint>> tight(gens.size());
  for (const auto& f : facets)
    for (auto i : f.generators) tight[i].push_back(f.normal);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (rank_of_vectors(tight[i]) != dim - 1) continue;
    // A generator that is a positive multiple of an earlier one is not a new ray.
    bool duplicate = false;
    for (auto j : out)
      if (primitive(gens[j]) == primitive(gens[i])) duplicate = true;
    if (!duplicate) out.push_back(i);
  }
  return out;
}

}  // namespace latsum
