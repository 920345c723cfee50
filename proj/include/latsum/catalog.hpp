#pragma once

// Bundled fans and the planar figure example.

#include <string>
#include <string_view>
#include <vector>

#include "latsum/coxring.hpp"
#include "latsum/error.hpp"
#include "latsum/fan.hpp"
#include "latsum/polytope.hpp"

namespace latsum::catalog {

/// P and P': unimodular triangles whose Minkowski sum misses (3, 1).
inline LatticePolytope figure_p() { return hull({{1, -1}, {2, -1}, {1, 0}}); }
inline LatticePolytope figure_p_prime() { return hull({{1, 1}, {3, 4}, {2, 3}}); }
inline LatticePoint figure_missing_point() { return {3, 1}; }

inline LatticePolytope unit_square() { return hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

inline Fan hirzebruch1_fan() { return Fan(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

/// Normal fan of P + P'.
inline Fan hexagon_fan() { return normal_fan(minkowski_sum(figure_p(), figure_p_prime())); }

struct BundledFan {
  std::string name;
  Fan fan;
  SearchBox box;  // desk-scale search box in free class coordinates
};

inline std::vector<std::string> fan_names() { return {"p1", "p2", "p3", "square", "hirzebruch1", "hexagon"}; }

inline BundledFan bundled_fan(std::string_view name) {
  if (name == "p1") return {"p1", projective_space_fan(1), SearchBox::cube(1, -6, 6)};
  if (name == "p2") return {"p2", projective_space_fan(2), SearchBox::cube(1, -6, 6)};
  if (name == "p3") return {"p3", projective_space_fan(3), SearchBox::cube(1, -6, 6)};
  if (name == "square") return {"square", normal_fan(unit_square()), SearchBox::cube(2, -4, 4)};
  if (name == "hirzebruch1") return {"hirzebruch1", hirzebruch1_fan(), SearchBox::cube(2, -4, 4)};
  if (name == "hexagon") return {"hexagon", hexagon_fan(), SearchBox::cube(4, 0, 5)};
  throw DomainError("unknown_fan", "no bundled fan named '" + std::string(name) + "'");
}

inline std::vector<BundledFan> bundled_fans() {
  std::vector<BundledFan> out;
  for (const auto& n : fan_names()) out.push_back(bundled_fan(n));
  return out;
}

}  // namespace latsum::catalog
