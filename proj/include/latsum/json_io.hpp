#pragma once

// JSON encoding of polytopes, fans, divisors, classes and reports.
// Documents carry "schema": 1. Rationals are integers when integral,
// otherwise "p/q" strings.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "latsum/arrangement.hpp"
#include "latsum/coxring.hpp"
#include "latsum/fan.hpp"
#include "latsum/gale.hpp"
#include "latsum/polytope.hpp"
#include "latsum/resolutions.hpp"

namespace latsum::json {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

/// Input document that parses but does not match the expected shape.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json document() {
  Json j;
  j["schema"] = kSchema;
  return j;
}

// ---------------------------------------------------------------------------
// Encoding

inline Json encode(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    const Integer n = boost::multiprecision::numerator(q);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
      return static_cast<std::int64_t>(n);
  }
  return q.str();
}

inline Json encode(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(encode(q));
  return a;
}

inline Json encode_points(const std::vector<LatticePoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p);
  return a;
}

inline Json encode(const LatticePolytope& p) {
  Json j;
  j["dim"] = p.dim();
  j["vertices"] = encode_points(p.vertices());
  return j;
}

inline Json encode(const Fan& f) {
  Json j;
  j["dim"] = f.dim();
  j["rays"] = encode_points(f.rays());
  j["cones"] = f.cones();
  return j;
}

inline Json encode(const TorusDivisor& d) { return d.coefficients; }

inline Json encode(const ClassElement& c) {
  Json j;
  j["free"] = c.free;
  j["torsion"] = c.torsion;
  return j;
}

inline Json encode_divisors(const std::vector<TorusDivisor>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(encode(d));
  return a;
}

inline Json encode(const SumsetReport& r) {
  Json j;
  j["equal"] = r.equal;
  j["sumsetSize"] = r.sumsetSize;
  j["targetSize"] = r.targetSize;
  j["missing"] = encode_points(r.missing);
  return j;
}

inline Json encode(const GaleData& g) {
  Json j;
  j["freeRank"] = g.free_rank();
  j["torsion"] = g.torsion();
  Json mu = Json::array();
  for (const auto& c : g.classes()) mu.push_back(c.free);
  j["mu"] = mu;
  Json tmu = Json::array();
  for (const auto& c : g.classes()) tmu.push_back(c.torsion);
  j["muTorsion"] = tmu;
  return j;
}

inline Json encode(const Chamber& c) {
  Json j;
  j["signs"] = c.signs;
  j["witness"] = encode(c.witness);
  j["facetNormals"] = encode_points(c.facetNormals);
  j["extremeRays"] = encode_points(c.extremeRays);
  j["hilbertBasis"] = encode_points(c.hilbertBasis);
  return j;
}

inline Json encode(const BinomialGenerator& g) {
  Json j;
  j["m"] = g.m;
  j["dplus"] = encode(g.dPlus);
  j["dminus"] = encode(g.dMinus);
  return j;
}

inline Json encode(const MultiplicationReport& r) {
  Json j;
  j["alpha"] = encode(r.alpha);
  j["beta"] = encode(r.beta);
  j["dimAlpha"] = r.dimAlpha;
  j["dimBeta"] = r.dimBeta;
  j["dimSum"] = r.dimSum;
  j["imageDim"] = r.imageDim;
  j["surjective"] = r.surjective;
  j["missing"] = encode_divisors(r.missing);
  return j;
}

inline Json encode(const IdentityCheck& c) {
  Json j;
  j["allEqual"] = c.allEqual;
  Json cells = Json::array();
  for (const auto& cell : c.cells) {
    Json e;
    e["degree"] = cell.degree;
    e["direct"] = cell.direct;
    e["euler"] = cell.euler;
    e["equal"] = cell.equal();
    cells.push_back(e);
  }
  j["cells"] = cells;
  j["mismatches"] = c.mismatches.size();
  return j;
}

inline Json encode(const BoundaryRankCheck& c) {
  Json j;
  j["degree"] = c.degree;
  j["sourceDim"] = c.sourceDim;
  j["rank"] = c.rank;
  j["targetDim"] = c.targetKernelDim;
  j["composesToZero"] = c.composesToZero;
  j["exact"] = c.exact();
  return j;
}

// ---------------------------------------------------------------------------
// Decoding

inline std::vector<std::int64_t> decode_int_vector(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an integer array");
  std::vector<std::int64_t> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(what + " must be an integer array");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

inline std::vector<LatticePoint> decode_points(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of integer arrays");
  std::vector<LatticePoint> out;
  for (const auto& p : j) out.push_back(decode_int_vector(p, what + " entry"));
  return out;
}

inline std::size_t decode_dim(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned())
    throw InputError("expected an object with a nonnegative integer \"dim\"");
  return j["dim"].get<std::size_t>();
}

inline LatticePolytope decode_polytope(const Json& j) {
  const auto dim = decode_dim(j);
  if (!j.contains("vertices")) throw InputError("polytope needs \"vertices\"");
  auto pts = decode_points(j["vertices"], "vertices");
  if (pts.empty()) return LatticePolytope::empty(dim);
  for (const auto& p : pts)
    if (p.size() != dim) throw DomainError("dimension_mismatch", "vertex length differs from dim");
  return hull(pts);
}

/// Rays from {"dim", "rays"[, "cones"]}.
inline std::vector<LatticePoint> decode_rays(const Json& j) {
  const auto dim = decode_dim(j);
  if (!j.contains("rays")) throw InputError("fan needs \"rays\"");
  auto rays = decode_points(j["rays"], "rays");
  for (const auto& r : rays)
    if (r.size() != dim) throw DomainError("dimension_mismatch", "ray length differs from dim");
  return rays;
}

inline Fan decode_fan(const Json& j) {
  auto rays = decode_rays(j);
  if (!j.contains("cones") || !j["cones"].is_array()) throw InputError("fan needs \"cones\"");
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : j["cones"]) {
    if (!c.is_array()) throw InputError("cones must be arrays of ray indices");
    std::vector<std::size_t> idx;
    for (const auto& x : c) {
      if (!x.is_number_unsigned()) throw InputError("cones must be arrays of ray indices");
      idx.push_back(x.get<std::size_t>());
    }
    cones.push_back(std::move(idx));
  }
  return Fan(decode_dim(j), std::move(rays), std::move(cones));
}

/// Integer array (free part only) or {"free": [...], "torsion": [...]}.
inline ClassElement decode_class(const Json& j) {
  if (j.is_array()) return {decode_int_vector(j, "class"), {}};
  if (!j.is_object() || !j.contains("free")) throw InputError("class must be an array or {\"free\", \"torsion\"}");
  ClassElement c{decode_int_vector(j["free"], "free"), {}};
  if (j.contains("torsion")) c.torsion = decode_int_vector(j["torsion"], "torsion");
  return c;
}

inline TorusDivisor decode_divisor(const Json& j) {
  if (j.is_object() && j.contains("divisor")) return TorusDivisor(decode_int_vector(j["divisor"], "divisor"));
  return TorusDivisor(decode_int_vector(j, "divisor"));
}

/// {"polytopes": [P, Q]} or [P, Q].
inline std::vector<LatticePolytope> decode_polytope_list(const Json& j) {
  const Json& list = j.is_object() && j.contains("polytopes") ? j["polytopes"] : j;
  if (!list.is_array()) throw InputError("expected {\"polytopes\": [...]}");
  std::vector<LatticePolytope> out;
  for (const auto& p : list) out.push_back(decode_polytope(p));
  return out;
}

}  // namespace latsum::json
