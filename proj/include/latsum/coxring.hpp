#pragma once

// Graded pieces S_alpha of the homogeneous coordinate ring, the
// multiplication maps S_alpha x S_beta -> S_{alpha+beta}, nef-cone
// membership of classes, the box search over class pairs, and the graded
// dimension of the module of differentials Omega.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "latsum/error.hpp"
#include "latsum/exactlin.hpp"
#include "latsum/fan.hpp"
#include "latsum/gale.hpp"
#include "latsum/polytope.hpp"

namespace latsum {

/// Ring data: the Gale transform of the rays, plus the fan when one is known.
/// Graded pieces only need the rays; nef questions need the fan.
class CoxRing {
 public:
  CoxRing() = default;

  explicit CoxRing(Fan f) : gale_(f.rays()), fan_(std::move(f)) { init(); }

  /// Ring of a ray configuration without a fan. The rays must positively
  /// span so that every graded piece is finite.
  static CoxRing from_rays(std::vector<LatticePoint> rays) {
    CoxRing ring;
    ring.gale_ = GaleData(std::move(rays));
    ring.init();
    return ring;
  }

  const GaleData& gale() const noexcept { return gale_; }
  bool has_fan() const noexcept { return fan_.has_value(); }
  const Fan& fan() const {
    if (!fan_) throw DomainError("missing_fan", "operation needs a fan, not just rays");
    return *fan_;
  }
  std::size_t dim() const noexcept { return gale_.dim(); }
  std::size_t num_vars() const noexcept { return gale_.num_rays(); }
  const std::vector<LatticePoint>& rays() const noexcept { return gale_.rays(); }

  /// Class with the given free coordinates and zero torsion.
  ClassElement free_class(std::vector<std::int64_t> free) const {
    ClassElement c{std::move(free), std::vector<std::int64_t>(gale_.torsion().size(), 0)};
    gale_.validate(c);
    return c;
  }

 private:
  void init() {
    std::vector<Facet> cone;
    for (const auto& n : gale_.rays()) cone.push_back({n, 0});
    if (!hrep_bounded(cone, gale_.dim())) {
      throw DomainError("unbounded", "rays do not positively span; graded pieces are infinite");
    }
  }

  GaleData gale_;
  std::optional<Fan> fan_;
};

struct MonomialBasis {
  ClassElement degree;
  std::vector<TorusDivisor> monomials;  // exponent vectors, sorted
};

/// Effective divisors of class alpha: D0 + pi*(m) for m in the lattice points
/// of P_{D0}, with D0 any lift of alpha.
inline MonomialBasis monomial_basis(const CoxRing& ring, const ClassElement& alpha) {
  const auto d0 = ring.gale().lift(alpha);
  MonomialBasis b{alpha, {}};
  for (const auto& m : detail::bounded_hrep_lattice_points(detail::divisor_halfspaces(ring.rays(), d0), ring.dim())) {
    b.monomials.push_back(d0 + ring.gale().pi_star_of(m));
  }
  std::sort(b.monomials.begin(), b.monomials.end());
  return b;
}

struct MultiplicationReport {
  ClassElement alpha, beta;
  std::size_t dimAlpha = 0, dimBeta = 0, dimSum = 0;
  std::size_t imageDim = 0;
  bool surjective = true;
  std::vector<TorusDivisor> missing;  // sorted
};

/// S_alpha x S_beta -> S_{alpha+beta} on monomials: the image is spanned by
/// the distinct sums D + E.
namespace detail {

inline MultiplicationReport multiply_bases(const ClassElement& alpha, const ClassElement& beta,
                                           const std::vector<TorusDivisor>& sa, const std::vector<TorusDivisor>& sb,
                                           const std::vector<TorusDivisor>& sab) {
  MultiplicationReport rep{alpha, beta, sa.size(), sb.size(), sab.size(), 0, true, {}};
  std::vector<LatticePoint> b;
  b.reserve(sb.size());
  for (const auto& d : sb) b.push_back(d.coefficients);
  const PointIndex index(b);
  std::size_t hint = 0;
  for (const auto& t : sab) {
    bool hit = !sa.empty() && index.contains(subtract(t.coefficients, sa[hint].coefficients));
    for (std::size_t i = 0; i < sa.size() && !hit; ++i) {
      if (index.contains(subtract(t.coefficients, sa[i].coefficients))) {
        hint = i;
        hit = true;
      }
    }
    if (!hit) rep.missing.push_back(t);
  }
  rep.imageDim = sab.size() - rep.missing.size();
  rep.surjective = rep.missing.empty();
  return rep;
}

}  // namespace detail

inline MultiplicationReport multiplication_check(const CoxRing& ring, const ClassElement& alpha,
                                                 const ClassElement& beta) {
  return detail::multiply_bases(alpha, beta, monomial_basis(ring, alpha).monomials,
                                monomial_basis(ring, beta).monomials,
                                monomial_basis(ring, ring.gale().add(alpha, beta)).monomials);
}

enum class NefStatus { Interior, Boundary, Outside };

inline const char* to_string(NefStatus s) {
  switch (s) {
    case NefStatus::Interior: return "interior";
    case NefStatus::Boundary: return "boundary";
    case NefStatus::Outside: return "outside";
  }
  return "outside";
}

/// Ample classes are interior, nef non-ample classes boundary. Classes with a
/// nonzero torsion component are reported as outside.
inline NefStatus nef_cone_membership(const CoxRing& ring, const ClassElement& alpha) {
  ring.gale().validate(alpha);
  if (alpha.has_torsion()) return NefStatus::Outside;
  const auto d = ring.gale().lift(alpha);
  if (is_ample(ring.fan(), d).ample) return NefStatus::Interior;
  if (is_nef(ring.fan(), d).nef) return NefStatus::Boundary;
  return NefStatus::Outside;
}

// ---------------------------------------------------------------------------
// Box search over class pairs

enum class SearchMode { AmpleNef, AmpleAmple, NefNef };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::AmpleNef: return "ample-nef";
    case SearchMode::AmpleAmple: return "ample-ample";
    case SearchMode::NefNef: return "nef-nef";
  }
  return "nef-nef";
}

inline SearchMode parse_search_mode(const std::string& s) {
  if (s == "ample-nef") return SearchMode::AmpleNef;
  if (s == "ample-ample") return SearchMode::AmpleAmple;
  if (s == "nef-nef") return SearchMode::NefNef;
  throw DomainError("invalid_mode", "unknown search mode '" + s + "'");
}

/// Inclusive bounds on the free coordinates; torsion is always enumerated in full.
struct SearchBox {
  std::vector<std::int64_t> lo, hi;

  static SearchBox cube(std::size_t k, std::int64_t lo, std::int64_t hi) {
    return {std::vector<std::int64_t>(k, lo), std::vector<std::int64_t>(k, hi)};
  }
  bool empty() const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i]) return true;
    return false;
  }
};

struct SearchOptions {
  unsigned threads = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::size_t checkpointEvery = 64;
};

struct SearchResult {
  SearchMode mode = SearchMode::NefNef;
  std::size_t classesInBox = 0;
  std::size_t interiorClasses = 0, boundaryClasses = 0;
  std::size_t cells = 0;         // admissible (alpha, beta) pairs
  std::size_t resumedFrom = 0;   // cells skipped thanks to a checkpoint
  std::vector<MultiplicationReport> failures;  // in cell order
};

namespace detail {

inline std::vector<ClassElement> box_classes(const GaleData& g, const SearchBox& box) {
  std::vector<ClassElement> out;
  if (box.lo.size() != g.free_rank() || box.hi.size() != g.free_rank()) {
    throw DomainError("dimension_mismatch", "search box has " + std::to_string(box.lo.size()) +
                                                " coordinates, class group has free rank " +
                                                std::to_string(g.free_rank()));
  }
  if (box.empty()) return out;
  std::vector<std::int64_t> free = box.lo;
  const auto& tor = g.torsion();
  for (;;) {
    std::vector<std::int64_t> t(tor.size(), 0);
    for (;;) {
      out.push_back({free, t});
      std::size_t i = t.size();
      while (i-- > 0) {
        if (++t[i] < tor[i]) break;
        t[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    std::size_t k = free.size();
    while (k-- > 0) {
      if (++free[k] <= box.hi[k]) break;
      free[k] = box.lo[k];
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

inline std::string search_signature(const CoxRing& ring, const SearchBox& box, SearchMode mode) {
  std::ostringstream os;
  os << to_string(mode) << " box";
  for (std::size_t i = 0; i < box.lo.size(); ++i) os << ' ' << box.lo[i] << ':' << box.hi[i];
  os << " rays";
  for (const auto& n : ring.rays()) {
    os << " (";
    for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
    os << ')';
  }
  if (ring.has_fan()) {
    os << " cones";
    for (const auto& c : ring.fan().cones()) {
      os << " {";
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
      os << '}';
    }
  }
  return os.str();
}

struct Checkpoint {
  std::size_t completed = 0;
  std::vector<std::size_t> failures;
};

inline std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path, const std::string& signature) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != "latsum-pn-search 1") {
    throw DomainError("checkpoint_invalid", "checkpoint file has an unknown format: " + path.string());
  }
  if (!std::getline(in, line) || line != "signature " + signature) {
    throw DomainError("checkpoint_mismatch", "checkpoint was written for a different search: " + path.string());
  }
  Checkpoint cp;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    std::size_t v = 0;
    if (!(ls >> key >> v)) throw DomainError("checkpoint_invalid", "malformed checkpoint line: " + line);
    if (key == "completed") cp.completed = v;
    else if (key == "failure") cp.failures.push_back(v);
    else throw DomainError("checkpoint_invalid", "malformed checkpoint line: " + line);
  }
  return cp;
}

inline void write_checkpoint(const std::filesystem::path& path, const std::string& signature, const Checkpoint& cp) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw DomainError("io_error", "cannot write checkpoint " + tmp.string());
    out << "latsum-pn-search 1\n" << "signature " << signature << '\n' << "completed " << cp.completed << '\n';
    for (auto f : cp.failures) out << "failure " << f << '\n';
  }
  std::filesystem::rename(tmp, path);
}

template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn) {
  if (end <= begin) return;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(end - begin)));
  if (threads == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= end) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = end;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Scans every admissible (alpha, beta) in box x box and reports each pair
/// whose multiplication map is not surjective. Pairs are ordered
/// lexicographically by (alpha, beta) class index; the result is independent
/// of the thread count. With a checkpoint path, progress is persisted every
/// checkpointEvery cells and a rerun resumes after the last saved cell.
inline SearchResult problem6_search(const CoxRing& ring, const SearchBox& box, SearchMode mode,
                                    const SearchOptions& opts = {}) {
  SearchResult res;
  res.mode = mode;
  const auto classes = detail::box_classes(ring.gale(), box);
  res.classesInBox = classes.size();
  std::vector<NefStatus> status(classes.size());
  detail::parallel_for(0, classes.size(), opts.threads,
                       [&](std::size_t i) { status[i] = nef_cone_membership(ring, classes[i]); });
  for (auto s : status) {
    res.interiorClasses += s == NefStatus::Interior;
    res.boundaryClasses += s == NefStatus::Boundary;
  }
  auto admissible_alpha = [&](NefStatus s) {
    return mode == SearchMode::NefNef ? s != NefStatus::Outside : s == NefStatus::Interior;
  };
  auto admissible_beta = [&](NefStatus s) {
    return mode == SearchMode::AmpleAmple ? s == NefStatus::Interior : s != NefStatus::Outside;
  };
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!admissible_alpha(status[i])) continue;
    for (std::size_t j = 0; j < classes.size(); ++j)
      if (admissible_beta(status[j])) cells.emplace_back(i, j);
  }
  res.cells = cells.size();

  const std::string signature = detail::search_signature(ring, box, mode);
  detail::Checkpoint cp;
  if (opts.checkpoint) {
    if (auto prev = detail::read_checkpoint(*opts.checkpoint, signature)) {
      cp = *prev;
      if (cp.completed > cells.size()) throw DomainError("checkpoint_mismatch", "checkpoint is ahead of the search");
    }
  }
  res.resumedFrom = cp.completed;

  std::vector<std::vector<TorusDivisor>> bases(classes.size());
  detail::parallel_for(0, classes.size(), opts.threads, [&](std::size_t i) {
    if (status[i] != NefStatus::Outside) bases[i] = monomial_basis(ring, classes[i]).monomials;
  });
  std::map<ClassElement, std::size_t> sum_index;
  std::vector<ClassElement> sums;
  std::vector<std::size_t> cell_sum(cells.size());
  for (std::size_t c = cp.completed; c < cells.size(); ++c) {
    auto s = ring.gale().add(classes[cells[c].first], classes[cells[c].second]);
    auto [it, fresh] = sum_index.try_emplace(s, sums.size());
    if (fresh) sums.push_back(std::move(s));
    cell_sum[c] = it->second;
  }
  std::vector<std::vector<TorusDivisor>> sum_bases(sums.size());
  detail::parallel_for(0, sums.size(), opts.threads,
                       [&](std::size_t k) { sum_bases[k] = monomial_basis(ring, sums[k]).monomials; });
  auto check = [&](std::size_t c) {
    const auto& [i, j] = cells[c];
    return detail::multiply_bases(classes[i], classes[j], bases[i], bases[j], sum_bases[cell_sum[c]]);
  };

  std::vector<char> failed(cells.size(), 0);
  for (auto f : cp.failures) {
    if (f >= cp.completed) throw DomainError("checkpoint_invalid", "failure index beyond completed cells");
    failed[f] = 1;
  }
  const std::size_t block = opts.checkpoint ? std::max<std::size_t>(1, opts.checkpointEvery) : cells.size();
  for (std::size_t start = cp.completed; start < cells.size(); start += block) {
    const std::size_t stop = std::min(cells.size(), start + block);
    detail::parallel_for(start, stop, opts.threads, [&](std::size_t c) {
      failed[c] = check(c).surjective ? 0 : 1;
    });
    if (opts.checkpoint) {
      cp.completed = stop;
      cp.failures.clear();
      for (std::size_t c = 0; c < stop; ++c)
        if (failed[c]) cp.failures.push_back(c);
      detail::write_checkpoint(*opts.checkpoint, signature, cp);
    }
  }
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (failed[c]) {
      res.failures.push_back(c >= res.resumedFrom ? check(c)
                                               : multiplication_check(ring, classes[cells[c].first],
                                                                      classes[cells[c].second]));
    }
  return res;
}

// ---------------------------------------------------------------------------
// Differentials

/// Basis of the degree-alpha part of Omega_S^1: pairs (j, F) standing for
/// x^F dx_j with [F] + mu_j = alpha.
struct DifferentialBasis {
  std::vector<std::pair<std::size_t, TorusDivisor>> terms;  // sorted by (j, F)
};

inline DifferentialBasis differential_basis(const CoxRing& ring, const ClassElement& alpha) {
  DifferentialBasis b;
  const auto& g = ring.gale();
  for (std::size_t j = 0; j < g.num_rays(); ++j) {
    for (auto& f : monomial_basis(ring, g.add(alpha, g.negate(g.classes()[j]))).monomials)
      b.terms.emplace_back(j, std::move(f));
  }
  return b;
}

struct OmegaDimension {
  ClassElement degree;
  std::size_t sourceDim = 0;  // dim (Omega_S^1)_alpha
  std::size_t rank = 0;       // rank of the Euler map into S_alpha (x) M_Q
  std::size_t omegaDim = 0;   // sourceDim - rank
};

/// dim Omega_alpha as the kernel of x^F dx_j -> x^{F + D_j} (x) mu_j, with
/// the class group tensored with Q (torsion dies).
inline OmegaDimension omega_dimension(const CoxRing& ring, const ClassElement& alpha) {
  const auto& g = ring.gale();
  const auto src = differential_basis(ring, alpha);
  const auto target = monomial_basis(ring, alpha).monomials;
  std::map<TorusDivisor, std::size_t> target_index;
  for (std::size_t i = 0; i < target.size(); ++i) target_index.emplace(target[i], i);
  const std::size_t k = g.free_rank();
  RowSpace space;
  for (const auto& [j, f] : src.terms) {
    const std::size_t t = target_index.at(f + TorusDivisor::unit(g.num_rays(), j));
    RowSpace::SparseRow row;
    for (std::size_t c = 0; c < k; ++c)
      if (g.classes()[j].free[c] != 0) row.emplace(t * k + c, Rational(g.classes()[j].free[c]));
    space.insert(std::move(row));
  }
  OmegaDimension out{alpha, src.terms.size(), space.rank(), 0};
  out.omegaDim = out.sourceDim - out.rank;
  return out;
}

}  // namespace latsum
