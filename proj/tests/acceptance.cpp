// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "latsum/arrangement.hpp"
#include "latsum/catalog.hpp"
#include "latsum/coxring.hpp"
#include "latsum/fan.hpp"
#include "latsum/gale.hpp"
#include "latsum/polytope.hpp"
#include "latsum/resolutions.hpp"

using namespace latsum;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

LatticePolytope random_polygon(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  for (;;) {
    std::vector<LatticePoint> pts;
    for (auto n = uniform(rng, 3, 7); n > 0; --n) pts.push_back({uniform(rng, lo, hi), uniform(rng, lo, hi)});
    auto p = hull(pts);
    if (p.full_dimensional()) return p;
  }
}

std::vector<LatticePoint> random_spanning_rays(std::mt19937_64& rng, std::size_t r, std::size_t l) {
  for (;;) {
    std::vector<LatticePoint> rays;
    while (rays.size() < l) {
      LatticePoint v(r);
      for (auto& c : v) c = uniform(rng, -3, 3);
      if (content(v) == 0) continue;
      v = primitive(v);
      if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(v);
    }
    if (rank_of_vectors(rays) == r) return rays;
  }
}

// Complete planar fan on random primitive rays sorted by angle.
Fan random_complete_fan(std::mt19937_64& rng) {
  for (;;) {
    std::vector<LatticePoint> rays;
    for (auto n = uniform(rng, 3, 7); n > 0; --n) {
      LatticePoint v{uniform(rng, -3, 3), uniform(rng, -3, 3)};
      if (v[0] == 0 && v[1] == 0) continue;
      v = primitive(v);
      if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(v);
    }
    if (rays.size() < 3) continue;
    std::sort(rays.begin(), rays.end(), [](const LatticePoint& a, const LatticePoint& b) {
      return std::atan2(double(a[1]), double(a[0])) < std::atan2(double(b[1]), double(b[0]));
    });
    bool ok = true;
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const auto& a = rays[i];
      const auto& c = rays[(i + 1) % rays.size()];
      ok = ok && a[0] * c[1] - a[1] * c[0] > 0;
      cones.push_back({i, (i + 1) % rays.size()});
    }
    if (ok) return Fan(2, rays, cones);
  }
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome figure_reproduction() {
  const auto p = catalog::figure_p(), q = catalog::figure_p_prime();
  const auto rep = problem1_check(p, q);
  const auto np = lattice_points(p).size(), nq = lattice_points(q).size();
  const bool ok = !rep.equal && np == 3 && nq == 3 && rep.targetSize == 10 && rep.sumsetSize == 9 &&
                  rep.missing == std::vector<LatticePoint>{catalog::figure_missing_point()};
  return {ok, fmt("|P|=%zu |P'|=%zu |P+P'|=%zu image=%zu missing=%zu", np, nq, rep.targetSize, rep.sumsetSize,
                  rep.missing.size())};
}

Outcome line_totality() {
  std::mt19937_64 rng(101);
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    auto seg = [&] {
      auto a = uniform(rng, -20, 20), b = uniform(rng, -20, 20);
      return hull({{a}, {b}});
    };
    bad += !problem1_check(seg(), seg()).equal;
  }
  return {bad == 0, fmt("500 segment pairs, %d unequal", bad)};
}

Outcome koelman() {
  std::mt19937_64 rng(202);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = random_polygon(rng, -10, 10);
    for (const auto& e : idp_check(p, 5)) bad += !e.report.equal;
  }
  return {bad == 0, fmt("200 polygons, nu <= 5, %d unequal entries", bad)};
}

Outcome projective_surjectivity() {
  int bad = 0, cells = 0;
  for (std::size_t r = 1; r <= 3; ++r) {
    CoxRing ring(projective_space_fan(r));
    for (std::int64_t a = 0; a <= 6; ++a)
      for (std::int64_t b = 0; b <= 6; ++b, ++cells)
        bad += !multiplication_check(ring, ring.free_class({a}), ring.free_class({b})).surjective;
  }
  return {bad == 0, fmt("%d cells, %d not surjective", cells, bad)};
}

Outcome gale_exactness() {
  std::mt19937_64 rng(303);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto r = static_cast<std::size_t>(uniform(rng, 1, 3));
    const auto lmax = r == 1 ? 2 : 8;
    const auto l = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(r), lmax));
    const GaleData g(random_spanning_rays(rng, r, l));
    bool ok = g.free_rank() == l - r;
    for (std::size_t k = 0; k < r; ++k) {
      LatticePoint e(r, 0);
      e[k] = 1;
      ok = ok && g.class_of(g.pi_star_of(e)).is_zero();
    }
    bad += !ok;
  }
  return {bad == 0, fmt("100 ray sets, %d violations", bad)};
}

Outcome desk_generation() {
  int bad = 0, cells = 0;
  CoxRing p2(projective_space_fan(2));
  const auto gp = diagonal_generators(p2.rays());
  for (std::int64_t a = 0; a <= 4; ++a)
    for (std::int64_t b = 0; a + b <= 4; ++b, ++cells)
      bad += !verify_generation_at_degree(p2, gp, p2.free_class({a}), p2.free_class({b}), 4).equal;
  CoxRing sq(catalog::bundled_fan("square").fan);
  const auto gs = diagonal_generators(sq.rays());
  for (std::int64_t a1 = 0; a1 <= 4; ++a1)
    for (std::int64_t a2 = 0; a1 + a2 <= 4; ++a2)
      for (std::int64_t b1 = 0; a1 + a2 + b1 <= 4; ++b1)
        for (std::int64_t b2 = 0; a1 + a2 + b1 + b2 <= 4; ++b2, ++cells)
          bad += !verify_generation_at_degree(sq, gs, sq.free_class({a1, a2}), sq.free_class({b1, b2}), 4).equal;
  return {bad == 0, fmt("%d bidegrees (plane %zu gens, square %zu gens), %d rank deficits", cells, gp.size(),
                        gs.size(), bad)};
}

Outcome eagon_northcott() {
  bool ok = true;
  for (std::size_t r = 1; r <= 3; ++r) ok = ok && check_en_identity(r, 5, 5).allEqual;
  int bad = 0;
  for (std::int64_t a = 0; a <= 8; ++a)
    for (std::int64_t b = 0; b <= 8; ++b) bad += ideal_dim(1, a, b) != a * b;
  return {ok && bad == 0, fmt("r=1..3 grid %s, line formula mismatches %d", ok ? "equal" : "MISMATCH", bad)};
}

Outcome koszul() {
  int bad = 0;
  for (std::size_t r = 1; r <= 3; ++r) bad += static_cast<int>(check_koszul_identity(r, 8).mismatches.size());
  return {bad == 0, fmt("r=1..3, a<=8, %d mismatches", bad)};
}

Outcome nef_bridge() {
  std::mt19937_64 rng(909);
  int pairs = 0, bad = 0, unequal = 0;
  auto compare = [&](const Fan& f, const TorusDivisor& da, const LatticePolytope& pa, const TorusDivisor& db,
                     const LatticePolytope& pb) {
    CoxRing ring(f);
    const auto rep = multiplication_check(ring, ring.gale().class_of(da), ring.gale().class_of(db));
    const auto p1 = problem1_check(pa, pb);
    bad += rep.surjective != p1.equal || rep.imageDim != p1.sumsetSize || rep.dimSum != p1.targetSize;
    unequal += !p1.equal;
    ++pairs;
  };
  while (pairs < 50) {
    if (pairs % 2 == 1) {
      // Normal fan of A + B, with the divisors of A and B.
      const auto a = random_polygon(rng, 0, 3), b = random_polygon(rng, 0, 3);
      const auto f = normal_fan(minkowski_sum(a, b));
      compare(f, polytope_divisor(f, a), a, polytope_divisor(f, b), b);
      continue;
    }
    // Random fan, random nef divisors with lattice divisor polytopes.
    const auto f = random_complete_fan(rng);
    auto random_nef = [&]() -> std::optional<std::pair<TorusDivisor, LatticePolytope>> {
      for (int attempt = 0; attempt < 200; ++attempt) {
        TorusDivisor d = TorusDivisor::zero(f.num_rays());
        for (auto& c : d.coefficients) c = uniform(rng, -1, 3);
        if (!is_nef(f, d).nef) continue;
        try {
          auto p = divisor_polytope(f, d);
          if (!p.is_empty()) return std::make_pair(d, p);
        } catch (const DomainError&) {
        }
      }
      return std::nullopt;
    };
    auto a = random_nef(), b = random_nef();
    if (a && b) compare(f, a->first, a->second, b->first, b->second);
  }
  return {bad == 0, fmt("50 nef pairs (%d non-surjective), %d disagreements", unequal, bad)};
}

Outcome hilbert_oracle() {
  std::mt19937_64 rng(1010);
  int chambers_seen = 0, bad = 0;
  for (int i = 0; i < 20; ++i) {
    const auto rays = random_spanning_rays(rng, 2, static_cast<std::size_t>(uniform(rng, 2, 5)));
    for (const auto& c : chambers(rays)) {
      ++chambers_seen;
      auto in_cone = [&](const LatticePoint& x) {
        return std::all_of(c.facetNormals.begin(), c.facetNormals.end(), [&](const auto& n) { return dot(n, x) >= 0; });
      };
      // Memoized decomposability over a generator set.
      auto decomposes = [&](const LatticePoint& target, const std::vector<LatticePoint>& gens) {
        std::map<LatticePoint, bool> memo;
        std::function<bool(const LatticePoint&)> rec = [&](const LatticePoint& x) -> bool {
          if (std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; })) return true;
          if (auto it = memo.find(x); it != memo.end()) return it->second;
          bool ok = false;
          for (const auto& h : gens) {
            auto y = subtract(x, h);
            if (in_cone(y) && rec(y)) {
              ok = true;
              break;
            }
          }
          return memo[x] = ok;
        };
        return rec(target);
      };
      const auto& basis = c.hilbertBasis;
      for (std::int64_t x = -8; x <= 8; ++x)
        for (std::int64_t y = -8; y <= 8; ++y) {
          LatticePoint pt{x, y};
          if (in_cone(pt) && !decomposes(pt, basis)) ++bad;
        }
      for (std::size_t k = 0; k < basis.size(); ++k) {
        auto others = basis;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(k));
        if (decomposes(basis[k], others)) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%d chambers, %d violations", chambers_seen, bad)};
}

Outcome problem6_property() {
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::ostringstream detail;
  bool ample_clean = true;
  std::size_t hex_failures = 0, hex_non_lattice = 0;
  for (const auto& bf : catalog::bundled_fans()) {
    CoxRing ring(bf.fan);
    for (auto mode : {SearchMode::AmpleNef, SearchMode::AmpleAmple}) {
      const auto res = problem6_search(ring, bf.box, mode, {threads, {}, 64});
      if (res.failures.empty()) continue;
      ample_clean = false;
      detail << bf.name << '/' << to_string(mode) << ": " << res.failures.size() << " of " << res.cells << " cells fail";
      if (!res.failures.empty()) {
        const auto& f = res.failures.front();
        detail << " (e.g. dims " << f.dimAlpha << ',' << f.dimBeta << "->" << f.dimSum << ", image " << f.imageDim << ")";
      }
      detail << "; ";
      for (const auto& f : res.failures) {
        auto non_lattice = [&](const ClassElement& c) {
          try {
            divisor_polytope(ring.fan(), ring.gale().lift(c));
            return false;
          } catch (const DomainError& e) {
            return e.kind() == "non_lattice_polytope";
          }
        };
        ++hex_failures;
        hex_non_lattice += non_lattice(f.alpha) || non_lattice(f.beta);
      }
    }
  }
  if (!ample_clean)
    detail << hex_non_lattice << " of " << hex_failures << " failing pairs involve a class whose divisor polytope has a non-lattice vertex; ";

  const auto hex = catalog::bundled_fan("hexagon");
  CoxRing ring(hex.fan);
  const auto alpha = ring.gale().class_of(polytope_divisor(hex.fan, catalog::figure_p()));
  const auto beta = ring.gale().class_of(polytope_divisor(hex.fan, catalog::figure_p_prime()));
  const auto nn = problem6_search(ring, hex.box, SearchMode::NefNef, {threads, {}, 256});
  const bool figure_found = std::any_of(nn.failures.begin(), nn.failures.end(),
                                        [&](const auto& f) { return f.alpha == alpha && f.beta == beta; });
  detail << "hexagon nef-nef: " << nn.failures.size() << " failures, figure pair "
         << (figure_found ? "found" : "NOT found");
  return {ample_clean && figure_found, detail.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1", "figure reproduction", figure_reproduction},
      {"2", "r=1 totality", line_totality},
      {"3", "Koelman property", koelman},
      {"4", "projective-space surjectivity", projective_surjectivity},
      {"5", "Gale exactness", gale_exactness},
      {"6", "diagonal generation at desk scale", desk_generation},
      {"7", "Eagon-Northcott Euler identity", eagon_northcott},
      {"8", "Koszul identity", koszul},
      {"9", "nef bridge consistency", nef_bridge},
      {"10", "Hilbert basis oracle", hilbert_oracle},
      {"P6", "ample-mode searches clean, nef-nef finds the figure", problem6_property},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << fmt("%.2f", secs)
              << " s): " << o.detail << std::endl;
  }
  std::cout << criteria.size() - failures << '/' << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
