#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "latsum/arrangement.hpp"
#include "latsum/catalog.hpp"
#include "latsum/coxring.hpp"
#include "latsum/fan.hpp"
#include "latsum/gale.hpp"
#include "latsum/json_io.hpp"
#include "latsum/polytope.hpp"
#include "latsum/resolutions.hpp"
#include "latsum/svg.hpp"

namespace latsum::cli {
namespace {

using json::Json;

struct Options {
  std::string input;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string checkpoint;
  std::string fan;
  std::string alpha, beta;
  std::string box;
  std::string mode = "ample-nef";
  std::int64_t nuMax = 0;
  std::int64_t r = 0;
  std::int64_t maxDegree = 0;
  std::string output;
};

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("io_error", "cannot read " + path);
  return slurp(f);
}

LatticePolytope random_polygon(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> coord(0, 4), count(3, 6);
  for (;;) {
    std::vector<LatticePoint> pts;
    for (auto n = count(rng); n > 0; --n) pts.push_back({coord(rng), coord(rng)});
    auto p = hull(pts);
    if (p.full_dimensional()) return p;
  }
}

Json polytopes_doc(const std::vector<LatticePolytope>& ps) {
  Json j;
  j["polytopes"] = Json::array();
  for (const auto& p : ps) j["polytopes"].push_back(json::encode(p));
  return j;
}

/// Input document from a file path, "-" (stdin), inline JSON, "builtin:<name>"
/// or "random:polygon" / "random:pair" (seeded).
Json load_input(const std::string& src, const Options& o, std::istream& in) {
  if (src.rfind("builtin:", 0) == 0) {
    const auto name = src.substr(8);
    if (name == "figure") return polytopes_doc({catalog::figure_p(), catalog::figure_p_prime()});
    if (name == "P") return json::encode(catalog::figure_p());
    if (name == "P'") return json::encode(catalog::figure_p_prime());
    if (name == "P+P'") return json::encode(minkowski_sum(catalog::figure_p(), catalog::figure_p_prime()));
    throw DomainError("unknown_builtin", "no builtin input named '" + name + "'");
  }
  if (src.rfind("random:", 0) == 0) {
    std::mt19937_64 rng(o.seed);
    const auto kind = src.substr(7);
    if (kind == "polygon") return json::encode(random_polygon(rng));
    if (kind == "pair") {
      auto a = random_polygon(rng);
      auto b = random_polygon(rng);
      return polytopes_doc({a, b});
    }
    throw DomainError("unknown_builtin", "random input must be random:polygon or random:pair");
  }
  std::string text;
  if (src.empty() || src == "-") {
    text = slurp(in);
  } else if (src.front() == '{' || src.front() == '[') {
    text = src;
  } else {
    text = read_file(src);
  }
  return Json::parse(text);
}

std::vector<LatticePoint> load_rays(const Options& o, std::istream& in) {
  for (const auto& n : catalog::fan_names())
    if (o.fan == n) return catalog::bundled_fan(n).fan.rays();
  const auto& src = o.fan.empty() ? o.input : o.fan;
  return json::decode_rays(load_input(src, o, in));
}

Fan load_fan(const Options& o, std::istream& in) {
  if (o.fan.empty()) throw DomainError("missing_fan", "--fan is required");
  for (const auto& n : catalog::fan_names())
    if (o.fan == n) return catalog::bundled_fan(n).fan;
  return json::decode_fan(load_input(o.fan, o, in));
}

ClassElement parse_class(const std::string& s, const char* what) {
  if (s.empty()) throw DomainError("missing_class", std::string("--") + what + " is required");
  if (s.front() == '[' || s.front() == '{') return json::decode_class(Json::parse(s));
  std::vector<std::int64_t> v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw json::InputError(std::string("--") + what + " must be comma-separated integers");
    }
  }
  return {v, {}};
}

std::vector<std::int64_t> parse_ints(const std::string& s) { return parse_class(s, "box").free; }

/// "lo:hi" for a cube, or "l1,..,lk:h1,..,hk".
SearchBox parse_box(const std::string& s, std::size_t k) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw json::InputError("--box must look like lo:hi or l1,..:h1,..");
  auto lo = parse_ints(s.substr(0, colon)), hi = parse_ints(s.substr(colon + 1));
  if (lo.size() == 1 && hi.size() == 1) return SearchBox::cube(k, lo[0], hi[0]);
  if (lo.size() != k || hi.size() != k) throw DomainError("dimension_mismatch", "box rank differs from the class group");
  return {lo, hi};
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json error_doc(const std::string& kind, const std::string& message) {
  auto j = json::document();
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_points(const Options& o, std::istream& in, std::ostream& out) {
  const auto p = json::decode_polytope(load_input(o.input, o, in));
  const auto pts = lattice_points(p);
  auto j = json::document();
  j["polytope"] = json::encode(p);
  j["count"] = pts.size();
  j["points"] = json::encode_points(pts);
  emit(out, j);
  return kOk;
}

int cmd_sum(const Options& o, std::istream& in, std::ostream& out) {
  const auto ps = json::decode_polytope_list(load_input(o.input, o, in));
  if (ps.empty()) throw DomainError("empty_input", "sum needs at least one polytope");
  auto s = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) s = minkowski_sum(s, ps[i]);
  const auto pts = lattice_points(s);
  auto j = json::document();
  j["polytope"] = json::encode(s);
  j["count"] = pts.size();
  j["points"] = json::encode_points(pts);
  emit(out, j);
  return kOk;
}

std::pair<LatticePolytope, LatticePolytope> load_pair(const Options& o, std::istream& in) {
  auto ps = json::decode_polytope_list(load_input(o.input.empty() ? "builtin:figure" : o.input, o, in));
  if (ps.size() != 2) throw DomainError("invalid_input", "expected exactly two polytopes");
  return {ps[0], ps[1]};
}

int cmd_p1(const Options& o, std::istream& in, std::ostream& out) {
  const auto [p, q] = load_pair(o, in);
  const auto rep = problem1_check(p, q);
  auto j = json::document();
  j["equal"] = rep.equal;
  j["missing"] = json::encode_points(rep.missing);
  j["sizeP"] = lattice_points(p).size();
  j["sizeQ"] = lattice_points(q).size();
  j["sumsetSize"] = rep.sumsetSize;
  j["targetSize"] = rep.targetSize;
  emit(out, j);
  return kOk;
}

int cmd_idp(const Options& o, std::istream& in, std::ostream& out) {
  const auto p = json::decode_polytope(load_input(o.input, o, in));
  const auto nu = o.nuMax > 0 ? o.nuMax : default_idp_nu_max(p);
  const auto entries = idp_check(p, nu);
  auto j = json::document();
  j["polytope"] = json::encode(p);
  j["nuMax"] = nu;
  j["allEqual"] = std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.report.equal; });
  j["entries"] = Json::array();
  for (const auto& e : entries) {
    auto r = json::encode(e.report);
    r["nu"] = e.nu;
    j["entries"].push_back(r);
  }
  emit(out, j);
  return kOk;
}

int cmd_normal_fan(const Options& o, std::istream& in, std::ostream& out) {
  const auto p = json::decode_polytope(load_input(o.input, o, in));
  const auto f = normal_fan(p);
  auto j = json::document();
  j["fan"] = json::encode(f);
  j["divisor"] = json::encode(polytope_divisor(f, p));
  emit(out, j);
  return kOk;
}

Json encode_sections(const std::vector<RationalVector>& ss) {
  Json a = Json::array();
  for (const auto& s : ss) a.push_back(json::encode(s));
  return a;
}

int cmd_nef(const Options& o, std::istream& in, std::ostream& out) {
  const auto f = load_fan(o, in);
  const auto d = json::decode_divisor(load_input(o.input, o, in));
  if (d.size() != f.num_rays()) throw DomainError("dimension_mismatch", "divisor length differs from the number of rays");
  const auto nef = is_nef(f, d);
  const auto ample = is_ample(f, d);
  const GaleData g(f.rays());
  auto j = json::document();
  j["divisor"] = json::encode(d);
  j["class"] = json::encode(g.class_of(d));
  j["nef"] = nef.nef;
  j["ample"] = ample.ample;
  j["sections"] = encode_sections(nef.sections);
  j["failingCone"] = nef.failingCone ? Json(*nef.failingCone) : Json(nullptr);
  emit(out, j);
  return kOk;
}

int cmd_gale(const Options& o, std::istream& in, std::ostream& out) {
  const GaleData g(load_rays(o, in));
  auto j = json::document();
  j["rays"] = json::encode_points(g.rays());
  const auto enc = json::encode(g);
  for (const auto& [k, v] : enc.items()) j[k] = v;
  emit(out, j);
  return kOk;
}

int cmd_chambers(const Options& o, std::istream& in, std::ostream& out) {
  const auto rays = load_rays(o, in);
  const auto cs = chambers(rays);
  auto j = json::document();
  j["rays"] = json::encode_points(rays);
  j["count"] = cs.size();
  j["chambers"] = Json::array();
  for (const auto& c : cs) j["chambers"].push_back(json::encode(c));
  emit(out, j);
  return kOk;
}

int cmd_diag_gens(const Options& o, std::istream& in, std::ostream& out) {
  const auto rays = load_rays(o, in);
  const auto gens = diagonal_generators(rays);
  auto j = json::document();
  j["rays"] = json::encode_points(rays);
  j["count"] = gens.size();
  j["generators"] = Json::array();
  for (const auto& g : gens) j["generators"].push_back(json::encode(g));
  emit(out, j);
  return kOk;
}

int cmd_multmap(const Options& o, std::istream& in, std::ostream& out) {
  const CoxRing ring(load_fan(o, in));
  auto complete = [&](ClassElement c) {
    if (c.torsion.empty()) c.torsion.assign(ring.gale().torsion().size(), 0);
    ring.gale().validate(c);
    return c;
  };
  const auto alpha = complete(parse_class(o.alpha, "alpha"));
  const auto beta = complete(parse_class(o.beta, "beta"));
  const auto rep = multiplication_check(ring, alpha, beta);
  auto j = json::document();
  const auto enc = json::encode(rep);
  for (const auto& [k, v] : enc.items()) j[k] = v;
  j["nefAlpha"] = to_string(nef_cone_membership(ring, alpha));
  j["nefBeta"] = to_string(nef_cone_membership(ring, beta));
  emit(out, j);
  return kOk;
}

int cmd_pn_search(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto mode = parse_search_mode(o.mode);
  std::optional<SearchBox> box;
  for (const auto& n : catalog::fan_names())
    if (o.fan == n) box = catalog::bundled_fan(n).box;
  const CoxRing ring(load_fan(o, in));
  if (!o.box.empty()) box = parse_box(o.box, ring.gale().free_rank());
  if (!box) throw DomainError("missing_box", "--box is required for fans without a bundled search box");
  SearchOptions so;
  so.threads = std::max(1u, o.threads);
  if (!o.checkpoint.empty()) so.checkpoint = o.checkpoint;
  const auto res = problem6_search(ring, *box, mode, so);
  auto j = json::document();
  j["mode"] = to_string(mode);
  j["box"] = {{"lo", box->lo}, {"hi", box->hi}};
  j["classesInBox"] = res.classesInBox;
  j["interiorClasses"] = res.interiorClasses;
  j["boundaryClasses"] = res.boundaryClasses;
  j["cells"] = res.cells;
  j["resumedFrom"] = res.resumedFrom;
  j["failureCount"] = res.failures.size();
  j["failures"] = Json::array();
  for (const auto& f : res.failures) j["failures"].push_back(json::encode(f));
  const bool alert = mode != SearchMode::NefNef && !res.failures.empty();
  j["alert"] = alert;
  if (alert) {
    const auto& f = res.failures.front();
    Json repro;
    repro["command"] = "multmap-check";
    repro["fan"] = json::encode(ring.fan());
    repro["alpha"] = json::encode(f.alpha);
    repro["beta"] = json::encode(f.beta);
    repro["expected"] = "surjective";
    repro["observed"] = json::encode(f);
    j["reproduction"] = repro;
    err << "ALERT: " << res.failures.size() << " non-surjective pair(s) among " << to_string(mode)
        << " cells; reproduction in the \"reproduction\" field\n";
  }
  emit(out, j);
  return kOk;
}

int cmd_resolution(const Options& o, std::ostream& out) {
  if (o.r < 1) throw DomainError("out_of_range", "--r must be at least 1");
  const auto r = static_cast<std::size_t>(o.r);
  const auto en = check_en_identity(r, o.maxDegree, o.maxDegree);
  const auto kz = check_koszul_identity(r, o.maxDegree);
  auto j = json::document();
  j["r"] = r;
  j["maxDegree"] = o.maxDegree;
  j["eagonNorthcott"] = json::encode(en);
  j["koszul"] = json::encode(kz);
  bool all = en.allEqual && kz.allEqual;
  if (r == 1) {
    Json bm;
    bm["eagonNorthcott"] = Json::array();
    bm["koszul"] = Json::array();
    for (std::int64_t a = 0; a <= o.maxDegree; ++a) {
      for (std::int64_t b = 0; b <= o.maxDegree; ++b) {
        const auto c = en_boundary_check_r1(a, b);
        all = all && c.exact();
        bm["eagonNorthcott"].push_back(json::encode(c));
      }
      const auto c = koszul_boundary_check_r1(a);
      all = all && c.exact();
      bm["koszul"].push_back(json::encode(c));
    }
    j["boundaryMaps"] = bm;
  }
  j["allEqual"] = all;
  emit(out, j);
  return kOk;
}

int cmd_figure(const Options& o, std::istream& in, std::ostream& out) {
  const auto [p, q] = load_pair(o, in);
  const auto doc = svg::render(svg::sum_figure(p, q));
  if (o.output.empty() || o.output == "-") {
    out << doc;
    return kOk;
  }
  std::ofstream f(o.output);
  if (!f || !(f << doc)) throw DomainError("io_error", "cannot write " + o.output);
  auto j = json::document();
  j["written"] = o.output;
  j["bytes"] = doc.size();
  emit(out, j);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lattice points of Minkowski sums, toric divisors and Cox ring checks", "latsum"};
  app.require_subcommand(1);

  auto add = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  auto input = [&](CLI::App* s) { s->add_option("input", o.input, "JSON file, '-', inline JSON, builtin:<name> or random:<kind>"); };
  auto seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "seed for random:<kind> inputs"); };
  auto fan = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--fan", o.fan, "bundled fan name, JSON file or inline JSON");
    if (required) opt->required();
  };

  auto* points = add("points", "lattice points of a polytope");
  input(points), seed(points);
  auto* sum = add("sum", "Minkowski sum of polytopes");
  input(sum), seed(sum);
  auto* p1 = add("p1-check", "compare (M cap P) + (M cap Q) with M cap (P + Q)");
  input(p1), seed(p1);
  auto* idp = add("idp-check", "integer decomposition check up to --nu-max");
  input(idp), seed(idp);
  idp->add_option("--nu-max", o.nuMax, "largest dilation factor")->check(CLI::PositiveNumber);
  auto* nf = add("normal-fan", "normal fan of a full-dimensional polytope");
  input(nf), seed(nf);
  auto* nef = add("nef", "nef and ample test for a torus-invariant divisor");
  input(nef), fan(nef, true);
  auto* gale = add("gale", "class group and degrees of the rays");
  input(gale), fan(gale, false);
  auto* ch = add("chambers", "chambers of the ray hyperplane arrangement");
  input(ch), fan(ch, false);
  auto* dg = add("diag-gens", "binomial generators from chamber Hilbert bases");
  input(dg), fan(dg, false);
  auto* mm = add("multmap-check", "S_alpha x S_beta -> S_{alpha+beta} surjectivity");
  fan(mm, true);
  mm->add_option("--alpha", o.alpha, "class: comma-separated free coordinates or JSON")->required();
  mm->add_option("--beta", o.beta, "class: comma-separated free coordinates or JSON")->required();
  auto* pn = add("pn-search", "scan a box of classes for non-surjective multiplication maps");
  fan(pn, true);
  pn->add_option("--box", o.box, "lo:hi or l1,..,lk:h1,..,hk");
  pn->add_option("--mode", o.mode, "ample-nef, ample-ample or nef-nef");
  pn->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  pn->add_option("--checkpoint", o.checkpoint, "checkpoint file for resumable scans");
  auto* rc = add("resolution-check", "Euler characteristic checks on projective space");
  rc->add_option("--r", o.r, "dimension of projective space")->required();
  rc->add_option("--max-degree", o.maxDegree, "largest degree checked")->required();
  auto* fig = add("figure", "SVG picture of P, Q and P + Q with missing points crossed");
  input(fig), seed(fig);
  fig->add_option("--output,-o", o.output, "SVG path (default: standard output)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit(err, error_doc("usage", e.what()));
    return kUsage;
  }

  try {
    if (points->parsed()) return cmd_points(o, in, out);
    if (sum->parsed()) return cmd_sum(o, in, out);
    if (p1->parsed()) return cmd_p1(o, in, out);
    if (idp->parsed()) return cmd_idp(o, in, out);
    if (nf->parsed()) return cmd_normal_fan(o, in, out);
    if (nef->parsed()) return cmd_nef(o, in, out);
    if (gale->parsed()) return cmd_gale(o, in, out);
    if (ch->parsed()) return cmd_chambers(o, in, out);
    if (dg->parsed()) return cmd_diag_gens(o, in, out);
    if (mm->parsed()) return cmd_multmap(o, in, out);
    if (pn->parsed()) return cmd_pn_search(o, in, out, err);
    if (rc->parsed()) return cmd_resolution(o, out);
    if (fig->parsed()) return cmd_figure(o, in, out);
  } catch (const Json::parse_error& e) {
    emit(err, error_doc("malformed_json", e.what()));
    return kMalformedInput;
  } catch (const json::InputError& e) {
    emit(err, error_doc("malformed_input", e.what()));
    return kMalformedInput;
  } catch (const Json::exception& e) {
    emit(err, error_doc("malformed_input", e.what()));
    return kMalformedInput;
  } catch (const DomainError& e) {
    emit(err, error_doc(e.kind(), e.what()));
    return kDomainError;
  } catch (const std::filesystem::filesystem_error& e) {
    emit(err, error_doc("io_error", e.what()));
    return kDomainError;
  }
  emit(err, error_doc("usage", "no subcommand"));
  return kUsage;
}

}  // namespace latsum::cli
