// The polaris command line.  run() returns the exit code:
//   0 success / valid, 1 invalid data or rejected construction, 2 usage or I/O.
#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polaris/billiard.hpp"
#include "polaris/constructions.hpp"
#include "polaris/corpus.hpp"
#include "polaris/coxeter.hpp"
#include "polaris/io.hpp"
#include "polaris/svg.hpp"
#include "polaris/torus_actions.hpp"

namespace polaris {

class UsageError : public IoError {
 public:
  explicit UsageError(const std::string& what) : IoError(what) {}
};

// ---------------------------------------------------------------------------
// JSON forms of construction inputs.

inline Json gamma_to_json(const GammaSpec& g) {
  Json gens = Json::array();
  for (const auto& x : g.generators) gens.push_back({{"shift", x.shift}, {"reflect", x.reflect}, {"witness", x.witness}});
  Json j{{"name", g.name}, {"generators", gens}};
  if (g.normal_in_pi) j["normal_in_pi"] = *g.normal_in_pi;
  return j;
}

inline GammaSpec gamma_from_json(const Json& j) {
  GammaSpec g;
  g.name = j.at("name").get<std::string>();
  for (const auto& x : j.value("generators", Json::array()))
    g.generators.push_back({x.at("shift").get<int>(), x.value("reflect", false),
                            x.value("witness", std::map<std::string, std::string>{})});
  if (j.contains("normal_in_pi")) g.normal_in_pi = j.at("normal_in_pi").get<bool>();
  return g;
}

inline Json descriptor_to_json(const QuotientDescriptor& q) {
  Json j;
  j["base"] = to_json(q.base);
  j["gamma"] = gamma_to_json(q.gamma);
  j["gamma_order"] = q.elements.size();
  j["side_orbits"] = q.side_orbits;
  j["corner_orbits"] = q.corner_orbits;
  j["cone_order"] = q.cone_order;
  j["reflection_axes"] = q.reflection_axes;
  j["polar_group"] = q.polar_group;
  return j;
}

// Recomputes the descriptor from its base and group, and checks the
// recorded order.
inline QuotientDescriptor descriptor_from_json(const Json& j) {
  if (!j.contains("base") || !j.contains("gamma")) throw Error("malformed descriptor: needs base and gamma");
  auto q = quotient_descriptor(polar_data_from_json(j.at("base")), gamma_from_json(j.at("gamma")));
  if (j.contains("gamma_order") && j.at("gamma_order").get<std::size_t>() != q.elements.size())
    throw Error("malformed descriptor: recorded group order " + std::to_string(j.at("gamma_order").get<std::size_t>()) +
                " but the generators give " + std::to_string(q.elements.size()));
  return q;
}

inline Json homs_to_json(std::size_t r, const HomAssignment& h) {
  Json m = Json::object();
  for (const auto& [v, phi] : h) m[v] = phi.matrix;
  return {{"rank", r}, {"homs", m}};
}

inline std::pair<std::size_t, HomAssignment> homs_from_json(const Json& j, std::size_t n) {
  const std::size_t r = j.at("rank").get<std::size_t>();
  HomAssignment h;
  for (const auto& [v, m] : j.at("homs").items()) h[v] = TorusHom{n, r, m.get<IntMatrix>()};
  return {r, h};
}

inline Json report_to_json(const ValidationReport& rep) {
  Json arr = Json::array();
  for (const auto& c : rep.checks)
    arr.push_back({{"code", c.code}, {"location", c.location}, {"passed", c.passed}, {"message", c.message}});
  return {{"valid", rep.valid()}, {"checks", arr}};
}

// ---------------------------------------------------------------------------
// Small parsers.

inline std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + tok + "'");
    }
  }
  return out;
}

inline std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (double d : parse_doubles(s)) {
    if (d != std::floor(d)) throw UsageError("not an integer: " + std::to_string(d));
    out.push_back(static_cast<int>(d));
  }
  return out;
}

// corner:ID[:RADIUS] | cross:SIDE:T:SIDE:T | interval:POSITION:lower|upper
inline CutArc parse_cut(const std::string& s) {
  std::vector<std::string> f;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) f.push_back(tok);
  auto number = [&](const std::string& x) { return parse_doubles(x).at(0); };
  if (!f.empty() && f[0] == "corner" && (f.size() == 2 || f.size() == 3))
    return CornerTruncation{f[1], f.size() == 3 ? number(f[2]) : 0.25};
  if (!f.empty() && f[0] == "cross" && f.size() == 5) return CrossCut{f[1], number(f[2]), f[3], number(f[4])};
  if (!f.empty() && f[0] == "interval" && f.size() == 3 && (f[2] == "lower" || f[2] == "upper"))
    return IntervalCut{number(f[1]), f[2] == "lower"};
  throw UsageError("bad cut '" + s + "' (corner:ID[:R], cross:S:T:S:T or interval:X:lower|upper)");
}

inline Orientation parse_orientation(const std::string& s) {
  if (s == "auto") return Orientation::automatic;
  if (s == "keep") return Orientation::keep;
  if (s == "reverse") return Orientation::reverse;
  throw UsageError("orientation must be auto, keep or reverse");
}

inline std::string pi_multiple(const Rational& r) {
  if (r.numerator() == 0) return "0";
  std::string s = r.numerator() == 1 ? "" : (r.numerator() == -1 ? "-" : std::to_string(r.numerator()));
  s += "pi";
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

inline std::string fixed(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

// ---------------------------------------------------------------------------

struct CliContext {
  std::ostream& out;
  std::ostream& err;
  std::string catalog_path;

  Catalog catalog() const {
    std::string path = catalog_path;
    if (path.empty())
      if (const char* env = std::getenv("POLARIS_CATALOG")) path = env;
    if (path.empty()) return default_catalog();
    return load_catalog(path);
  }

  void emit(const std::string& path, const std::string& text) const {
    if (path.empty() || path == "-") out << text;
    else write_text_file(path, text);
  }
};

namespace cli {

inline int cmd_validate(const CliContext& cx, const std::string& file, bool json) {
  const PolarData d = load_polar_data(file);
  const auto rep = validate(d, cx.catalog());
  if (json) {
    cx.out << dump(report_to_json(rep));
  } else {
    for (const auto& c : rep.checks)
      cx.out << (c.passed ? "ok   " : "FAIL ") << c.code << " " << c.location << ": " << c.message << "\n";
    cx.out << (rep.valid() ? "valid" : "invalid") << "\n";
  }
  return rep.valid() ? 0 : 1;
}

inline int cmd_invariants(const CliContext& cx, const std::string& file) {
  const PolarData d = load_polar_data(file);
  const auto geom = chamber_geometry(d.chamber);
  cx.out << "kappa: " << geom.kappa << "\n";
  if (geom.area_over_pi) cx.out << "area: " << pi_multiple(*geom.area_over_pi) << "\n";
  else if (d.chamber.dimension == 2 && d.chamber.k() > 0) cx.out << "area: flat (not determined by the angles)\n";
  if (d.chamber.dimension != 2) {
    cx.out << "section: one-dimensional\n";
    return 0;
  }
  if (!d.pi || !d.pi->order) {
    cx.out << "section: non-compact or polar group not declared, chi undefined\n";
    return 0;
  }
  const auto s = section_invariants(d);
  cx.out << "pi order: " << s.pi_order << "\n";
  cx.out << "chi: " << to_string(s.chi) << "\n";
  if (s.total_area_over_pi) cx.out << "section area: " << pi_multiple(*s.total_area_over_pi) << "\n";
  if (s.genus) cx.out << "genus: " << *s.genus << "\n";
  if (!s.surface.empty()) cx.out << "surface: " << s.surface << "\n";
  for (const auto& p : s.problems) cx.out << "problem: " << p << "\n";
  return s.problems.empty() ? 0 : 1;
}

inline int cmd_develop(const CliContext& cx, const std::string& file, std::size_t max_elems, double tol, bool table) {
  const PolarData d = load_polar_data(file);
  const auto R = realize_chamber(d.chamber);
  for (const auto& w : R.warnings) cx.err << "warning: " << w << "\n";
  const auto dev = develop(R, max_elems, tol);
  cx.out << "status: " << status_name(dev.status) << "\n";
  if (dev.status == DevelopmentStatus::closed_finite) {
    cx.out << "order: " << dev.order() << "\n";
    cx.out << "order x area: " << fixed(static_cast<double>(dev.order()) * R.area) << " (4pi = " << fixed(4 * kPi) << ")\n";
  }
  const auto pc = pi_consistency(d, dev);
  for (const auto& n : pc.notes) cx.out << "pi: " << n << "\n";
  if (table) cx.out << development_table(dev);
  return pc.consistent ? 0 : 1;
}

inline int cmd_classify(const CliContext& cx, const std::string& seq_file, const std::vector<std::string>& vecs) {
  IntMatrix v;
  if (!seq_file.empty()) v = sequence_from_json(read_json_file(seq_file));
  for (const auto& s : vecs) {
    IntVector row;
    for (int x : parse_ints(s)) row.push_back(x);
    v.push_back(row);
  }
  if (v.empty()) throw UsageError("classify needs --seq FILE or vectors like 0,1 1,0");
  const auto seq = make_sequence(v);
  const auto rep = validate_sequence(seq);
  if (!rep.valid()) {
    for (const auto& p : rep.problems) cx.out << "FAIL " << p << "\n";
    cx.out << "invalid\n";
    return 1;
  }
  const auto norm = normalize(seq);
  cx.out << "normal form:";
  for (const auto& x : norm.v) cx.out << " " << to_string(x);
  cx.out << "\n";
  if (seq.n == 2) {
    const auto c = classify4(seq);
    cx.out << "b2: " << c.b2 << "\nsignature: " << c.signature << "\nform: " << (c.even ? "even" : "odd") << "\n";
    cx.out << "manifold: " << c.type << "\n";
  }
  return 0;
}

inline int cmd_glue(const CliContext& cx, const std::string& a, const std::string& b, const std::string& ca,
                    const std::string& cb, const std::string& orient, const std::string& out) {
  const auto res = glue(load_polar_data(a), parse_cut(ca), load_polar_data(b), parse_cut(cb), cx.catalog(),
                        parse_orientation(orient));
  if (res.b_reversed) cx.err << "second chamber used with reversed orientation\n";
  for (const auto& p : res.provenance) cx.err << p << "\n";
  cx.emit(out, dump(to_json(res.data)));
  return 0;
}

inline int cmd_connect_sum(const CliContext& cx, const std::string& a, const std::string& corner_a, const std::string& b,
                           const std::string& corner_b, const std::string& orient, const std::string& out) {
  const auto res = connected_sum_fixed_points(load_polar_data(a), corner_a, load_polar_data(b), corner_b, cx.catalog(),
                                              parse_orientation(orient));
  for (const auto& p : res.provenance) cx.err << p << "\n";
  cx.emit(out, dump(to_json(res.data)));
  return 0;
}

inline int cmd_lift(const CliContext& cx, const std::string& file, const std::string& homs, int forget, const std::string& out) {
  const PolarData d = load_polar_data(file);
  if (forget > 0) {
    cx.emit(out, dump(to_json(forget_structure_torus(d, static_cast<std::size_t>(forget)))));
    return 0;
  }
  if (homs.empty()) throw UsageError("lift needs --homs FILE or --forget R");
  if (!is_torus(d.graph.principal)) throw Error("lift: only torus data can be lifted");
  const auto [r, h] = homs_from_json(read_json_file(homs), std::get<TorusSubgroup>(d.graph.principal).ambient_rank());
  const auto res = bundle_lift(d, r, h);
  for (const auto& f : res.freeness) cx.err << f << "\n";
  cx.emit(out, dump(to_json(res.data)));
  return 0;
}

inline int cmd_quotient(const CliContext& cx, const std::string& file, const std::string& gamma, const std::string& out) {
  const auto q = quotient_descriptor(load_polar_data(file), gamma_from_json(read_json_file(gamma)));
  for (const auto& r : q.report) cx.err << r << "\n";
  cx.emit(out, dump(descriptor_to_json(q)));
  return 0;
}

inline int cmd_cover(const CliContext& cx, const std::string& file, const std::string& out) {
  const auto res = cover_expand(descriptor_from_json(read_json_file(file)));
  if (res.exceptional) {
    cx.emit(out, dump(Json{{"exceptional", {{"homogeneous", res.exceptional->homogeneous},
                                           {"section", res.exceptional->section},
                                           {"polar_group", res.exceptional->polar_group}}}}));
    return 0;
  }
  if (res.gamma) cx.err << "chamber symmetry " << res.gamma->name << " recorded\n";
  cx.emit(out, dump(to_json(*res.data)));
  return 0;
}

struct BilliardArgs {
  std::string data, p, q, codims, svg, census;
  double lmax = 0, delta = 1e-6;
  int nu = -1;
  std::size_t budget = 0;
};

inline int cmd_billiard(const CliContext& cx, const BilliardArgs& a) {
  const PolarData d = load_polar_data(a.data);
  BilliardConfig cfg;
  cfg.chamber = realize_chamber(d.chamber);
  for (const auto& w : cfg.chamber.warnings) cx.err << "warning: " << w << "\n";
  auto point = [&](const std::string& s) {
    const auto v = parse_doubles(s);
    if (v.size() != static_cast<std::size_t>(cfg.chamber.dimension))
      throw UsageError("point '" + s + "' needs " + std::to_string(cfg.chamber.dimension) + " coordinates");
    return chamber_point(cfg.chamber, v[0], v.size() > 1 ? v[1] : 0);
  };
  cfg.p = point(a.p);
  cfg.q = point(a.q);
  cfg.lmax = a.lmax;
  cfg.codims = parse_ints(a.codims);
  if (a.nu >= 0) cfg.nu = a.nu;
  cfg.delta = a.delta;
  cfg.node_budget = a.budget;
  if (!a.census.empty()) {
    const auto radii = parse_doubles(a.census);
    const auto cs = census(cfg, radii);
    cx.out << "# L\tN(L)\n";
    std::vector<std::pair<double, double>> samples;
    for (std::size_t i = 0; i < cs.radii.size() && cs.radii[i] <= cs.reached; ++i) {
      cx.out << fixed(cs.radii[i], 6) << "\t" << cs.counts[i] << "\n";
      if (cs.counts[i] > 0) samples.emplace_back(cs.radii[i], static_cast<double>(cs.counts[i]));
    }
    if (cs.budget_hit)
      cx.out << "# node budget exhausted after " << cs.tiles_visited << " tiles: counts exact up to L = " << fixed(cs.reached, 6)
             << " only\n";
    if (samples.size() >= 10) cx.out << "# growth: " << growth_name(growth_classify(samples)) << "\n";
    return cs.budget_hit ? 1 : 0;
  }
  const auto rep = unfold_enumerate(cfg);
  cx.out << trajectory_table(rep);
  const auto series = morse_series(rep.trajectories, cfg);
  cx.out << "# trajectories: " << rep.trajectories.size() << "\n";
  cx.out << "# index histogram:";
  for (const auto& [i, n] : series.histogram) cx.out << " " << i << ":" << n;
  cx.out << "\n# " << series.interpretation << "\n";
  for (const auto& n : rep.notes) cx.out << "# " << n << "\n";
  if (!a.svg.empty()) write_text_file(a.svg, render_billiard(cfg, rep));
  return rep.budget_hit ? 1 : 0;
}

inline int cmd_render(const CliContext& cx, const std::string& file, double tiling, const std::string& out) {
  const PolarData d = load_polar_data(file);
  if (d.chamber.dimension > 2) throw UsageError("render: dimension > 2 is not drawn");
  std::string svg;
  if (tiling > 0 && d.chamber.dimension == 2) svg = render_tiling(realize_chamber(d.chamber), tiling);
  else svg = render_chamber(d);
  cx.emit(out, svg);
  return 0;
}

inline int cmd_corpus(const CliContext& cx, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
  auto put = [&](const std::string& name, const std::string& text) {
    write_text_file((fs::path(dir) / name).string(), text);
    cx.out << (fs::path(dir) / name).string() << "\n";
  };
  for (const auto& [name, d] : corpus()) put(name, dump(to_json(d)));
  put("catalog.json", dump(catalog_to_json(default_catalog())));
  put("cp2_fan.json", dump(sequence_to_json(cp2_fan())));
  put("figure4_fan.json", dump(sequence_to_json(figure4_vectors(1))));
  put("hopf_homs.json", dump(homs_to_json(1, hopf_homs())));
  put("gamma_z3.json", dump(gamma_to_json(figure2_rotation())));
  put("gamma_z2.json", dump(gamma_to_json(figure2_reflection())));
  return 0;
}

}  // namespace cli

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"polaris: polar actions from chamber data"};
  app.require_subcommand(1);
  CliContext cx{out, err, ""};
  app.add_option("--catalog", cx.catalog_path, "catalog JSON (default: $POLARIS_CATALOG, else built in)");

  std::string file, file2, out_path, cut_a, cut_b, orient = "auto", homs, gamma, seq, corner_a, corner_b;
  std::vector<std::string> vecs;
  bool json = false, table = false;
  std::size_t max_elems = 100000;
  double tol = 1e-7, tiling = 0;
  int forget = 0;
  cli::BilliardArgs ba;
  int code = 0;

  auto* v = app.add_subcommand("validate", "check the compatibility conditions");
  v->add_option("file", file)->required();
  v->add_flag("--json", json, "JSON report");
  v->callback([&] { code = cli::cmd_validate(cx, file, json); });

  auto* inv = app.add_subcommand("invariants", "curvature, area, Euler characteristic and genus of the section");
  inv->add_option("file", file)->required();
  inv->callback([&] { code = cli::cmd_invariants(cx, file); });

  auto* dv = app.add_subcommand("develop", "develop the chamber under its reflection group");
  dv->add_option("file", file)->required();
  dv->add_option("--max-elems", max_elems, "element budget");
  dv->add_option("--tolerance", tol, "matrix identification tolerance");
  dv->add_flag("--table", table, "print the element table");
  dv->callback([&] { code = cli::cmd_develop(cx, file, max_elems, tol, table); });

  auto* cl = app.add_subcommand("classify", "torus weight sequences (4-manifold type for T^2)");
  cl->add_option("--seq", seq, "JSON array of integer vectors");
  cl->add_option("vectors", vecs, "vectors like 0,1 1,0 1,1 1,0");
  cl->callback([&] { code = cli::cmd_classify(cx, seq, vecs); });

  auto* gl = app.add_subcommand("glue", "cut two chambers along arcs and glue them");
  gl->add_option("a", file)->required();
  gl->add_option("b", file2)->required();
  gl->add_option("--cut-a", cut_a)->required();
  gl->add_option("--cut-b", cut_b)->required();
  gl->add_option("--orientation", orient, "auto | keep | reverse");
  gl->add_option("-o,--out", out_path);
  gl->callback([&] { code = cli::cmd_glue(cx, file, file2, cut_a, cut_b, orient, out_path); });

  auto* cs = app.add_subcommand("connect-sum", "equivariant connected sum at fixed points (corners)");
  cs->add_option("a", file)->required();
  cs->add_option("corner_a", corner_a)->required();
  cs->add_option("b", file2)->required();
  cs->add_option("corner_b", corner_b)->required();
  cs->add_option("--orientation", orient, "auto | keep | reverse");
  cs->add_option("-o,--out", out_path);
  cs->callback([&] { code = cli::cmd_connect_sum(cx, file, corner_a, file2, corner_b, orient, out_path); });

  auto* lf = app.add_subcommand("lift", "principal torus bundle lift, or --forget to project it away");
  lf->add_option("file", file)->required();
  lf->add_option("--homs", homs, "JSON {rank, homs: {vertex: matrix}}");
  lf->add_option("--forget", forget, "drop the first R torus coordinates");
  lf->add_option("-o,--out", out_path);
  lf->callback([&] { code = cli::cmd_lift(cx, file, homs, forget, out_path); });

  auto* qu = app.add_subcommand("quotient", "quotient descriptor by a chamber symmetry group");
  qu->add_option("file", file)->required();
  qu->add_option("--gamma", gamma)->required();
  qu->add_option("-o,--out", out_path);
  qu->callback([&] { code = cli::cmd_quotient(cx, file, gamma, out_path); });

  auto* co = app.add_subcommand("cover", "expand a quotient descriptor back to polar data");
  co->add_option("file", file)->required();
  co->add_option("-o,--out", out_path);
  co->callback([&] { code = cli::cmd_cover(cx, file, out_path); });

  auto* bi = app.add_subcommand("billiard", "billiard geodesics from p to q with Morse indices");
  bi->add_option("--data", ba.data)->required();
  bi->add_option("--p", ba.p, "start point x,y in chamber chart coordinates")->required();
  bi->add_option("--q", ba.q, "target point x,y")->required();
  bi->add_option("--lmax", ba.lmax)->required();
  bi->add_option("--codims", ba.codims, "face codimensions c1,c2,... in side order")->required();
  bi->add_option("--nu", ba.nu, "conjugate point multiplicity (curvature +1)");
  bi->add_option("--delta", ba.delta, "corner rejection tolerance");
  bi->add_option("--svg", ba.svg, "draw the unfolded trajectories");
  bi->add_option("--census", ba.census, "only count trajectories up to each L1,L2,...");
  bi->add_option("--budget", ba.budget, "tile budget (0 = none)");
  bi->callback([&] { code = cli::cmd_billiard(cx, ba); });

  auto* re = app.add_subcommand("render", "SVG of a chamber or its tiling");
  re->add_option("file", file)->required();
  re->add_option("--tiling", tiling, "draw tiles within this radius (spheres: all tiles)");
  re->add_option("-o,--out", out_path);
  re->callback([&] { code = cli::cmd_render(cx, file, tiling, out_path); });

  auto* cp = app.add_subcommand("corpus", "write the bundled examples into a directory");
  cp->add_option("dir", file)->required();
  cp->callback([&] { code = cli::cmd_corpus(cx, file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace polaris
