// Constructions on polar data: cutting and gluing chambers, connected sums
// at fixed points, principal torus bundle lifts, and quotient / cover
// descriptors for chamber symmetries.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "polaris/coxeter.hpp"
#include "polaris/polar_data.hpp"

namespace polaris {

// ---------------------------------------------------------------------------
// Cuts.

struct CornerTruncation {
  std::string corner;
  double radius = 0.25;
};

// Geodesic from a point of side a to a point of side b meeting both
// orthogonally; the piece kept runs counterclockwise from a to b.
struct CrossCut {
  std::string side_a;
  double t_a = 0.5;
  std::string side_b;
  double t_b = 0.5;
};

// A regular point of an interval; keep_lower keeps the piece with the
// first endpoint.
struct IntervalCut {
  double position = 0.5;
  bool keep_lower = true;
};

using CutArc = std::variant<CornerTruncation, CrossCut, IntervalCut>;

inline std::string cut_kind(const CutArc& c) {
  if (std::holds_alternative<CornerTruncation>(c)) return "corner-truncation";
  if (std::holds_alternative<CrossCut>(c)) return "cross-cut";
  return "interval-cut";
}

enum class Orientation { automatic, keep, reverse };

// Mirror image: the boundary read clockwise.  Ids and marks are unchanged.
inline PolarData reversed(const PolarData& d) {
  PolarData out = d;
  auto& c = out.chamber;
  if (c.dimension == 1) {
    std::reverse(c.sides.begin(), c.sides.end());
    return out;
  }
  const std::size_t k = c.k();
  for (std::size_t i = 0; i < k; ++i) {
    c.sides[i] = d.chamber.sides[k - 1 - i];
    c.corners[i] = d.chamber.corners[(k - i) % k];
  }
  return out;
}

namespace detail {

struct PieceSide {
  std::string origin;  // id in the source chamber, empty for the arc
  GroupRef mark;
};

struct PieceCorner {
  std::string origin;  // empty for a corner created by the cut
  int order = 2;
  std::optional<GroupRef> mark;
};

// Boundary of the kept piece: sides[0] is the cut side a, sides[m-1] the
// cut side b, the arc is implicit after it; corners[j] precedes sides[j],
// corners[0] and corners[m] are the right-angled corners on the arc.
struct Piece {
  std::vector<PieceSide> sides;
  std::vector<PieceCorner> corners;
  std::optional<std::string> removed_corner;
};

inline Piece cut_polygon(const PolarData& d, std::size_t a, std::size_t b, std::optional<std::string> removed) {
  const auto& c = d.chamber;
  const std::size_t k = c.k();
  Piece p;
  p.removed_corner = removed;
  const std::size_t m = (b + k - a) % k + 1;
  p.corners.push_back({"", 2, std::nullopt});
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t s = (a + j) % k;
    if (j > 0) p.corners.push_back({c.corners[s].id, c.corners[s].order, d.graph.corners.at(c.corners[s].id)});
    p.sides.push_back({c.sides[s].id, d.graph.faces.at(c.sides[s].id)});
  }
  p.corners.push_back({"", 2, std::nullopt});
  return p;
}

inline Piece cut(const PolarData& d, const CutArc& arc) {
  const auto& c = d.chamber;
  if (c.dimension != 2) throw Error("polygon cut applied to a " + std::to_string(c.dimension) + "-dimensional chamber");
  if (auto t = std::get_if<CornerTruncation>(&arc)) {
    const auto ci = c.corner_index(t->corner);
    if (!ci) throw Error("unknown corner '" + t->corner + "'");
    if (!(t->radius > 0)) throw Error("truncation radius must be positive");
    return cut_polygon(d, *ci, c.prev(*ci), t->corner);
  }
  const auto& x = std::get<CrossCut>(arc);
  const auto a = c.side_index(x.side_a), b = c.side_index(x.side_b);
  if (!a || !b) throw Error("cross-cut names an unknown side");
  if (*a == *b) throw Error("cross-cut endpoints must lie on different sides");
  for (double t : {x.t_a, x.t_b})
    if (!(t > 0 && t < 1)) throw Error("cross-cut endpoints must lie in side interiors (0 < t < 1)");
  return cut_polygon(d, *a, *b, std::nullopt);
}

inline std::optional<std::string> first_mismatch(const Piece& A, const Piece& B, const PolarData& da, const PolarData& db) {
  if (!(da.graph.principal == db.graph.principal))
    return "principal: " + describe(da.graph.principal) + " vs " + describe(db.graph.principal);
  const auto& aa = A.sides.front();
  const auto& ab = A.sides.back();
  const auto& ba = B.sides.front();
  const auto& bb = B.sides.back();
  if (!(aa.mark == bb.mark)) return aa.origin + " vs " + bb.origin + ": " + describe(aa.mark) + " vs " + describe(bb.mark);
  if (!(ab.mark == ba.mark)) return ab.origin + " vs " + ba.origin + ": " + describe(ab.mark) + " vs " + describe(ba.mark);
  if (A.removed_corner && B.removed_corner) {
    const auto& ma = da.graph.corners.at(*A.removed_corner);
    const auto& mb = db.graph.corners.at(*B.removed_corner);
    if (!(ma == mb)) return *A.removed_corner + " vs " + *B.removed_corner + ": " + describe(ma) + " vs " + describe(mb);
  }
  return std::nullopt;
}

inline PolarData glue_pieces(const Piece& A, const Piece& B, const PolarData& da, const PolarData& db,
                             std::vector<std::string>& provenance) {
  const std::size_t ma = A.sides.size(), mb = B.sides.size();
  struct Out {
    std::string origin;
    GroupRef mark;
  };
  std::vector<Out> sides;
  std::vector<PieceCorner> corners;
  corners.push_back(B.corners[mb - 1]);
  sides.push_back({"B." + B.sides[mb - 1].origin + "+A." + A.sides[0].origin, A.sides[0].mark});
  for (std::size_t j = 1; j + 1 < ma; ++j) {
    corners.push_back(A.corners[j]);
    sides.push_back({"A." + A.sides[j].origin, A.sides[j].mark});
  }
  corners.push_back(A.corners[ma - 1]);
  sides.push_back({"A." + A.sides[ma - 1].origin + "+B." + B.sides[0].origin, A.sides[ma - 1].mark});
  for (std::size_t j = 1; j + 1 < mb; ++j) {
    corners.push_back(B.corners[j]);
    sides.push_back({"B." + B.sides[j].origin, B.sides[j].mark});
  }
  // corners taken from the pieces are original corners: the two created by
  // each cut merged pairwise into straight angles along the joined sides
  PolarData out;
  out.chamber.dimension = 2;
  out.graph.principal = da.graph.principal;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    const std::string sid = "s" + std::to_string(i), cid = "c" + std::to_string(i);
    const auto& corner = corners[i];
    if (!corner.mark) throw Error("glue: internal error, unmerged arc corner");
    if (!allowed_weyl_order(corner.order)) throw Error("glue: resulting angle order " + std::to_string(corner.order) + " not in {2,3,4,6}");
    out.chamber.sides.push_back({sid, std::nullopt});
    out.chamber.corners.push_back({cid, corner.order});
    out.graph.faces.emplace(sid, sides[i].mark);
    out.graph.corners.emplace(cid, *corner.mark);
    provenance.push_back(sid + " <- " + sides[i].origin);
  }
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const bool from_a = i >= 1 && i < ma;
    provenance.push_back("c" + std::to_string(i) + " <- " + (from_a ? "A." : "B.") + corners[i].origin);
  }
  if (da.pi && db.pi && da.pi->order == db.pi->order && da.pi->orientable == db.pi->orientable) {
    PiSpec pi = *da.pi;
    pi.name = da.pi->name == db.pi->name ? da.pi->name : da.pi->name + "/" + db.pi->name;
    pi.normal_subgroups.clear();
    out.pi = pi;
  }
  return out;
}

inline PolarData glue_intervals(const PolarData& a, const IntervalCut& ca, const PolarData& b, const IntervalCut& cb,
                                std::vector<std::string>& provenance) {
  auto len = [](const PolarData& d) {
    if (!d.chamber.length) throw Error("interval cut needs the interval length");
    return *d.chamber.length;
  };
  const double la = len(a), lb = len(b);
  for (auto [c, l] : {std::pair{ca, la}, std::pair{cb, lb}})
    if (!(c.position > 0 && c.position < l)) throw Error("interval cut must lie at an interior point");
  if (ca.keep_lower == cb.keep_lower) throw Error("interval gluing needs one lower and one upper piece");
  if (!(a.graph.principal == b.graph.principal))
    throw Error("glue: marks differ at principal: " + describe(a.graph.principal) + " vs " + describe(b.graph.principal));
  const PolarData& lower = ca.keep_lower ? a : b;
  const PolarData& upper = ca.keep_lower ? b : a;
  const double lower_len = ca.keep_lower ? ca.position : cb.position;
  const double upper_len = ca.keep_lower ? lb - cb.position : la - ca.position;
  PolarData out = lower;
  out.chamber.sides = {lower.chamber.sides[0], upper.chamber.sides[1]};
  if (out.chamber.sides[0].id == out.chamber.sides[1].id) {
    out.chamber.sides[0].id = "minus";
    out.chamber.sides[1].id = "plus";
  }
  out.chamber.length = lower_len + upper_len;
  out.graph.faces.clear();
  out.graph.faces.emplace(out.chamber.sides[0].id, lower.graph.faces.at(lower.chamber.sides[0].id));
  out.graph.faces.emplace(out.chamber.sides[1].id, upper.graph.faces.at(upper.chamber.sides[1].id));
  provenance.push_back(out.chamber.sides[0].id + " <- lower." + lower.chamber.sides[0].id);
  provenance.push_back(out.chamber.sides[1].id + " <- upper." + upper.chamber.sides[1].id);
  return out;
}

}  // namespace detail

struct GlueResult {
  PolarData data;
  bool b_reversed = false;
  std::vector<std::string> provenance;
  ValidationReport report;
};

inline void require_valid(const PolarData& d, const Catalog& cat, const std::string& what) {
  const auto rep = validate(d, cat);
  if (!rep.valid()) {
    const auto f = rep.failures().front();
    throw Error(what + " is not valid: " + f.code + " at " + f.location + ": " + f.message);
  }
}

inline GlueResult glue(const PolarData& a, const CutArc& arc_a, const PolarData& b, const CutArc& arc_b,
                       const Catalog& cat = Catalog(), Orientation orientation = Orientation::automatic) {
  require_valid(a, cat, "first input");
  require_valid(b, cat, "second input");
  if (arc_a.index() != arc_b.index())
    throw Error("glue: arc types differ (" + cut_kind(arc_a) + " vs " + cut_kind(arc_b) + ")");
  GlueResult res;
  if (auto ia = std::get_if<IntervalCut>(&arc_a)) {
    res.data = detail::glue_intervals(a, *ia, b, std::get<IntervalCut>(arc_b), res.provenance);
  } else {
    const detail::Piece pa = detail::cut(a, arc_a);
    std::optional<std::string> first_problem;
    std::vector<Orientation> tries;
    if (orientation == Orientation::automatic) tries = {Orientation::keep, Orientation::reverse};
    else tries = {orientation};
    bool done = false;
    for (Orientation o : tries) {
      const PolarData bb = o == Orientation::reverse ? reversed(b) : b;
      const detail::Piece pb = detail::cut(bb, arc_b);
      if (auto problem = detail::first_mismatch(pa, pb, a, bb)) {
        if (!first_problem) first_problem = problem;
        continue;
      }
      res.data = detail::glue_pieces(pa, pb, a, bb, res.provenance);
      res.b_reversed = o == Orientation::reverse;
      done = true;
      break;
    }
    if (!done) throw Error("glue: isotropy marks differ at " + *first_problem);
  }
  res.report = validate(res.data, cat);
  if (!res.report.valid()) {
    const auto f = res.report.failures().front();
    throw Error("glue: result fails " + f.code + " at " + f.location + ": " + f.message);
  }
  return res;
}

inline GlueResult connected_sum_fixed_points(const PolarData& a, const std::string& corner_a, const PolarData& b,
                                             const std::string& corner_b, const Catalog& cat = Catalog(),
                                             Orientation orientation = Orientation::automatic, double radius = 0.25) {
  const auto ia = a.chamber.corner_index(corner_a);
  const auto ib = b.chamber.corner_index(corner_b);
  if (!ia) throw Error("unknown corner '" + corner_a + "' in first input");
  if (!ib) throw Error("unknown corner '" + corner_b + "' in second input");
  const int oa = a.chamber.corners[*ia].order, ob = b.chamber.corners[*ib].order;
  if (oa != ob)
    throw Error("slice representations inequivalent: angle orders " + std::to_string(oa) + " and " + std::to_string(ob));
  const auto& ma = a.graph.corners.at(corner_a);
  const auto& mb = b.graph.corners.at(corner_b);
  if (!(ma == mb)) throw Error("slice representations inequivalent: fixed point groups " + describe(ma) + " and " + describe(mb));
  return glue(a, CornerTruncation{corner_a, radius}, b, CornerTruncation{corner_b, radius}, cat, orientation);
}

// ---------------------------------------------------------------------------
// Principal torus bundle lifts.

using HomAssignment = std::map<std::string, TorusHom>;  // vertex -> r x n ambient hom

struct LiftResult {
  PolarData data;
  std::vector<std::string> freeness;
};

inline std::vector<std::pair<std::string, const GroupRef*>> vertices(const PolarData& d) {
  std::vector<std::pair<std::string, const GroupRef*>> out{{kPrincipal, &d.graph.principal}};
  for (const auto& s : d.chamber.sides) out.emplace_back(s.id, &d.graph.faces.at(s.id));
  for (const auto& c : d.chamber.corners) out.emplace_back(c.id, &d.graph.corners.at(c.id));
  return out;
}

inline LiftResult bundle_lift(const PolarData& d, std::size_t r, const HomAssignment& homs) {
  if (!is_torus(d.graph.principal)) throw Error("bundle_lift: only torus data can be lifted");
  const std::size_t n = std::get<TorusSubgroup>(d.graph.principal).ambient_rank();
  if (r == 0) throw Error("bundle_lift: the structure torus must have positive rank");
  auto group = [&](const std::string& v) -> const TorusSubgroup& {
    if (v == kPrincipal) return std::get<TorusSubgroup>(d.graph.principal);
    if (d.graph.faces.count(v)) return std::get<TorusSubgroup>(d.graph.faces.at(v));
    return std::get<TorusSubgroup>(d.graph.corners.at(v));
  };
  auto hom = [&](const std::string& v) -> const TorusHom& {
    auto it = homs.find(v);
    if (it == homs.end()) throw Error("bundle_lift: no homomorphism given for vertex '" + v + "'");
    if (it->second.source_rank != n || it->second.target_rank != r)
      throw Error("bundle_lift: homomorphism at '" + v + "' must be " + std::to_string(r) + "x" + std::to_string(n));
    return it->second;
  };
  for (const auto& a : arrows(d.chamber)) {
    const TorusSubgroup& u = group(a.from);
    if (!(restrict_hom(hom(a.to), u) == restrict_hom(hom(a.from), u)))
      throw Error("bundle_lift: restriction incompatible along arrow " + a.from + " -> " + a.to);
  }
  LiftResult res;
  res.data = d;
  auto lift = [&](const std::string& v) {
    const TorusSubgroup& k = group(v);
    const TorusHom& phi = hom(v);
    IntMatrix gens;
    for (const auto& g : k.generators()) {
      IntVector row = polaris::apply(phi.matrix, g);
      row.insert(row.end(), g.begin(), g.end());
      gens.push_back(row);
    }
    TorusSubgroup out(r + n, gens);
    res.freeness.push_back(v + ": graph of rank " + std::to_string(out.dim()) + " over rank " + std::to_string(k.dim()) +
                           (out.dim() == k.dim() ? ", projection injective, L acts freely" : ", projection NOT injective"));
    return out;
  };
  res.data.graph.principal = lift(kPrincipal);
  for (auto& [id, g] : res.data.graph.faces) g = lift(id);
  for (auto& [id, g] : res.data.graph.corners) g = lift(id);
  return res;
}

// Drops the first r coordinates of every torus mark.
inline PolarData forget_structure_torus(const PolarData& d, std::size_t r) {
  PolarData out = d;
  auto drop = [&](GroupRef& g) {
    const auto& t = std::get<TorusSubgroup>(g);
    if (t.ambient_rank() <= r) throw Error("forget: ambient rank too small");
    IntMatrix gens;
    for (const auto& v : t.generators()) gens.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
    g = TorusSubgroup(t.ambient_rank() - r, gens);
  };
  drop(out.graph.principal);
  for (auto& [_, g] : out.graph.faces) drop(g);
  for (auto& [_, g] : out.graph.corners) drop(g);
  return out;
}

// ---------------------------------------------------------------------------
// Chamber symmetries, quotients and covers.

// Dihedral symmetry of the k-gon: side i -> i + shift, or shift - i when
// reflecting.  witness maps each group name to its conjugate.
struct GammaGenerator {
  int shift = 0;
  bool reflect = false;
  std::map<std::string, std::string> witness;
};

struct GammaSpec {
  std::string name;
  std::vector<GammaGenerator> generators;
  std::optional<bool> normal_in_pi;
  bool operator==(const GammaSpec& o) const {
    if (name != o.name || normal_in_pi != o.normal_in_pi || generators.size() != o.generators.size()) return false;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto &a = generators[i], &b = o.generators[i];
      if (a.shift != b.shift || a.reflect != b.reflect || a.witness != b.witness) return false;
    }
    return true;
  }
};

struct Dihedral {
  int shift = 0;
  bool reflect = false;
  bool operator==(const Dihedral&) const = default;
  bool operator<(const Dihedral& o) const { return std::tie(reflect, shift) < std::tie(o.reflect, o.shift); }
};

inline std::size_t act_side(const Dihedral& g, std::size_t i, std::size_t k) {
  const long long K = static_cast<long long>(k), s = g.shift, x = static_cast<long long>(i);
  return static_cast<std::size_t>((((g.reflect ? s - x : s + x) % K) + K) % K);
}

inline std::size_t act_corner(const Dihedral& g, std::size_t i, std::size_t k) {
  const long long K = static_cast<long long>(k), s = g.shift, x = static_cast<long long>(i);
  return static_cast<std::size_t>((((g.reflect ? s - x + 1 : s + x) % K) + K) % K);
}

// (g h)(i) = g(h(i))
inline Dihedral compose(const Dihedral& g, const Dihedral& h, std::size_t k) {
  const int K = static_cast<int>(k);
  Dihedral out;
  out.reflect = g.reflect != h.reflect;
  out.shift = g.reflect ? g.shift - h.shift : g.shift + h.shift;
  out.shift = ((out.shift % K) + K) % K;
  return out;
}

struct QuotientDescriptor {
  PolarData base;
  GammaSpec gamma;
  std::vector<Dihedral> elements;
  std::vector<std::vector<std::string>> side_orbits, corner_orbits;
  int cone_order = 1;
  std::vector<std::string> reflection_axes;
  bool normal = true;
  std::string polar_group;
  std::vector<std::string> report;
};

struct ExceptionalDescriptor {
  std::string homogeneous;  // G/H
  std::string section;
  std::string polar_group;
};

struct CoverResult {
  std::optional<PolarData> data;
  std::optional<GammaSpec> gamma;
  std::optional<ExceptionalDescriptor> exceptional;
};

namespace detail {

inline std::string mark_key(const GroupRef& g) { return describe(g); }

inline void check_generator(const PolarData& d, const GammaGenerator& gen, std::size_t gi, std::vector<std::string>& report) {
  const auto& c = d.chamber;
  const std::size_t k = c.k();
  const Dihedral g{gen.shift, gen.reflect};
  const std::string who = "generator " + std::to_string(gi);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& ci = c.corners[i];
    const auto& cj = c.corners[act_corner(g, i, k)];
    if (ci.order != cj.order)
      throw Error("Gamma is not strata-preserving: " + who + " maps corner " + ci.id + " (order " + std::to_string(ci.order) +
                  ") to " + cj.id + " (order " + std::to_string(cj.order) + ")");
    const auto& si = c.sides[i];
    const auto& sj = c.sides[act_side(g, i, k)];
    if (si.length.has_value() != sj.length.has_value() || (si.length && std::abs(*si.length - *sj.length) > 1e-12))
      throw Error("Gamma is not strata-preserving: " + who + " maps side " + si.id + " to " + sj.id + " of different length");
  }
  auto check_mark = [&](const std::string& from_id, const GroupRef& from, const std::string& to_id, const GroupRef& to) {
    const std::string key = mark_key(from);
    auto it = gen.witness.find(key);
    if (it == gen.witness.end()) throw Error("missing conjugation witness for " + key + " in " + who);
    if (it->second != mark_key(to))
      throw Error("Gamma is not strata-preserving: " + who + " conjugates " + key + " to " + it->second + " but " + from_id +
                  " goes to " + to_id + " marked " + mark_key(to));
  };
  check_mark(kPrincipal, d.graph.principal, kPrincipal, d.graph.principal);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& si = c.sides[i].id;
    const auto& sj = c.sides[act_side(g, i, k)].id;
    check_mark(si, d.graph.faces.at(si), sj, d.graph.faces.at(sj));
    const auto& ci = c.corners[i].id;
    const auto& cj = c.corners[act_corner(g, i, k)].id;
    check_mark(ci, d.graph.corners.at(ci), cj, d.graph.corners.at(cj));
  }
  report.push_back(who + ": strata and marks preserved");
}

}  // namespace detail

inline QuotientDescriptor quotient_descriptor(const PolarData& d, const GammaSpec& gamma) {
  QuotientDescriptor q;
  q.base = d;
  q.gamma = gamma;
  const auto& c = d.chamber;
  const std::size_t k = c.k();
  if (!gamma.generators.empty() && (c.dimension != 2 || k == 0))
    throw Error("chamber symmetries are only defined on polygons");
  for (std::size_t i = 0; i < gamma.generators.size(); ++i) detail::check_generator(d, gamma.generators[i], i, q.report);

  std::vector<Dihedral> elems{{0, false}};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& gen : gamma.generators) {
      const Dihedral h = compose(Dihedral{gen.shift, gen.reflect}, elems[head], k == 0 ? 1 : k);
      if (std::find(elems.begin(), elems.end(), h) == elems.end()) elems.push_back(h);
    }
  std::sort(elems.begin(), elems.end());
  q.elements = elems;

  if (elems.size() > 1) {
    std::optional<bool> normal = gamma.normal_in_pi;
    if (!normal && d.pi) {
      auto it = d.pi->normal_subgroups.find(gamma.name);
      if (it != d.pi->normal_subgroups.end()) normal = it->second;
    }
    if (!normal) throw Error("normality of " + gamma.name + " in Pi is not declared");
    q.normal = *normal;
    if (!q.normal) throw Error(gamma.name + " is not normal in Pi: the quotient is not allowed");
    q.report.push_back(gamma.name + " declared normal in Pi");
  }

  std::set<std::size_t> seen_s, seen_c;
  for (std::size_t i = 0; i < k; ++i) {
    if (!seen_s.count(i)) {
      std::set<std::size_t> orbit;
      for (const auto& g : elems) orbit.insert(act_side(g, i, k));
      std::vector<std::string> ids;
      for (auto j : orbit) ids.push_back(c.sides[j].id), seen_s.insert(j);
      q.side_orbits.push_back(ids);
    }
    if (!seen_c.count(i)) {
      std::set<std::size_t> orbit;
      for (const auto& g : elems) orbit.insert(act_corner(g, i, k));
      std::vector<std::string> ids;
      for (auto j : orbit) ids.push_back(c.corners[j].id), seen_c.insert(j);
      q.corner_orbits.push_back(ids);
    }
  }
  q.cone_order = static_cast<int>(std::count_if(elems.begin(), elems.end(), [](const Dihedral& g) { return !g.reflect; }));
  for (const auto& g : elems) {
    if (!g.reflect) continue;
    std::string axis = "reflection " + std::to_string(g.shift) + " fixing";
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (act_side(g, i, k) == i) axis += " side " + c.sides[i].id, any = true;
      if (act_corner(g, i, k) == i) axis += " corner " + c.corners[i].id, any = true;
    }
    if (!any) axis += " no stratum";
    q.reflection_axes.push_back(axis);
  }
  const std::string pi_name = d.pi && !d.pi->name.empty() ? d.pi->name : "Pi";
  q.polar_group = elems.size() > 1 ? pi_name + "\xC2\xB7" + gamma.name : pi_name;
  return q;
}

inline CoverResult cover_expand(const QuotientDescriptor& q) {
  if (q.elements.empty()) throw Error("malformed descriptor: no group elements");
  CoverResult out;
  const auto& c = q.base.chamber;
  if (c.dimension == 2 && c.k() == 0) {
    ExceptionalDescriptor e;
    e.homogeneous = "G/" + describe(q.base.graph.principal);
    e.section = "closed chamber without singular faces, curvature " + std::to_string(c.curvature.value_or(0));
    e.polar_group = q.polar_group;
    out.exceptional = e;
    return out;
  }
  // re-check the recorded action against the base data
  std::vector<std::string> scratch;
  for (std::size_t i = 0; i < q.gamma.generators.size(); ++i) detail::check_generator(q.base, q.gamma.generators[i], i, scratch);
  out.data = q.base;
  if (q.elements.size() > 1) out.gamma = q.gamma;
  return out;
}

}  // namespace polaris
