// The data D = (C, G(C)): a constant-curvature chamber whose strata carry
// isotropy labels, together with the compatibility validator.
#pragma once

#include <boost/rational.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polaris/groups.hpp"

namespace polaris {

using Rational = boost::rational<long long>;

inline const std::string kPrincipal = "principal";

struct Side {
  std::string id;
  std::optional<double> length;
  bool operator==(const Side&) const = default;
};

struct Corner {
  std::string id;
  int order = 2;  // interior angle pi/order
  bool operator==(const Corner&) const = default;
};

// dimension 2: sides[i] runs from corners[i] to corners[i+1], so corner i
// sits between side i-1 and side i (cyclically, counterclockwise).
// dimension 1: sides holds the two endpoints, corners is empty.
struct Chamber {
  int dimension = 2;
  std::optional<int> curvature;  // nullopt = derive from angles
  std::vector<Side> sides;
  std::vector<Corner> corners;
  std::optional<double> length;  // 1D only

  std::size_t k() const { return sides.size(); }
  std::size_t prev(std::size_t i) const { return (i + k() - 1) % k(); }
  std::size_t next(std::size_t i) const { return (i + 1) % k(); }

  std::optional<std::size_t> side_index(const std::string& id) const {
    for (std::size_t i = 0; i < sides.size(); ++i)
      if (sides[i].id == id) return i;
    return std::nullopt;
  }
  std::optional<std::size_t> corner_index(const std::string& id) const {
    for (std::size_t i = 0; i < corners.size(); ++i)
      if (corners[i].id == id) return i;
    return std::nullopt;
  }
  bool operator==(const Chamber&) const = default;
};

struct GroupGraph {
  GroupRef principal;
  std::map<std::string, GroupRef> faces;
  std::map<std::string, GroupRef> corners;
  bool operator==(const GroupGraph&) const = default;
};

struct PiSpec {
  std::optional<long long> order;  // nullopt = infinite
  std::string name;
  std::optional<bool> orientable;
  std::map<std::string, bool> normal_subgroups;
  bool operator==(const PiSpec&) const = default;
};

struct PolarData {
  Chamber chamber;
  GroupGraph graph;
  std::optional<PiSpec> pi;
  bool operator==(const PolarData&) const = default;
};

struct Arrow {
  std::string from, to;
  bool operator==(const Arrow&) const = default;
};

// Cardinality-l strata point to the cardinality-(l+1) strata containing them.
inline std::vector<Arrow> arrows(const Chamber& c) {
  std::vector<Arrow> out;
  for (const auto& s : c.sides) out.push_back({kPrincipal, s.id});
  if (c.dimension == 2) {
    for (std::size_t i = 0; i < c.corners.size() && c.k() > 0; ++i) {
      out.push_back({c.sides[c.prev(i)].id, c.corners[i].id});
      if (c.k() > 1 && c.prev(i) != i) out.push_back({c.sides[i].id, c.corners[i].id});
    }
  }
  return out;
}

inline int depth(const PolarData& d, const std::string& vertex) {
  if (vertex == kPrincipal) return 0;
  if (d.chamber.side_index(vertex)) return 1;
  if (d.chamber.corner_index(vertex)) return 2;
  throw Error("unknown vertex '" + vertex + "'");
}

// All vertices with an arrow path ending at `vertex`, itself included,
// listed by depth then chamber order.
inline std::vector<std::string> history(const PolarData& d, const std::string& vertex) {
  depth(d, vertex);
  std::set<std::string> seen{vertex};
  std::vector<std::string> frontier{vertex};
  const auto arr = arrows(d.chamber);
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& v : frontier)
      for (const auto& a : arr)
        if (a.to == v && seen.insert(a.from).second) next.push_back(a.from);
    frontier = std::move(next);
  }
  std::vector<std::string> out;
  if (seen.count(kPrincipal)) out.push_back(kPrincipal);
  for (const auto& s : d.chamber.sides)
    if (seen.count(s.id)) out.push_back(s.id);
  for (const auto& c : d.chamber.corners)
    if (seen.count(c.id)) out.push_back(c.id);
  return out;
}

struct ChamberGeometry {
  int kappa = 0;
  Rational excess;                      // (sum 1/m_i - (k-2)), in units of pi
  std::optional<Rational> area_over_pi;  // nullopt when flat or undetermined
  bool closed_surface = false;          // 2D chamber without sides
};

inline ChamberGeometry chamber_geometry(const Chamber& c) {
  ChamberGeometry g;
  if (c.dimension == 1 || c.k() == 0) {
    if (c.dimension == 2) g.closed_surface = true;
    if (c.dimension == 2 && !c.curvature) throw Error("closed chamber needs a declared curvature");
    g.kappa = c.curvature.value_or(0);
    return g;
  }
  Rational ex(-(static_cast<long long>(c.k()) - 2));
  for (const auto& corner : c.corners) ex += Rational(1, corner.order);
  g.excess = ex;
  g.kappa = ex > 0 ? 1 : (ex < 0 ? -1 : 0);
  if (g.kappa != 0) g.area_over_pi = g.kappa > 0 ? ex : -ex;
  if (c.curvature && *c.curvature != g.kappa)
    throw Error("declared curvature " + std::to_string(*c.curvature) + " contradicts angle sum (Gauss-Bonnet sign " +
                std::to_string(g.kappa) + ")");
  return g;
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct Check {
  std::string code;      // S (structure) or V1..V6
  std::string location;  // stratum id or "chamber"
  bool passed = true;
  std::string message;
};

struct ValidationReport {
  std::vector<Check> checks;
  bool valid() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c);
    return out;
  }
  bool failed(const std::string& code) const {
    for (const auto& c : checks)
      if (!c.passed && c.code == code) return true;
    return false;
  }
};

namespace detail {

inline void structure_checks(const PolarData& d, const Catalog& cat, ValidationReport& rep) {
  const auto& c = d.chamber;
  auto fail = [&](const std::string& loc, const std::string& msg) { rep.checks.push_back({"S", loc, false, msg}); };
  if (c.dimension != 1 && c.dimension != 2) fail("chamber", "dimension must be 1 or 2");
  if (c.curvature && (*c.curvature < -1 || *c.curvature > 1)) fail("chamber", "curvature must be -1, 0, 1 or auto");
  std::set<std::string> ids{kPrincipal};
  for (const auto& s : c.sides) {
    if (!ids.insert(s.id).second) fail(s.id, "duplicate stratum id");
    if (s.length && !(*s.length > 0)) fail(s.id, "side length must be positive");
  }
  for (const auto& k : c.corners) {
    if (!ids.insert(k.id).second) fail(k.id, "duplicate stratum id");
    if (!allowed_weyl_order(k.order)) fail(k.id, "angle order " + std::to_string(k.order) + " not in {2,3,4,6}");
  }
  if (c.dimension == 1) {
    if (c.sides.size() != 2) fail("chamber", "an interval has exactly two endpoints");
    if (!c.corners.empty()) fail("chamber", "an interval has no corners");
    if (c.length && !(*c.length > 0)) fail("chamber", "interval length must be positive");
  }
  if (c.dimension == 2) {
    if (c.corners.size() != c.sides.size()) fail("chamber", "number of corners differs from number of sides");
    if (c.k() == 1) fail("chamber", "a geodesic polygon needs at least two sides");
  }
  for (const auto& s : c.sides)
    if (!d.graph.faces.count(s.id)) fail(s.id, "side carries no mark");
  for (const auto& k : c.corners)
    if (!d.graph.corners.count(k.id)) fail(k.id, "corner carries no mark");
  for (const auto& [id, _] : d.graph.faces)
    if (!c.side_index(id)) fail(id, "mark for unknown side");
  for (const auto& [id, _] : d.graph.corners)
    if (!c.corner_index(id)) fail(id, "mark for unknown corner");

  std::vector<const GroupRef*> all{&d.graph.principal};
  for (const auto& [_, g] : d.graph.faces) all.push_back(&g);
  for (const auto& [_, g] : d.graph.corners) all.push_back(&g);
  const bool torus = is_torus(d.graph.principal);
  for (const GroupRef* g : all) {
    if (is_torus(*g) != torus) {
      fail("graph", "torus and named marks are mixed");
      break;
    }
    if (torus && std::get<TorusSubgroup>(*g).ambient_rank() != std::get<TorusSubgroup>(d.graph.principal).ambient_rank()) {
      fail("graph", "torus marks live in different ambient tori");
      break;
    }
    if (!torus) cat.at(std::get<NamedGroup>(*g).name);  // unresolved names are hard errors
  }
}

inline bool torus_circle_over(const TorusSubgroup& k, const TorusSubgroup& h) {
  return k.span_index() == 1 && k.generators_primitive() && k.dim() == h.dim() + 1;
}

}  // namespace detail

inline ValidationReport validate(const PolarData& d, const Catalog& cat) {
  ValidationReport rep;
  detail::structure_checks(d, cat, rep);
  if (!rep.valid()) return rep;
  const auto& c = d.chamber;
  const auto& g = d.graph;
  const bool torus = is_torus(g.principal);
  auto add = [&](const std::string& code, const std::string& loc, bool ok, const std::string& msg) {
    rep.checks.push_back({code, loc, ok, msg});
  };

  for (const auto& s : c.sides) {
    const GroupRef& k = g.faces.at(s.id);
    if (torus) {
      const auto& kt = std::get<TorusSubgroup>(k);
      const auto& ht = std::get<TorusSubgroup>(g.principal);
      add("V1", s.id, kt.contains(ht), "H " + ht.describe() + (kt.contains(ht) ? " is" : " is not") + " contained in " + kt.describe());
      const bool sphere = detail::torus_circle_over(kt, ht);
      std::string why = "K/H is a circle";
      if (!sphere) {
        if (!kt.generators_primitive()) why = "non-primitive slope in " + kt.describe();
        else if (kt.span_index() != 1) why = kt.describe() + " has span index " + std::to_string(kt.span_index());
        else why = "dim K - dim H = " + std::to_string(int(kt.dim()) - int(ht.dim())) + ", expected 1";
      }
      add("V2", s.id, sphere, why);
    } else {
      const auto& kn = std::get<NamedGroup>(k).name;
      const auto& hn = std::get<NamedGroup>(g.principal).name;
      const auto* decl = cat.subgroup(kn, hn);
      add("V1", s.id, decl != nullptr, decl ? hn + " < " + kn + " declared" : "catalog declares no subgroup " + hn + " of " + kn);
      const bool sphere = decl && decl->quotient_is_sphere && decl->sphere_dim >= 1;
      add("V2", s.id, sphere,
          sphere ? kn + "/" + hn + " = S^" + std::to_string(decl->sphere_dim) : kn + "/" + hn + " is not a declared sphere of dimension >= 1");
    }
  }

  if (c.dimension == 2 && c.k() >= 2) {
    for (std::size_t i = 0; i < c.k(); ++i) {
      const auto& corner = c.corners[i];
      const auto& a = c.sides[c.prev(i)].id;
      const auto& b = c.sides[i].id;
      const GroupRef& kij = g.corners.at(corner.id);
      if (torus) {
        const auto& kt = std::get<TorusSubgroup>(kij);
        const auto& ka = std::get<TorusSubgroup>(g.faces.at(a));
        const auto& kb = std::get<TorusSubgroup>(g.faces.at(b));
        const auto& ht = std::get<TorusSubgroup>(g.principal);
        const bool inside = kt.contains(ka) && kt.contains(kb);
        const bool ok3 = corner.order == 2 && inside && kt.dim() == ht.dim() + 2;
        std::string msg = "torus corner with right angle";
        if (corner.order != 2) msg = "torus corners have angle pi/2, found pi/" + std::to_string(corner.order);
        else if (!inside) msg = "face groups are not contained in " + kt.describe();
        else if (!ok3) msg = "corner group must have dimension dim H + 2";
        add("V3", corner.id, ok3, msg);
        IntMatrix gens = ka.generators();
        gens.insert(gens.end(), kb.generators().begin(), kb.generators().end());
        const auto span = lattice_span(gens, kt.ambient_rank());
        const bool ok4 = span.index == 1 && span.saturation == kt.canonical() && kt.span_index() == 1;
        add("V4", corner.id, ok4,
            ok4 ? "generated by " + a + " and " + b
                : "span of " + a + " and " + b + " has rank " + std::to_string(span.rank) + " and index " +
                      std::to_string(span.index) + ", corner group " + kt.describe());
      } else {
        const auto& kn = std::get<NamedGroup>(kij).name;
        const auto& an = std::get<NamedGroup>(g.faces.at(a)).name;
        const auto& bn = std::get<NamedGroup>(g.faces.at(b)).name;
        const auto* decl = cat.coh1(kn, an, bn);
        const bool ok3 = decl && decl->weyl_order == corner.order;
        std::string msg;
        if (!decl) msg = "catalog declares no cohomogeneity one pair (" + an + "," + bn + ") in " + kn;
        else if (!ok3) msg = "Weyl order " + std::to_string(decl->weyl_order) + " differs from angle order " + std::to_string(corner.order);
        else msg = "(" + an + "," + bn + ") in " + kn + " with Weyl order " + std::to_string(corner.order);
        add("V3", corner.id, ok3, msg);
        const bool ok4 = cat.generated_by(kn, {an, bn});
        add("V4", corner.id, ok4, ok4 ? kn + " generated by " + an + " and " + bn : "catalog does not declare " + kn + " generated by " + an + " and " + bn);
      }
    }
  }

  std::optional<ChamberGeometry> geom;
  try {
    geom = chamber_geometry(c);
    add("V5", "chamber", true, "curvature sign " + std::to_string(geom->kappa));
  } catch (const Error& e) {
    add("V5", "chamber", false, e.what());
  }

  if (d.pi && d.pi->order) {
    const long long n = *d.pi->order;
    if (n <= 0) {
      add("V6", "pi", false, "polar group order must be positive");
    } else if (geom && geom->area_over_pi) {
      const Rational chi = Rational(n) * Rational(geom->kappa) * *geom->area_over_pi / Rational(2);
      bool ok = chi.denominator() == 1;
      std::string msg = "chi(section) = " + to_string(chi);
      if (!ok) msg += " is not an integer";
      if (ok && geom->kappa == 1 && chi != Rational(1) && chi != Rational(2)) {
        ok = false;
        msg += ", a spherical section needs chi in {1,2}";
      }
      add("V6", "pi", ok, msg);
    } else {
      add("V6", "pi", true, "no area constraint");
    }
  }
  return rep;
}

}  // namespace polaris
