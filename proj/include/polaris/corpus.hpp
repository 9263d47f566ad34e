// Built-in catalog and example data.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polaris/constructions.hpp"
#include "polaris/model.hpp"
#include "polaris/polar_data.hpp"
#include "polaris/torus_actions.hpp"

namespace polaris {

inline Catalog default_catalog() {
  auto sphere = [](std::string n, int d) { return SubgroupDecl{std::move(n), true, d}; };
  auto plain = [](std::string n) { return SubgroupDecl{std::move(n), false, -1}; };
  std::vector<CatalogEntry> e;
  e.push_back({"Sp(3)", 21, {plain("Sp(2)Sp(1)"), plain("Sp(1)Sp(2)")}, {{"Sp(2)Sp(1)", "Sp(1)Sp(2)", 3}},
               {{{"Sp(2)Sp(1)", "Sp(1)Sp(2)"}, "Sp(3)"}}});
  e.push_back({"S(U(2)U(4))", 19, {plain("Sp(1)Sp(2)"), plain("Sp(1)^3S^1")}, {{"Sp(1)Sp(2)", "Sp(1)^3S^1", 4}},
               {{{"Sp(1)Sp(2)", "Sp(1)^3S^1"}, "S(U(2)U(4))"}}});
  e.push_back({"Sp(2)U(2)", 14, {plain("Sp(1)^3S^1"), plain("Sp(2)Sp(1)")}, {{"Sp(1)^3S^1", "Sp(2)Sp(1)", 2}},
               {{{"Sp(1)^3S^1", "Sp(2)Sp(1)"}, "Sp(2)U(2)"}}});
  e.push_back({"Sp(2)Sp(1)", 13, {sphere("Sp(1)^3", 4)}, {}, {}});
  e.push_back({"Sp(1)Sp(2)", 13, {sphere("Sp(1)^3", 4)}, {}, {}});
  e.push_back({"Sp(1)^3S^1", 10, {sphere("Sp(1)^3", 1)}, {}, {}});
  e.push_back({"Sp(1)^3", 9, {}, {}, {}});
  e.push_back({"SO(4)", 6, {plain("O(2)"), plain("O'(2)"), plain("O''(2)")},
               {{"O(2)", "O''(2)", 6}, {"O'(2)", "O(2)", 6}},
               {{{"O(2)", "O''(2)"}, "SO(4)"}, {{"O'(2)", "O(2)"}, "SO(4)"}}});
  e.push_back({"SO(3)", 3, {sphere("SO(2)", 2), plain("O(2)"), plain("O'(2)"), plain("O''(2)")},
               {{"O''(2)", "O'(2)", 3}, {"O'(2)", "O(2)", 3}, {"O(2)", "O''(2)", 3}},
               {{{"O''(2)", "O'(2)"}, "SO(3)"}, {{"O'(2)", "O(2)"}, "SO(3)"}, {{"O(2)", "O''(2)"}, "SO(3)"}}});
  e.push_back({"SO(2)", 1, {}, {}, {}});
  for (const char* n : {"O(2)", "O'(2)", "O''(2)"}) e.push_back({n, 1, {sphere("Z2^2", 1)}, {}, {}});
  e.push_back({"Z2^2", 0, {}, {}, {}});
  return Catalog(std::move(e));
}

namespace detail {

inline PolarData named_triangle(const std::string& h, const std::vector<std::string>& faces,
                                const std::vector<std::pair<std::string, int>>& corners) {
  PolarData d;
  d.chamber.dimension = 2;
  d.graph.principal = NamedGroup{h};
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string sid = "s" + std::to_string(i), cid = "c" + std::to_string(i);
    d.chamber.sides.push_back({sid, std::nullopt});
    d.chamber.corners.push_back({cid, corners[i].second});
    d.graph.faces.emplace(sid, NamedGroup{faces[i]});
    d.graph.corners.emplace(cid, NamedGroup{corners[i].first});
  }
  return d;
}

}  // namespace detail

// spherical triangle with angles pi/4, pi/2, pi/3
inline PolarData figure1() {
  auto d = detail::named_triangle("Sp(1)^3", {"Sp(1)^3S^1", "Sp(2)Sp(1)", "Sp(1)Sp(2)"},
                                  {{"S(U(2)U(4))", 4}, {"Sp(2)U(2)", 2}, {"Sp(3)", 3}});
  d.chamber.curvature = 1;
  d.pi = PiSpec{24, "Pi24", false, {}};
  return d;
}

inline PolarData figure2() {
  auto d = detail::named_triangle("Z2^2", {"O''(2)", "O'(2)", "O(2)"}, {{"SO(3)", 3}, {"SO(3)", 3}, {"SO(3)", 3}});
  d.chamber.curvature = 0;
  d.pi = PiSpec{6, "D3", true, {{"Z3", true}, {"Z2", false}}};
  return d;
}

inline PolarData figure3() {
  auto d = detail::named_triangle("Z2^2", {"O''(2)", "O'(2)", "O(2)"}, {{"SO(4)", 6}, {"SO(3)", 3}, {"SO(4)", 6}});
  d.chamber.curvature = -1;
  d.pi = PiSpec{12, "Pi12", true, {}};
  return d;
}

inline IntMatrix figure4_vectors(long long k) { return {{0, 1}, {1, 0}, {k, 1}, {1, 0}}; }

inline PolarData figure4(long long k = 1) {
  auto d = polar_data_from_sequence(make_sequence(figure4_vectors(k)));
  d.chamber.curvature = 0;
  for (auto& s : d.chamber.sides) s.length = 1.0;
  d.pi = PiSpec{4, "Z2^2", true, {}};
  return d;
}

inline PolarData hexagon() {
  const auto sq = figure4(1);
  auto d = connected_sum_fixed_points(sq, "c0", sq, "c0").data;
  d.chamber.curvature = -1;
  d.pi = PiSpec{4, "Z2^2", true, {}};
  return d;
}

inline IntMatrix cp2_fan() { return {{1, 0}, {0, 1}, {-1, -1}}; }

inline PolarData cp2() {
  auto d = polar_data_from_sequence(make_sequence(cp2_fan()));
  d.chamber.curvature = 1;
  d.pi = PiSpec{4, "Z2^2", false, {}};
  return d;
}

inline PolarData interval(const GroupRef& h, const GroupRef& minus, const GroupRef& plus, double length) {
  PolarData d;
  d.chamber.dimension = 1;
  d.chamber.curvature = 1;
  d.chamber.sides = {{"minus", std::nullopt}, {"plus", std::nullopt}};
  d.chamber.length = length;
  d.graph.principal = h;
  d.graph.faces.emplace("minus", minus);
  d.graph.faces.emplace("plus", plus);
  return d;
}

// SO(3) on S^3
inline PolarData interval_sphere() { return interval(NamedGroup{"SO(2)"}, NamedGroup{"SO(3)"}, NamedGroup{"SO(3)"}, kPi); }

// circle on CP^1
inline PolarData cp1_interval() {
  return interval(TorusSubgroup::trivial(1), TorusSubgroup::circle({1}), TorusSubgroup::circle({1}), kPi / 2);
}

// Hopf fibration S^3 -> CP^1: the endpoint circles lift to (0,1) and (1,1).
inline HomAssignment hopf_homs() {
  return {{kPrincipal, TorusHom{1, 1, {{0}}}}, {"minus", TorusHom{1, 1, {{0}}}}, {"plus", TorusHom{1, 1, {{1}}}}};
}

inline GammaSpec figure2_rotation() {
  GammaGenerator g{1, false, {{"Z2^2", "Z2^2"}, {"O''(2)", "O'(2)"}, {"O'(2)", "O(2)"}, {"O(2)", "O''(2)"}, {"SO(3)", "SO(3)"}}};
  return {"Z3", {g}, std::nullopt};
}

inline GammaSpec figure2_reflection() {
  GammaGenerator g{0, true, {{"Z2^2", "Z2^2"}, {"O''(2)", "O''(2)"}, {"O'(2)", "O(2)"}, {"O(2)", "O'(2)"}, {"SO(3)", "SO(3)"}}};
  return {"Z2", {g}, std::nullopt};
}

inline std::vector<std::pair<std::string, PolarData>> corpus() {
  return {{"figure1.json", figure1()}, {"figure2.json", figure2()},   {"figure3.json", figure3()},
          {"figure4.json", figure4()}, {"hexagon.json", hexagon()},   {"cp2.json", cp2()},
          {"interval_sphere.json", interval_sphere()}, {"cp1_interval.json", cp1_interval()}};
}

}  // namespace polaris
