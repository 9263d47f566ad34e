// Coxeter matrix of a chamber, development of the reflection tiling, and
// Gauss-Bonnet bookkeeping for the compact section.
#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "polaris/realize.hpp"

namespace polaris {

// m[i][j] == 0 encodes infinity.
struct CoxeterMatrix {
  std::size_t k = 0;
  std::vector<std::vector<int>> m;

  bool symmetric() const {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (m[i][j] != m[j][i]) return false;
    return true;
  }
};

inline CoxeterMatrix coxeter_matrix(const Chamber& c) {
  CoxeterMatrix M;
  M.k = c.k();
  M.m.assign(M.k, std::vector<int>(M.k, 0));
  for (std::size_t i = 0; i < M.k; ++i) M.m[i][i] = 1;
  if (c.dimension == 2)
    for (std::size_t i = 0; i < c.corners.size(); ++i) {
      const std::size_t a = c.prev(i), b = i;
      if (a == b) continue;
      M.m[a][b] = M.m[b][a] = c.corners[i].order;
    }
  return M;
}

inline CoxeterMatrix coxeter_matrix(const PolarData& d) { return coxeter_matrix(d.chamber); }

using Word = std::vector<int>;

inline std::string word_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + std::to_string(w[i]);
  return s;
}

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Element {
  Word word;
  Mat3 matrix;
};

enum class DevelopmentStatus { closed_finite, budget_exhausted, infinite_certified };

inline std::string status_name(DevelopmentStatus s) {
  switch (s) {
    case DevelopmentStatus::closed_finite: return "closed-finite";
    case DevelopmentStatus::budget_exhausted: return "budget-exhausted";
    case DevelopmentStatus::infinite_certified: return "infinite-certified";
  }
  return "?";
}

struct Development {
  Realization chamber;
  std::vector<Element> elements;  // shortlex order
  DevelopmentStatus status = DevelopmentStatus::infinite_certified;
  double tolerance = 1e-7;

  std::size_t order() const { return elements.size(); }
};

inline Mat3 word_matrix(const Realization& R, const Word& w) {
  Mat3 g = Mat3::Identity();
  for (int i : w) g = g * R.reflections.at(static_cast<std::size_t>(i));
  return g;
}

namespace detail {

// Matrices closer than eps entrywise are identified. Keys are cells of an
// eps/4 grid; entries sitting near a cell boundary probe the neighbour cell.
class MatrixIndex {
 public:
  explicit MatrixIndex(double eps) : eps_(eps), h_(eps / 4) {}

  std::optional<std::size_t> find(const Mat3& g, const std::vector<Element>& store) const {
    std::array<std::array<long long, 2>, 9> opts{};
    std::array<int, 9> count{};
    for (int e = 0; e < 9; ++e) {
      const double q = g(e / 3, e % 3) / h_;
      const long long base = static_cast<long long>(std::floor(q));
      const double frac = q - static_cast<double>(base);
      opts[e][0] = base;
      count[e] = 1;
      if (frac < 0.25) opts[e][count[e]++] = base - 1;
      else if (frac > 0.75) opts[e][count[e]++] = base + 1;
    }
    std::array<int, 9> pick{};
    while (true) {
      Key key;
      for (int e = 0; e < 9; ++e) key[e] = opts[e][pick[e]];
      auto it = map_.find(key);
      if (it != map_.end())
        for (std::size_t idx : it->second)
          if ((store[idx].matrix - g).cwiseAbs().maxCoeff() < eps_) return idx;
      int e = 0;
      while (e < 9 && ++pick[e] == count[e]) pick[e++] = 0;
      if (e == 9) break;
    }
    return std::nullopt;
  }

  void insert(const Mat3& g, std::size_t idx) {
    Key key;
    for (int e = 0; e < 9; ++e) key[e] = static_cast<long long>(std::floor(g(e / 3, e % 3) / h_));
    map_[key].push_back(idx);
  }

 private:
  using Key = std::array<long long, 9>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ull;
      for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
      return h;
    }
  };
  double eps_, h_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> map_;
};

}  // namespace detail

// Breadth-first closure under right multiplication by the generators; with
// generators tried in index order every element keeps its shortlex-least word.
inline Development develop(const Realization& R, std::size_t budget = 100000, double eps = 1e-7) {
  Development dev;
  dev.chamber = R;
  dev.tolerance = eps;
  dev.elements.push_back({{}, Mat3::Identity()});
  if (R.dimension != 2) throw Error("develop: only two-dimensional chambers are developed");
  if (R.kappa <= 0) {
    dev.status = DevelopmentStatus::infinite_certified;
    return dev;
  }
  detail::MatrixIndex index(eps);
  index.insert(dev.elements[0].matrix, 0);
  for (std::size_t head = 0; head < dev.elements.size(); ++head) {
    for (std::size_t i = 0; i < R.reflections.size(); ++i) {
      Mat3 g = dev.elements[head].matrix * R.reflections[i];
      if (index.find(g, dev.elements)) continue;
      if (dev.elements.size() >= budget) {
        dev.status = DevelopmentStatus::budget_exhausted;
        throw Error("develop: budget of " + std::to_string(budget) +
                    " elements exhausted on a spherical chamber (tolerance too coarse or bad realization)");
      }
      Word w = dev.elements[head].word;
      w.push_back(static_cast<int>(i));
      dev.elements.push_back({w, g});
      index.insert(g, dev.elements.size() - 1);
    }
  }
  dev.status = DevelopmentStatus::closed_finite;
  return dev;
}

inline Development develop(const PolarData& d, std::size_t budget = 100000, double eps = 1e-7) {
  return develop(realize_chamber(d.chamber), budget, eps);
}

// Number of stored elements eps-equal to g (1 for a group closed under g).
inline std::size_t count_matches(const Development& dev, const Mat3& g) {
  std::size_t n = 0;
  for (const auto& e : dev.elements)
    if ((e.matrix - g).cwiseAbs().maxCoeff() < dev.tolerance) ++n;
  return n;
}

// Text table: one line per element, "word m00 m01 ... m22".
inline std::string development_table(const Development& dev) {
  std::ostringstream os;
  os << "# status " << status_name(dev.status) << " order " << dev.order() << " model " << model_name(dev.chamber.model)
     << "\n";
  char buf[64];
  for (const auto& e : dev.elements) {
    os << word_string(e.word);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        std::snprintf(buf, sizeof buf, " %.12f", e.matrix(r, c) == 0 ? 0.0 : e.matrix(r, c));
        os << buf;
      }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Tile tree.  Every tile other than the base has a wall separating it from a
// base point p; its parent is the neighbour across the lowest such wall.  A
// node only stores h = g^{-1} p, so children cost one reflection each.

struct TileNode {
  Mat3 g;   // tile = g C
  Vec3 h;   // g^{-1} p
  int depth = 0;
  Word word;
};

struct TileVisitStats {
  std::size_t nodes = 0;
  bool budget_hit = false;
};

// Visits every tile not excluded by the distance bound `radius` (a tile is
// pruned when a separating wall is farther than radius from p).  The visitor
// returns false to stop early.  Words are tracked only if track_words.
inline TileVisitStats visit_tiles(const Realization& R, const Vec3& p, double radius,
                                  const std::function<bool(const TileNode&)>& visit, bool track_words = true,
                                  std::size_t node_budget = 0) {
  TileVisitStats stats;
  const std::size_t k = R.normals.size();
  std::vector<TileNode> stack;
  stack.push_back({Mat3::Identity(), p, 0, {}});
  while (!stack.empty()) {
    TileNode node = std::move(stack.back());
    stack.pop_back();
    ++stats.nodes;
    if (node_budget && stats.nodes > node_budget) {
      stats.budget_hit = true;
      return stats;
    }
    if (!visit(node)) return stats;
    for (std::size_t i = k; i-- > 0;) {
      if (wall_value(R.model, R.normals[i], node.h) < 0) continue;  // descent wall leads back
      const Vec3 h = R.reflections[i] * node.h;
      bool accept = true;
      double bound = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (wall_value(R.model, R.normals[j], h) >= 0) continue;
        if (j < i) {
          accept = false;
          break;
        }
        bound = std::max(bound, wall_distance(R.model, R.normals[j], h));
      }
      if (!accept || bound > radius) continue;
      TileNode child{node.g * R.reflections[i], h, node.depth + 1, {}};
      if (track_words) {
        child.word = node.word;
        child.word.push_back(static_cast<int>(i));
      }
      stack.push_back(std::move(child));
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------

struct SectionInvariants {
  int kappa = 0;
  std::optional<Rational> area_over_pi;
  long long pi_order = 0;
  Rational chi;
  bool chi_integral = true;
  std::optional<long long> genus;
  std::optional<Rational> total_area_over_pi;
  std::string surface;
  std::vector<std::string> problems;
};

inline std::string surface_name(long long chi, std::optional<bool> orientable) {
  auto orientable_name = [](long long x) -> std::string {
    if (x == 2) return "S^2";
    if (x == 0) return "T^2";
    if (x % 2 != 0) return "";
    return "#" + std::to_string((2 - x) / 2) + " T^2";
  };
  auto nonorientable_name = [](long long x) -> std::string {
    if (x == 1) return "RP^2";
    if (x == 0) return "Klein bottle";
    if (x > 1) return "";
    return "#" + std::to_string(2 - x) + " RP^2";
  };
  if (orientable) {
    const std::string s = *orientable ? orientable_name(chi) : nonorientable_name(chi);
    return s.empty() ? "impossible" : s;
  }
  std::string a = orientable_name(chi), b = nonorientable_name(chi);
  if (a.empty()) return b.empty() ? "impossible" : b;
  if (b.empty()) return a;
  return a + " or " + b;
}

inline SectionInvariants section_invariants(const PolarData& d) {
  if (!d.pi || !d.pi->order) throw Error("section non-compact, invariants undefined");
  const ChamberGeometry geom = chamber_geometry(d.chamber);
  SectionInvariants s;
  s.kappa = geom.kappa;
  s.area_over_pi = geom.area_over_pi;
  s.pi_order = *d.pi->order;
  if (s.pi_order <= 0) throw Error("polar group order must be positive");
  if (geom.kappa == 0) {
    s.chi = 0;
  } else if (geom.area_over_pi) {
    s.chi = Rational(s.pi_order) * Rational(geom.kappa) * *geom.area_over_pi / Rational(2);
    s.total_area_over_pi = Rational(s.pi_order) * *geom.area_over_pi;
  } else {
    throw Error("chamber area undetermined");
  }
  s.chi_integral = s.chi.denominator() == 1;
  if (!s.chi_integral) s.problems.push_back("chi = " + to_string(s.chi) + " is not an integer");
  if (s.chi_integral && geom.kappa == 1 && s.chi != Rational(1) && s.chi != Rational(2))
    s.problems.push_back("spherical section with chi = " + to_string(s.chi) + " not in {1,2}");
  if (s.chi_integral) {
    const long long chi = s.chi.numerator();
    if (d.pi->orientable && *d.pi->orientable) {
      if (chi % 2 == 0 && chi <= 2) s.genus = (2 - chi) / 2;
      else s.problems.push_back("orientable section with chi = " + std::to_string(chi));
    }
    s.surface = surface_name(chi, d.pi->orientable);
    if (s.surface == "impossible") s.problems.push_back("no closed surface with chi = " + std::to_string(chi));
  }
  return s;
}

struct PiConsistency {
  bool consistent = true;
  std::optional<std::size_t> coxeter_order;  // nullopt: infinite
  std::vector<std::string> notes;
};

inline PiConsistency pi_consistency(const PolarData& d, const Development& dev) {
  PiConsistency r;
  if (dev.status == DevelopmentStatus::closed_finite) r.coxeter_order = dev.order();
  if (!d.pi) {
    r.notes.push_back("no polar group declared");
    return r;
  }
  if (!d.pi->order) {
    if (r.coxeter_order) {
      r.consistent = false;
      r.notes.push_back("infinite polar group but the Coxeter group is finite of order " + std::to_string(*r.coxeter_order));
    } else {
      r.notes.push_back("infinite polar group, non-compact section");
    }
    return r;
  }
  const long long n = *d.pi->order;
  if (r.coxeter_order) {
    const auto M = static_cast<long long>(*r.coxeter_order);
    if (n > M) {
      r.consistent = false;
      r.notes.push_back("|Pi| = " + std::to_string(n) + " exceeds the Coxeter group order " + std::to_string(M));
      return r;
    }
    if (M % n != 0) {
      r.consistent = false;
      r.notes.push_back("|Pi| = " + std::to_string(n) + " does not divide the Coxeter group order " + std::to_string(M));
      return r;
    }
    if (n == M) r.notes.push_back("|Pi| equals the Coxeter group order: the section is the universal section");
    else r.notes.push_back("section is the universal section modulo a group of order " + std::to_string(M / n));
  } else {
    r.notes.push_back("Coxeter group infinite; Pi is a proper finite quotient");
  }
  try {
    const auto inv = section_invariants(d);
    if (!inv.chi_integral || !inv.problems.empty()) {
      r.consistent = false;
      for (const auto& p : inv.problems) r.notes.push_back(p);
    } else {
      r.notes.push_back("|Pi| chambers tile a section with chi = " + to_string(inv.chi));
    }
  } catch (const Error& e) {
    r.consistent = false;
    r.notes.push_back(e.what());
  }
  return r;
}

}  // namespace polaris
