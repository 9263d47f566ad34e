// Billiard geodesics in a realized chamber by unfolding, their Morse
// indices, counting series and growth fits.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polaris/coxeter.hpp"
#include "polaris/realize.hpp"

namespace polaris {

struct BilliardConfig {
  Realization chamber;
  Vec3 p = origin(), q = origin();  // model points; in dimension 1 only p[0], q[0] are used
  double lmax = 1;
  std::vector<int> codims;  // per side, each >= 2
  std::optional<int> nu;    // conjugate multiplicity, kappa = +1 only
  double delta = 1e-6;
  std::size_t node_budget = 0;  // 0 = unlimited

  int conjugate_multiplicity() const { return nu.value_or(chamber.dimension == 2 ? 1 : 0); }
};

struct BilliardTrajectory {
  Word word;
  double length = 0;
  int index = 0;
  Vec3 start, end;  // p and the developed image of q
  Vec3 tangent = Vec3::Zero();  // initial unit tangent at p
};

struct BilliardReport {
  std::vector<BilliardTrajectory> trajectories;
  std::size_t rejected = 0;
  std::size_t tiles_visited = 0;
  bool budget_hit = false;
  std::vector<std::string> notes;
};

inline bool trajectory_less(const BilliardTrajectory& a, const BilliardTrajectory& b) {
  if (a.length != b.length) return a.length < b.length;
  return shortlex_less(a.word, b.word);
}

// Chart coordinates of the realized chamber to a model point.
inline Vec3 chamber_point(const Realization& R, double x, double y = 0) {
  if (R.dimension == 1) return Vec3(x, 0, 0);
  return chart_point(R.model, x, y);
}

inline void check_config(const BilliardConfig& c) {
  const auto& R = c.chamber;
  const std::size_t k = R.dimension == 1 ? 2 : R.k();
  if (c.codims.size() != k)
    throw Error("billiard: " + std::to_string(k) + " face codimensions expected, got " + std::to_string(c.codims.size()));
  for (int ci : c.codims)
    if (ci < 2) throw Error("billiard: face codimensions must be at least 2");
  if (c.nu && *c.nu < 0) throw Error("billiard: conjugate multiplicity must be non-negative");
  if (!(c.lmax >= 0)) throw Error("billiard: length bound must be non-negative");
  auto check = [&](const Vec3& x, const char* name) {
    if (R.dimension == 1) {
      if (!(x[0] > c.delta && x[0] < R.interval_length - c.delta))
        throw Error(std::string("billiard: ") + name + " is not generic (within delta of an endpoint or outside)");
      return;
    }
    if (!R.inside(x)) throw Error(std::string("billiard: ") + name + " lies outside the chamber");
    if (R.distance_to_boundary(x) <= c.delta) throw Error(std::string("billiard: ") + name + " is not generic (within delta of a wall)");
  };
  check(c.p, "p");
  check(c.q, "q");
}

inline int morse_index(const BilliardTrajectory& t, const BilliardConfig& c) {
  int index = 0;
  for (int i : t.word) index += c.codims.at(static_cast<std::size_t>(i)) - 1;
  if (c.chamber.kappa > 0) {
    const int nu = c.conjugate_multiplicity();
    for (int j = 1; j * kPi < t.length - 1e-12; ++j) index += nu;
  }
  return index;
}

namespace detail {

enum class WalkResult { ok, corner, mismatch };

// Follows the geodesic from p with tangent u for length len through the
// tiling, recording the walls crossed.  Coordinates are those of the
// current tile.
inline WalkResult walk_unfolded(const Realization& R, const Vec3& p, const Vec3& u0, double len, double delta, Word& word,
                                Vec3& end) {
  const std::size_t k = R.normals.size();
  Vec3 x = p, u = u0;
  double left = len;
  word.clear();
  for (int guard = 0; guard < 100000; ++guard) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t wall = k;
    for (std::size_t i = 0; i < k; ++i) {
      const double t = leaving_time(R.model, wall_value(R.model, R.normals[i], x), wall_value(R.model, R.normals[i], u));
      if (t < best) best = t, wall = i;
    }
    if (best >= left) {
      end = geodesic_point(R.model, x, u, left);
      return WalkResult::ok;
    }
    Vec3 y, v;
    geodesic_step(R.model, x, u, best, y, v);
    if (distance(R.model, y, R.vertices[wall]) < delta || distance(R.model, y, R.vertices[(wall + 1) % k]) < delta)
      return WalkResult::corner;
    word.push_back(static_cast<int>(wall));
    x = R.reflections[wall] * y;
    u = R.reflections[wall] * v;
    renormalize(R.model, x, u);
    left -= best;
  }
  return WalkResult::mismatch;
}

inline void finish(BilliardReport& rep, const BilliardConfig& c) {
  for (auto& t : rep.trajectories) t.index = morse_index(t, c);
  std::sort(rep.trajectories.begin(), rep.trajectories.end(), trajectory_less);
  if (rep.rejected)
    rep.notes.push_back(std::to_string(rep.rejected) + " trajectories pass within delta of a corner and were rejected; perturb p or q");
}

inline BilliardReport enumerate_interval(const BilliardConfig& c) {
  BilliardReport rep;
  const double l = c.chamber.interval_length, p = c.p[0], q = c.q[0];
  const long long jmax = static_cast<long long>(std::ceil((c.lmax + 2 * l) / (2 * l))) + 1;
  for (long long j = -jmax; j <= jmax; ++j)
    for (int odd = 0; odd < 2; ++odd) {
      const double y = 2.0 * static_cast<double>(j) * l + (odd ? -q : q);
      const double len = std::abs(y - p);
      if (len > c.lmax) continue;
      BilliardTrajectory t;
      if (y > p) {
        for (long long m = 1; static_cast<double>(m) * l < y; ++m) t.word.push_back(static_cast<int>(std::abs(m) % 2));
      } else {
        for (long long m = 0; static_cast<double>(m) * l > y; --m) t.word.push_back(static_cast<int>(std::abs(m) % 2));
      }
      t.length = len;
      t.start = Vec3(p, 0, 0);
      t.end = Vec3(y, 0, 0);
      rep.trajectories.push_back(t);
    }
  finish(rep, c);
  return rep;
}

inline BilliardReport enumerate_sphere(const BilliardConfig& c) {
  BilliardReport rep;
  const auto& R = c.chamber;
  const Development dev = develop(R);
  rep.tiles_visited = dev.elements.size();
  for (const auto& e : dev.elements) {
    const Vec3 target = e.matrix * c.q;
    const double d = distance(R.model, c.p, target);
    const bool coincident = d < 1e-9, antipodal = std::abs(d - kPi) < 1e-9;
    if (coincident && e.word.empty()) rep.trajectories.push_back({{}, 0, 0, c.p, target, Vec3::Zero()});
    if (coincident || antipodal) {
      if (c.lmax >= (coincident ? 2 * kPi : kPi)) {
        ++rep.rejected;
        rep.notes.push_back("image " + word_string(e.word) + " of q is " + (coincident ? "p" : "antipodal to p") +
                            ": a whole family of great circles, not counted");
      }
      continue;
    }
    const Vec3 u = direction_to(R.model, c.p, target);
    for (int lap = 0;; ++lap) {
      bool any = false;
      for (int back = 0; back < 2; ++back) {
        const double len = (back ? 2 * kPi - d : d) + 2 * kPi * lap;
        if (len > c.lmax) continue;
        any = true;
        BilliardTrajectory t;
        t.tangent = back ? Vec3(-u) : u;
        Vec3 end;
        const auto res = walk_unfolded(R, c.p, t.tangent, len, c.delta, t.word, end);
        if (res == WalkResult::corner) {
          ++rep.rejected;
          continue;
        }
        if (res != WalkResult::ok || distance(R.model, end, c.q) > 1e-6)
          throw Error("billiard: unfolding check failed for image " + word_string(e.word));
        t.length = len;
        t.start = c.p;
        t.end = target;
        rep.trajectories.push_back(t);
      }
      if (!any) break;
    }
  }
  finish(rep, c);
  return rep;
}

inline BilliardReport enumerate_tree(const BilliardConfig& c) {
  BilliardReport rep;
  const auto& R = c.chamber;
  const auto stats = visit_tiles(
      R, c.p, c.lmax,
      [&](const TileNode& node) {
        const double len = distance(R.model, node.h, c.q);
        if (len > c.lmax) return true;
        BilliardTrajectory t;
        t.start = c.p;
        t.end = node.g * c.q;
        t.length = len;
        if (node.depth == 0) {
          rep.trajectories.push_back(t);
          return true;
        }
        Vec3 end;
        t.tangent = direction_to(R.model, c.p, t.end);
        const auto res = walk_unfolded(R, c.p, t.tangent, len, c.delta, t.word, end);
        if (res == WalkResult::corner) {
          ++rep.rejected;
          return true;
        }
        const double miss = distance(R.model, end, c.q);
        if (res != WalkResult::ok || static_cast<int>(t.word.size()) != node.depth || miss > 1e-6)
          throw Error("billiard: crossing-order check failed for tile " + word_string(node.word) + " (walk " +
                      word_string(t.word) + ", miss " + std::to_string(miss) + ")");
        rep.trajectories.push_back(std::move(t));
        return true;
      },
      true, c.node_budget);
  rep.tiles_visited = stats.nodes;
  rep.budget_hit = stats.budget_hit;
  if (stats.budget_hit) rep.notes.push_back("node budget exhausted: the list is incomplete");
  finish(rep, c);
  return rep;
}

}  // namespace detail

inline BilliardReport unfold_enumerate(const BilliardConfig& c) {
  check_config(c);
  if (c.chamber.dimension == 1) return detail::enumerate_interval(c);
  if (c.chamber.kappa > 0) return detail::enumerate_sphere(c);
  return detail::enumerate_tree(c);
}

// Trajectory counts N(L) at each L of `radii` without computing words.
struct Census {
  std::vector<double> radii;
  std::vector<std::size_t> counts;
  std::size_t tiles_visited = 0;
  bool budget_hit = false;
  double reached = 0;  // counts are exact for radii <= reached, zero beyond
};

inline Census census(const BilliardConfig& c, std::vector<double> radii) {
  check_config(c);
  std::sort(radii.begin(), radii.end());
  Census out;
  out.radii = radii;
  out.counts.assign(radii.size(), 0);
  if (radii.empty()) return out;
  auto add = [&](double len) {
    auto it = std::lower_bound(out.radii.begin(), out.radii.end(), len);
    if (it != out.radii.end()) ++out.counts[static_cast<std::size_t>(it - out.radii.begin())];
  };
  BilliardConfig big = c;
  big.lmax = radii.back();
  if (c.chamber.dimension == 1 || c.chamber.kappa > 0) {
    const auto rep = unfold_enumerate(big);
    for (const auto& t : rep.trajectories) add(t.length);
    out.reached = radii.back();
  } else if (!c.node_budget) {
    const auto stats = visit_tiles(
        c.chamber, c.p, big.lmax,
        [&](const TileNode& node) {
          const double len = distance(c.chamber.model, node.h, c.q);
          if (len <= big.lmax) add(len);
          return true;
        },
        false);
    out.tiles_visited = stats.nodes;
    out.reached = radii.back();
  } else {
    // one walk per radius so that every finished radius has an exact count
    std::size_t left = c.node_budget;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      std::size_t n = 0;
      const auto stats = visit_tiles(
          c.chamber, c.p, radii[i],
          [&](const TileNode& node) {
            n += distance(c.chamber.model, node.h, c.q) <= radii[i];
            return true;
          },
          false, left);
      out.tiles_visited += stats.nodes;
      if (stats.budget_hit) {
        out.budget_hit = true;
        break;
      }
      left -= stats.nodes;
      out.counts[i] = n;
      out.reached = radii[i];
    }
    return out;
  }
  std::partial_sum(out.counts.begin(), out.counts.end(), out.counts.begin());
  return out;
}

// ---------------------------------------------------------------------------

struct MorseSeries {
  std::map<int, std::size_t> histogram;  // index -> count
  std::vector<double> lengths;           // sorted
  bool lacunary = false;
  int gap = 0;  // gcd of the index increments
  std::string interpretation;

  std::size_t count_up_to(double L) const {
    return static_cast<std::size_t>(std::upper_bound(lengths.begin(), lengths.end(), L) - lengths.begin());
  }
};

inline MorseSeries morse_series(const std::vector<BilliardTrajectory>& ts, const BilliardConfig& c) {
  MorseSeries s;
  int g = 0;
  for (int ci : c.codims) g = std::gcd(g, ci - 1);
  if (c.chamber.kappa > 0 && c.conjugate_multiplicity() > 0) g = std::gcd(g, c.conjugate_multiplicity());
  s.gap = g;
  bool all = true;
  for (const auto& t : ts) {
    ++s.histogram[t.index];
    s.lengths.push_back(t.length);
    if (g == 0 || t.index % g != 0) all = false;
  }
  std::sort(s.lengths.begin(), s.lengths.end());
  s.lacunary = g >= 2 && all;
  s.interpretation = s.lacunary ? "lacunary: counts are Betti numbers of the path space"
                                : "not lacunary: counts are lower bounds";
  return s;
}

struct LinearFit {
  double slope = 0, intercept = 0, rms = 0;
};

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0;
  f.intercept = my - f.slope * mx;
  double r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    r += e * e;
  }
  f.rms = std::sqrt(r / n);
  return f;
}

struct GrowthClass {
  bool polynomial = true;
  double degree = 0, rate = 0;
  LinearFit loglog, loglinear;
};

inline std::string growth_name(const GrowthClass& g) {
  char buf[96];
  if (g.polynomial) std::snprintf(buf, sizeof buf, "polynomial, degree %.3f", g.degree);
  else std::snprintf(buf, sizeof buf, "exponential, rate %.3f", g.rate);
  return buf;
}

// samples are (L, N(L)) with N > 0
inline GrowthClass growth_classify(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 10) throw Error("growth_classify: at least 10 samples needed, got " + std::to_string(samples.size()));
  std::vector<double> lx, x, ly;
  for (auto [L, N] : samples) {
    if (!(L > 0 && N > 0)) throw Error("growth_classify: samples need L > 0 and N > 0");
    lx.push_back(std::log(L));
    x.push_back(L);
    ly.push_back(std::log(N));
  }
  GrowthClass g;
  g.loglog = least_squares(lx, ly);
  g.loglinear = least_squares(x, ly);
  g.degree = g.loglog.slope;
  g.rate = g.loglinear.slope;
  g.polynomial = g.loglog.rms <= g.loglinear.rms;
  return g;
}

inline GrowthClass growth_classify(const MorseSeries& s, const std::vector<double>& radii) {
  std::vector<std::pair<double, double>> samples;
  for (double L : radii) samples.emplace_back(L, static_cast<double>(s.count_up_to(L)));
  return growth_classify(samples);
}

inline std::string trajectory_table(const BilliardReport& rep) {
  std::string out = "# word\tlength\tindex\n";
  char buf[64];
  for (const auto& t : rep.trajectories) {
    std::snprintf(buf, sizeof buf, "\t%.9f\t%d\n", t.length, t.index);
    out += word_string(t.word) + buf;
  }
  return out;
}

}  // namespace polaris
