// Ray-tracing billiard: shoot from p in every direction, bounce off the
// walls inside the chamber, and record the directions whose path runs
// through q.  Independent of the tiling machinery; used to check the
// unfolding enumerator.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "polaris/billiard.hpp"

namespace polaris {

struct ShootingOptions {
  std::size_t grid = 4096;       // initial directions
  double max_width = 0;          // 0: 2 pi / grid
  int max_depth = 60;            // refinement levels below the grid
  int bisection_steps = 60;
};

struct ShootingStats {
  std::size_t traces = 0;
  std::size_t intervals = 0;
  std::size_t unresolved = 0;  // intervals given up at max_depth or width 1e-12
  std::size_t grazing = 0;     // fans closed because every path in them bounces at a corner
  std::size_t spent = 0;       // fans closed because no path has length left to reach q again
  std::size_t pinched = 0;     // fans at the resolution floor whose ends straddle a corner
};

namespace oracle {

struct Chord {
  Vec3 x, u;
  double length;
  int wall;  // wall hit at the end, -1 if the path stops first
  Vec3 apex;  // p seen through the mirrors crossed so far
  bool grazes = false;  // the bounce at the end is within delta of a corner
};

struct Trace {
  std::vector<Chord> chords;

  bool same_pattern(const Trace& o) const {
    if (chords.size() != o.chords.size()) return false;
    for (std::size_t i = 0; i < chords.size(); ++i)
      if (chords[i].wall != o.chords[i].wall) return false;
    return true;
  }
};

inline Trace trace(const Realization& R, const Vec3& p, const Vec3& u0, double L, double delta,
                   std::size_t max_chords = std::numeric_limits<std::size_t>::max()) {
  Trace tr;
  const std::size_t k = R.normals.size();
  Vec3 x = p, u = u0, apex = p;
  double used = 0;
  while (used < L && tr.chords.size() < max_chords) {
    double best = std::numeric_limits<double>::infinity();
    int wall = -1;
    for (std::size_t i = 0; i < k; ++i) {
      const double t = leaving_time(R.model, wall_value(R.model, R.normals[i], x), wall_value(R.model, R.normals[i], u));
      if (t < best) best = t, wall = static_cast<int>(i);
    }
    if (used + best >= L) {
      tr.chords.push_back({x, u, L - used, -1, apex});
      break;
    }
    tr.chords.push_back({x, u, best, wall, apex});
    used += best;
    Vec3 y, v;
    geodesic_step(R.model, x, u, best, y, v);
    const auto w = static_cast<std::size_t>(wall);
    tr.chords.back().grazes =
        distance(R.model, y, R.vertices[w]) < delta || distance(R.model, y, R.vertices[(w + 1) % k]) < delta;
    // bounce: the position is on the wall, the velocity is mirrored
    x = y;
    u = R.reflections[w] * v;
    apex = R.reflections[w] * apex;
    renormalize(R.model, x, u);
  }
  return tr;
}

// Arc-length position of q on the geodesic (x, u), assuming q is on it.
inline double position_on(Model m, const Vec3& x, const Vec3& u, const Vec3& q) {
  switch (m) {
    case Model::sphere: return std::atan2(u.dot(q), x.dot(q));
    case Model::euclidean: return (q[0] - x[0]) * u[0] + (q[1] - x[1]) * u[1];
    case Model::hyperbolic: return std::asinh(lorentz(q, u));
  }
  return 0;
}

// True if a chamber corner lies strictly between the two chords, short of
// where the paths stop.
inline bool corner_between(const Realization& R, const Chord& ca, const Chord& cb, bool last, double L) {
  const Model m = R.model;
  for (const auto& v : R.vertices) {
    const double sa = side_of(m, ca.x, ca.u, v), sb = side_of(m, cb.x, cb.u, v);
    if ((sa > 0) == (sb > 0)) continue;
    const double pa = position_on(m, ca.x, ca.u, v), pb = position_on(m, cb.x, cb.u, v);
    if (pa < -1e-9 && pb < -1e-9) continue;  // opposite cone
    if (m == Model::sphere) {
      // great circles wrap around; only the stretch near the chord counts
      if (pa > ca.length + 1e-3 && pb > cb.length + 1e-3) continue;
      return true;
    }
    if (!last || distance(m, ca.apex, v) < L + 1e-9) return true;
  }
  return false;
}

inline double used_through(const Trace& t, std::size_t j) {
  double s = 0;
  for (std::size_t i = 0; i <= j && i < t.chords.size(); ++i) s += t.chords[i].length;
  return s;
}

inline constexpr std::size_t kUniform = std::numeric_limits<std::size_t>::max();

// First chord after which the paths between a and b may part ways, or
// kUniform.  Up to and including that chord every path in the fan crosses
// the same walls, so each chord line sweeps monotonically across the fan.
inline std::size_t divergence(const Realization& R, const Trace& a, const Trace& b, double L) {
  const std::size_t n = std::min(a.chords.size(), b.chords.size());
  for (std::size_t j = 0; j < n; ++j) {
    const Chord& ca = a.chords[j];
    const Chord& cb = b.chords[j];
    if (ca.wall != cb.wall) return j;
    if (corner_between(R, ca, cb, ca.wall < 0, L)) return j;
  }
  if (a.chords.size() != b.chords.size()) return n - 1;
  return kUniform;
}

// Both paths end chord j within delta of the same corner: so does every
// path between them.
inline bool grazing(const Realization& R, const Chord& ca, const Chord& cb, double delta) {
  if (ca.wall < 0 || cb.wall < 0) return false;
  const Model m = R.model;
  const Vec3 ya = geodesic_point(m, ca.x, ca.u, ca.length), yb = geodesic_point(m, cb.x, cb.u, cb.length);
  for (const auto& v : R.vertices)
    if (distance(m, ya, v) < delta && distance(m, yb, v) < delta) return true;
  return false;
}

// The two paths end chord j on either side of a corner, close to it and to
// each other: the fan splits at that corner.
inline bool pinched(const Realization& R, const Chord& ca, const Chord& cb) {
  if (ca.wall < 0 || cb.wall < 0) return false;
  const Model m = R.model;
  const Vec3 ya = geodesic_point(m, ca.x, ca.u, ca.length), yb = geodesic_point(m, cb.x, cb.u, cb.length);
  const double gap = distance(m, ya, yb);
  if (gap > 1e-4) return false;
  for (const auto& v : R.vertices)
    if (std::max(distance(m, ya, v), distance(m, yb, v)) <= 1.01 * gap + 1e-12) return true;
  return false;
}

// Lower bound for the arc length, from the apex, at which the paths of the
// fan leave the chamber after chord j, if they all leave through one wall.
// Non-positive curvature only.
inline std::optional<double> exit_floor(const Realization& R, const Chord& ca, const Chord& cb, double L) {
  const Model m = R.model;
  if (m == Model::sphere) return std::nullopt;
  auto exit = [&](const Chord& ch, double& t) {
    int wall = -1;
    t = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < R.normals.size(); ++i) {
      const double s = leaving_time(m, wall_value(m, R.normals[i], ch.x), wall_value(m, R.normals[i], ch.u));
      if (s < t) t = s, wall = static_cast<int>(i);
    }
    return wall;
  };
  double ta = 0, tb = 0;
  const int w = exit(ca, ta);
  if (w < 0 || exit(cb, tb) != w) return std::nullopt;
  if (corner_between(R, ca, cb, false, L)) return std::nullopt;
  const Vec3& apex = ca.apex;
  const Vec3 f = foot_on_wall(m, R.normals[static_cast<std::size_t>(w)], apex);
  if ((side_of(m, ca.x, ca.u, f) > 0) != (side_of(m, cb.x, cb.u, f) > 0)) return distance(m, apex, f);
  return std::min(distance(m, apex, geodesic_point(m, ca.x, ca.u, ta)), distance(m, apex, geodesic_point(m, cb.x, cb.u, tb)));
}

}  // namespace oracle

inline std::vector<BilliardTrajectory> shooting_oracle(const BilliardConfig& c, const ShootingOptions& opt = {},
                                                       ShootingStats* stats_out = nullptr) {
  check_config(c);
  const Realization& R = c.chamber;
  if (R.dimension != 2) throw Error("shooting oracle: two-dimensional chambers only");
  const Model m = R.model;
  const Vec3 e0 = direction_to(m, c.p, R.vertices[0]);
  auto dir = [&](double th) { return turn(m, c.p, e0, th); };
  ShootingStats stats;
  std::vector<BilliardTrajectory> found;
  const bool p_is_q = distance(m, c.p, c.q) < 1e-12;
  if (p_is_q) found.push_back({{}, 0, 0, c.p, c.q, Vec3::Zero()});

  auto shoot = [&](double th, std::size_t max_chords = std::numeric_limits<std::size_t>::max()) {
    ++stats.traces;
    return oracle::trace(R, c.p, dir(th), c.lmax, c.delta, max_chords);
  };
  auto side = [&](const oracle::Trace& t, std::size_t j) {
    return side_of(m, t.chords[j].x, t.chords[j].u, c.q);
  };

  // chord j runs through q for at most one direction of the fan [a, b]
  auto harvest = [&](double a, double b, const oracle::Trace& ta, const oracle::Trace& tb, std::size_t j) {
    if (j == 0 && p_is_q) return;
    const double fa = side(ta, j), fb = side(tb, j);
    if ((fa > 0) == (fb > 0)) return;
    double lo = a, hi = b, flo = fa;
    for (int s = 0; s < opt.bisection_steps; ++s) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const auto tm = shoot(mid, j + 1);
      if (tm.chords.size() <= j) break;
      const double fm = side(tm, j);
      if ((fm > 0) == (flo > 0)) lo = mid, flo = fm;
      else hi = mid;
    }
    const auto t = shoot(0.5 * (lo + hi), j + 1);
    if (t.chords.size() <= j) return;
    const auto& ch = t.chords[j];
    const double s = oracle::position_on(m, ch.x, ch.u, c.q);
    if (s < -1e-9 || s > ch.length + 1e-9) return;
    if (distance(m, geodesic_point(m, ch.x, ch.u, s), c.q) > 1e-7) return;
    double len = s;
    BilliardTrajectory traj;
    for (std::size_t i = 0; i < j; ++i) {
      if (t.chords[i].grazes) return;
      len += t.chords[i].length;
      traj.word.push_back(t.chords[i].wall);
    }
    if (len > c.lmax) return;
    traj.length = len;
    traj.start = c.p;
    traj.end = c.q;
    traj.tangent = dir(0.5 * (lo + hi));
    found.push_back(traj);
  };

  // a path that bounces again needs at least this much length to reach q
  const double q_margin = R.distance_to_boundary(c.q) - 1e-9;
  const double width = opt.max_width > 0 ? opt.max_width : 2 * kPi / static_cast<double>(opt.grid);
  // chords below `from` were harvested on an enclosing fan
  std::function<void(double, double, const oracle::Trace&, const oracle::Trace&, std::size_t, int)> refine =
      [&](double a, double b, const oracle::Trace& ta, const oracle::Trace& tb, std::size_t from, int depth) {
        ++stats.intervals;
        std::size_t d = b - a <= width ? oracle::divergence(R, ta, tb, c.lmax) : 0;
        const std::size_t upto = d == oracle::kUniform ? ta.chords.size() : (b - a <= width ? d + 1 : 0);
        for (std::size_t j = from; j < upto; ++j) harvest(a, b, ta, tb, j);
        if (d == oracle::kUniform) return;
        if (b - a <= width) {
          for (std::size_t j = 0; j <= d; ++j)
            if (oracle::grazing(R, ta.chords[j], tb.chords[j], c.delta)) {
              ++stats.grazing;
              return;
            }
          const auto floor = oracle::exit_floor(R, ta.chords[d], tb.chords[d], c.lmax);
          if (floor && c.lmax - *floor < q_margin) {
            ++stats.spent;
            return;
          }
          // a fan this narrow that has used up all but a sliver of length
          // through chord d cannot bounce and still reach q
          if (b - a < 1e-9 && c.lmax - std::min(oracle::used_through(ta, d), oracle::used_through(tb, d)) < q_margin - 1e-6) {
            ++stats.spent;
            return;
          }
        }
        if (b - a < 1e-12 || depth >= opt.max_depth) {
          if (oracle::pinched(R, ta.chords[d], tb.chords[d])) {
            ++stats.pinched;
            return;
          }
          ++stats.unresolved;
          return;
        }
        const std::size_t next = std::max(from, upto);
        const double mid = 0.5 * (a + b);
        const auto tm = shoot(mid);
        refine(a, mid, ta, tm, next, depth + 1);
        refine(mid, b, tm, tb, next, depth + 1);
      };

  const std::size_t n = std::max<std::size_t>(opt.grid, 1);
  auto first = shoot(0);
  auto prev = first;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double b = 2 * kPi * static_cast<double>(i + 1) / static_cast<double>(n);
    auto next = i + 1 == n ? first : shoot(b);
    refine(a, b, prev, next, 0, 0);
    prev = std::move(next);
  }

  std::sort(found.begin(), found.end(), trajectory_less);
  // hits on a shared fan edge show up twice; equal words may sit apart
  std::vector<BilliardTrajectory> out;
  for (auto& t : found) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend() && t.length - it->length < 1e-7; ++it)
      if (it->word == t.word) dup = true;
    if (dup) continue;
    t.index = morse_index(t, c);
    out.push_back(std::move(t));
  }
  if (stats_out) *stats_out = stats;
  return out;
}

}  // namespace polaris
