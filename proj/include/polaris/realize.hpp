// Metric realization of a chamber in its model plane.
//
// Polygons without prescribed lengths get the tangential realization: all
// sides touch one inscribed circle of radius r centred at c.  At corner i the
// right triangle (c, tangent point, corner) has angle alpha_i/2 at the corner
// and phi_i at c, so
//     cos(alpha_i / 2) = C(r) sin(phi_i),   C = cos, 1, cosh,
// and r is fixed by sum phi_i = pi (flat polygons use r = 1/2).  Triangles
// with curvature are rigid, so any given lengths are ignored.
#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polaris/model.hpp"
#include "polaris/polar_data.hpp"

namespace polaris {

struct Realization {
  int dimension = 2;
  int kappa = 0;
  Model model = Model::euclidean;
  std::vector<Vec3> vertices;     // vertex i = corner i
  std::vector<Vec3> normals;      // wall of side i, positive inside
  std::vector<Mat3> reflections;  // r_i
  std::vector<double> side_lengths;
  Vec3 center = origin();
  double area = 0;
  double interval_length = 0;  // dimension 1
  std::vector<std::string> warnings;

  std::size_t k() const { return dimension == 1 ? 2 : normals.size(); }

  bool inside(const Vec3& x, double margin = 0) const {
    for (const auto& n : normals)
      if (wall_value(model, n, x) <= margin) return false;
    return true;
  }

  double distance_to_boundary(const Vec3& x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& n : normals) d = std::min(d, wall_distance(model, n, x));
    return d;
  }
};

namespace detail {

inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
  // f(lo) and f(hi) have opposite signs
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Side lengths of the tangential polygon with the given interior angles.
inline std::vector<double> tangential_lengths(Model m, const std::vector<double>& alpha) {
  const std::size_t k = alpha.size();
  auto phis = [&](double r, std::vector<double>& out) {
    const double c = m == Model::sphere ? std::cos(r) : (m == Model::hyperbolic ? std::cosh(r) : 1.0);
    out.resize(k);
    double sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double s = std::cos(alpha[i] / 2) / c;
      if (s > 1) return std::numeric_limits<double>::quiet_NaN();
      out[i] = std::asin(s);
      sum += out[i];
    }
    return sum;
  };
  std::vector<double> phi;
  double r = 0.5;
  if (m == Model::hyperbolic) {
    double hi = 1;
    while (phis(hi, phi) > kPi) hi *= 2;
    r = bisect([&](double x) { return phis(x, phi) - kPi; }, 0, hi);
  } else if (m == Model::sphere) {
    double rmax = kPi;
    for (double a : alpha) rmax = std::min(rmax, a / 2);
    std::vector<double> tmp;
    if (phis(rmax, tmp) < kPi)
      throw Error("spherical polygon has no inscribed-circle realization; supply side lengths");
    r = bisect([&](double x) { return phis(x, tmp) - kPi; }, 0, rmax);
  }
  phis(r, phi);
  std::vector<double> t(k);
  for (std::size_t i = 0; i < k; ++i) {
    switch (m) {
      case Model::sphere: t[i] = std::atan(std::sin(r) * std::tan(phi[i])); break;
      case Model::euclidean: t[i] = r * std::tan(phi[i]); break;
      case Model::hyperbolic: t[i] = std::atanh(std::sinh(r) * std::tan(phi[i])); break;
    }
  }
  std::vector<double> len(k);
  for (std::size_t i = 0; i < k; ++i) len[i] = t[i] + t[(i + 1) % k];
  return len;
}

// Walk the boundary counterclockwise; returns the closure defect.
inline double walk_polygon(Model m, const std::vector<double>& alpha, const std::vector<double>& len,
                           std::vector<Vec3>& vertices) {
  const std::size_t k = alpha.size();
  Mat3 frame = Mat3::Identity();
  vertices.clear();
  for (std::size_t i = 0; i < k; ++i) {
    vertices.push_back(frame * origin());
    frame = frame * translation_x(m, len[i]) * rotation(kPi - alpha[(i + 1) % k]);
  }
  // Closing means the frame is back to the identity.
  return (frame - Mat3::Identity()).cwiseAbs().maxCoeff();
}

inline Vec3 wall_through(Model m, const Vec3& a, const Vec3& b, const Vec3& inside) {
  Vec3 n;
  switch (m) {
    case Model::sphere: n = a.cross(b).normalized(); break;
    case Model::euclidean: {
      Vec3 d(b[0] - a[0], b[1] - a[1], 0);
      d.normalize();
      n = Vec3(-d[1], d[0], 0);
      n[2] = -(n[0] * a[0] + n[1] * a[1]);
      break;
    }
    case Model::hyperbolic: {
      const Vec3 c = a.cross(b);
      n = Vec3(c[0], c[1], -c[2]);
      n /= std::sqrt(lorentz(n, n));
      break;
    }
  }
  if (wall_value(m, n, inside) < 0) n = -n;
  return n;
}

inline double polygon_area_flat(const std::vector<Vec3>& v) {
  double a = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return std::abs(a) / 2;
}

}  // namespace detail

inline Realization realize_chamber(const Chamber& c) {
  const ChamberGeometry geom = chamber_geometry(c);
  Realization R;
  R.dimension = c.dimension;
  R.kappa = geom.kappa;
  R.model = model_for(geom.kappa);
  if (c.dimension == 1) {
    if (c.length) {
      R.interval_length = *c.length;
    } else {
      R.interval_length = geom.kappa > 0 ? kPi : 1.0;
      R.warnings.push_back("interval length not given, using " + std::to_string(R.interval_length));
    }
    R.side_lengths = {0, 0};
    return R;
  }
  const std::size_t k = c.k();
  if (k < 2) throw Error("cannot realize a chamber with " + std::to_string(k) + " sides");

  std::vector<double> alpha(k);
  for (std::size_t i = 0; i < k; ++i) alpha[i] = kPi / c.corners[i].order;
  std::size_t given = 0;
  for (const auto& s : c.sides) given += s.length.has_value();

  if (k == 2) {
    if (c.corners[0].order != c.corners[1].order) throw Error("a biangle has equal angles at its two corners");
    const double h = alpha[0] / 2;
    R.vertices = {Vec3(-1, 0, 0), Vec3(1, 0, 0)};
    R.normals = {Vec3(0, std::cos(h), std::sin(h)), Vec3(0, -std::cos(h), std::sin(h))};
    R.side_lengths = {kPi, kPi};
    R.center = origin();
    if (given) R.warnings.push_back("biangle sides have length pi; given lengths ignored");
  } else {
    std::vector<double> len;
    const bool rigid = k == 3 && geom.kappa != 0;
    if (given > 0 && given < k) throw Error("either all or no side lengths must be given");
    if (given == k && rigid) {
      R.warnings.push_back("triangle with curvature is determined by its angles; given side lengths ignored");
      given = 0;
    }
    if (given == k) {
      for (const auto& s : c.sides) len.push_back(*s.length);
    } else {
      len = detail::tangential_lengths(R.model, alpha);
    }
    const double defect = detail::walk_polygon(R.model, alpha, len, R.vertices);
    if (defect > 1e-9) {
      std::ostringstream os;
      os << "side lengths and angles do not close up: the boundary walk misses its start by " << defect;
      throw Error(os.str());
    }
    R.side_lengths = len;
    Vec3 sum = Vec3::Zero();
    for (const auto& v : R.vertices) sum += v;
    R.center = normalize_point(R.model, sum);
    for (std::size_t i = 0; i < k; ++i)
      R.normals.push_back(detail::wall_through(R.model, R.vertices[i], R.vertices[(i + 1) % k], R.center));
  }
  for (const auto& n : R.normals) R.reflections.push_back(reflection(R.model, n));
  if (geom.area_over_pi) R.area = boost::rational_cast<double>(*geom.area_over_pi) * kPi;
  else R.area = detail::polygon_area_flat(R.vertices);
  return R;
}

}  // namespace polaris
