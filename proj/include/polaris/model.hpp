// The three constant-curvature model planes in homogeneous 3-vectors:
//   sphere      unit vectors, isometries orthogonal
//   euclidean   (x, y, 1), walls (a, b, c) with a^2 + b^2 = 1
//   hyperbolic  upper sheet of <x,x> = -1 with J = diag(1, 1, -1)
// A wall n pairs with a point x to give sin / signed distance / sinh of
// the distance, positive on the chamber side.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "polaris/error.hpp"

namespace polaris {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class Model { sphere, euclidean, hyperbolic };

inline Model model_for(int kappa) {
  return kappa > 0 ? Model::sphere : (kappa < 0 ? Model::hyperbolic : Model::euclidean);
}

inline std::string model_name(Model m) {
  switch (m) {
    case Model::sphere: return "sphere";
    case Model::euclidean: return "euclidean";
    case Model::hyperbolic: return "hyperbolic";
  }
  return "?";
}

constexpr double kPi = std::numbers::pi;

inline Vec3 origin() { return Vec3(0, 0, 1); }

inline double lorentz(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }

// Linear in x, so it also evaluates directions.
inline double wall_value(Model m, const Vec3& n, const Vec3& x) {
  return m == Model::hyperbolic ? lorentz(n, x) : n.dot(x);
}

inline double wall_distance(Model m, const Vec3& n, const Vec3& x) {
  const double v = std::abs(wall_value(m, n, x));
  switch (m) {
    case Model::sphere: return std::asin(std::min(1.0, v));
    case Model::euclidean: return v;
    case Model::hyperbolic: return std::asinh(v);
  }
  return v;
}

inline double distance(Model m, const Vec3& x, const Vec3& y) {
  switch (m) {
    case Model::sphere: {
      // atan2 form keeps precision for nearly equal or antipodal points
      return std::atan2(x.cross(y).norm(), x.dot(y));
    }
    case Model::euclidean: return std::hypot(x[0] - y[0], x[1] - y[1]);
    case Model::hyperbolic: {
      // chord form; acosh loses half the digits near 1
      const Vec3 w = x - y;
      return 2 * std::asinh(std::sqrt(std::max(0.0, lorentz(w, w))) / 2);
    }
  }
  return 0;
}

inline Mat3 reflection(Model m, const Vec3& n) {
  Mat3 r = Mat3::Identity();
  switch (m) {
    case Model::sphere: r -= 2.0 * n * n.transpose(); break;
    case Model::euclidean: r -= 2.0 * Vec3(n[0], n[1], 0) * n.transpose(); break;
    case Model::hyperbolic: {
      const Vec3 jn(n[0], n[1], -n[2]);
      r -= 2.0 * n * jn.transpose();
      break;
    }
  }
  return r;
}

inline Mat3 rotation(double theta) {
  Mat3 r = Mat3::Identity();
  r(0, 0) = std::cos(theta);
  r(0, 1) = -std::sin(theta);
  r(1, 0) = std::sin(theta);
  r(1, 1) = std::cos(theta);
  return r;
}

// Moves the origin a distance t along the positive x direction.
inline Mat3 translation_x(Model m, double t) {
  Mat3 r = Mat3::Identity();
  switch (m) {
    case Model::sphere:
      r(0, 0) = std::cos(t); r(0, 2) = std::sin(t);
      r(2, 0) = -std::sin(t); r(2, 2) = std::cos(t);
      break;
    case Model::euclidean: r(0, 2) = t; break;
    case Model::hyperbolic:
      r(0, 0) = std::cosh(t); r(0, 2) = std::sinh(t);
      r(2, 0) = std::sinh(t); r(2, 2) = std::cosh(t);
      break;
  }
  return r;
}

// Unit-speed geodesic through x with unit tangent u.
inline Vec3 geodesic_point(Model m, const Vec3& x, const Vec3& u, double t) {
  switch (m) {
    case Model::sphere: return std::cos(t) * x + std::sin(t) * u;
    case Model::euclidean: return x + t * u;
    case Model::hyperbolic: return std::cosh(t) * x + std::sinh(t) * u;
  }
  return x;
}

inline Vec3 geodesic_tangent(Model m, const Vec3& x, const Vec3& u, double t) {
  switch (m) {
    case Model::sphere: return -std::sin(t) * x + std::cos(t) * u;
    case Model::euclidean: return u;
    case Model::hyperbolic: return std::sinh(t) * x + std::cosh(t) * u;
  }
  return u;
}

// Point and tangent after time t in one go.
inline void geodesic_step(Model m, const Vec3& x, const Vec3& u, double t, Vec3& y, Vec3& v) {
  switch (m) {
    case Model::sphere: {
      const double c = std::cos(t), s = std::sin(t);
      y = c * x + s * u;
      v = c * u - s * x;
      return;
    }
    case Model::euclidean:
      y = x + t * u;
      v = u;
      return;
    case Model::hyperbolic: {
      const double c = std::cosh(t), s = std::sinh(t);
      y = c * x + s * u;
      v = s * x + c * u;
      return;
    }
  }
}

// Unit tangent at x pointing to y.
inline Vec3 direction_to(Model m, const Vec3& x, const Vec3& y) {
  switch (m) {
    case Model::sphere: {
      Vec3 u = y - x.dot(y) * x;
      return u / u.norm();
    }
    case Model::euclidean: {
      Vec3 u(y[0] - x[0], y[1] - x[1], 0);
      return u / u.norm();
    }
    case Model::hyperbolic: {
      Vec3 u = y + lorentz(x, y) * x;
      return u / std::sqrt(lorentz(u, u));
    }
  }
  return y;
}

// Tangent at x obtained by turning u counterclockwise by theta.
inline Vec3 turn(Model m, const Vec3& x, const Vec3& u, double theta) {
  Vec3 w;
  switch (m) {
    case Model::sphere: w = x.cross(u); break;
    case Model::euclidean: w = Vec3(-u[1], u[0], 0); break;
    case Model::hyperbolic: {
      const Vec3 c = x.cross(u);
      w = Vec3(c[0], c[1], -c[2]);
      break;
    }
  }
  return std::cos(theta) * u + std::sin(theta) * w;
}

// Sign of the side of q relative to the oriented geodesic through x with
// tangent u; positive means left.
inline double side_of(Model m, const Vec3& x, const Vec3& u, const Vec3& q) {
  switch (m) {
    case Model::sphere: return x.cross(u).dot(q);
    case Model::euclidean: return u[0] * (q[1] - x[1]) - u[1] * (q[0] - x[0]);
    case Model::hyperbolic: return x.cross(u).dot(q);
  }
  return 0;
}

// Smallest t > t_min where the wall value A c(t) + B s(t) crosses zero from
// positive to negative; infinity if the geodesic never leaves the half-plane.
inline double leaving_time(Model m, double a, double b, double t_min = 1e-12) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (m) {
    case Model::euclidean: {
      if (b >= 0) return inf;
      const double t = -a / b;
      return t > t_min ? t : inf;
    }
    case Model::hyperbolic: {
      if (b >= 0 || -b <= a) return inf;
      const double t = std::atanh(-a / b);
      return t > t_min ? t : inf;
    }
    case Model::sphere: {
      const double r = std::hypot(a, b);
      if (r == 0) return inf;
      double t = std::atan2(b, a) + kPi / 2;
      while (t <= t_min) t += 2 * kPi;
      while (t - 2 * kPi > t_min) t -= 2 * kPi;
      return t;
    }
  }
  return inf;
}

// Points of the chamber chart: vertex 0 sits at the origin, side 0 leaves
// along the positive x axis.
inline Vec3 chart_point(Model m, double x, double y) {
  switch (m) {
    case Model::sphere: {
      const double r2 = x * x + y * y;
      if (r2 >= 1) throw Error("chart point outside the upper hemisphere");
      return Vec3(x, y, std::sqrt(1 - r2));
    }
    case Model::euclidean: return Vec3(x, y, 1);
    case Model::hyperbolic: return Vec3(x, y, std::sqrt(1 + x * x + y * y));
  }
  return origin();
}

inline Vec3 normalize_point(Model m, const Vec3& x) {
  switch (m) {
    case Model::sphere: return x / x.norm();
    case Model::euclidean: return x / x[2];
    case Model::hyperbolic: return x / std::sqrt(-lorentz(x, x));
  }
  return x;
}

// Closest point to x on the wall with unit normal n.
inline Vec3 foot_on_wall(Model m, const Vec3& n, const Vec3& x) {
  const double v = wall_value(m, n, x);
  switch (m) {
    case Model::sphere: return (x - v * n).normalized();
    case Model::euclidean: return Vec3(x[0] - v * n[0], x[1] - v * n[1], 1);
    case Model::hyperbolic: return normalize_point(m, x - v * n);
  }
  return x;
}

// Pulls a drifting point and unit tangent back onto the model.
inline void renormalize(Model m, Vec3& x, Vec3& u) {
  x = normalize_point(m, x);
  switch (m) {
    case Model::sphere:
      u -= x.dot(u) * x;
      u /= u.norm();
      break;
    case Model::euclidean:
      u[2] = 0;
      u /= u.norm();
      break;
    case Model::hyperbolic:
      u += lorentz(x, u) * x;
      u /= std::sqrt(lorentz(u, u));
      break;
  }
}

}  // namespace polaris
