// SVG pictures of chambers, tilings and unfolded billiard paths.
// Hyperbolic pictures use the Poincare disk; spherical ones show the two
// hemispheres as stereographic disks side by side.
#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "polaris/billiard.hpp"
#include "polaris/coxeter.hpp"
#include "polaris/polar_data.hpp"
#include "polaris/realize.hpp"

namespace polaris {

namespace svg {

struct P2 {
  double x, y;
};

class Canvas {
 public:
  Canvas(double w, double h) : w_(w), h_(h) {}

  void polyline(const std::vector<P2>& pts, const std::string& stroke, double width, bool closed = false,
                const std::string& fill = "none") {
    if (pts.empty()) return;
    body_ += closed ? "<polygon" : "<polyline";
    body_ += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ += (i ? " " : "") + num(pts[i].x) + "," + num(pts[i].y);
    body_ += "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
  }

  void circle(P2 c, double r, const std::string& stroke, const std::string& fill = "none") {
    body_ += "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(r) + "\" fill=\"" + fill +
             "\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
  }

  void text(P2 at, const std::string& s, int size = 12) {
    body_ += "<text x=\"" + num(at.x) + "\" y=\"" + num(at.y) + "\" font-family=\"monospace\" font-size=\"" +
             std::to_string(size) + "\" text-anchor=\"middle\">" + escape(s) + "</text>\n";
  }

  std::string str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           num(w_) + "\" height=\"" + num(h_) + "\" viewBox=\"0 0 " + num(w_) + " " + num(h_) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
  }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
  }

 private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
      }
    }
    return out;
  }
  double w_, h_;
  std::string body_;
};

// Model point to picture coordinates.
class Projection {
 public:
  Projection(Model m, double extent) : m_(m), extent_(extent) {}

  double width() const { return m_ == Model::sphere ? 1200 : 600; }
  double height() const { return 600; }

  P2 operator()(const Vec3& x) const {
    double u = 0, v = 0, cx = 300;
    switch (m_) {
      case Model::sphere:
        if (x[2] >= 0) {
          u = x[0] / (1 + x[2]);
          v = x[1] / (1 + x[2]);
        } else {
          u = -x[0] / (1 - x[2]);
          v = x[1] / (1 - x[2]);
          cx = 900;
        }
        return {cx + 280 * u, 300 - 280 * v};
      case Model::hyperbolic:
        u = x[0] / (1 + x[2]);
        v = x[1] / (1 + x[2]);
        return {300 + 280 * u, 300 - 280 * v};
      case Model::euclidean:
        return {300 + 280 * x[0] / extent_, 300 - 280 * x[1] / extent_};
    }
    return {0, 0};
  }

  void frame(Canvas& c) const {
    if (m_ == Model::sphere) {
      c.circle({300, 300}, 280, "#999999");
      c.circle({900, 300}, 280, "#999999");
      c.text({300, 596}, "upper hemisphere");
      c.text({900, 596}, "lower hemisphere");
    } else if (m_ == Model::hyperbolic) {
      c.circle({300, 300}, 280, "#999999");
    }
  }

 private:
  Model m_;
  double extent_;
};

inline std::vector<Vec3> sample_segment(Model m, const Vec3& a, const Vec3& b, int n = 24) {
  std::vector<Vec3> out;
  const double d = distance(m, a, b);
  if (d < 1e-12) return {a, b};
  const Vec3 u = direction_to(m, a, b);
  for (int i = 0; i <= n; ++i) out.push_back(geodesic_point(m, a, u, d * i / n));
  return out;
}

inline std::vector<P2> tile_outline(const Realization& R, const Projection& proj, const Mat3& g) {
  std::vector<P2> pts;
  const std::size_t k = R.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    auto seg = sample_segment(R.model, g * R.vertices[i], g * R.vertices[(i + 1) % k]);
    seg.pop_back();
    for (const auto& x : seg) pts.push_back(proj(x));
  }
  return pts;
}

inline double flat_extent(const Realization& R, double radius) {
  double e = 0;
  for (const auto& v : R.vertices) e = std::max({e, std::abs(v[0]), std::abs(v[1])});
  return std::max(e, radius) * 1.05;
}

inline std::string render_interval(const PolarData& d, const Realization& R) {
  Canvas c(600, 160);
  c.polyline({{50, 80}, {550, 80}}, "black", 2);
  c.circle({50, 80}, 5, "black", "black");
  c.circle({550, 80}, 5, "black", "black");
  const auto& s = d.chamber.sides;
  c.text({50, 60}, s[0].id + ": " + describe(d.graph.faces.at(s[0].id)));
  c.text({550, 60}, s[1].id + ": " + describe(d.graph.faces.at(s[1].id)));
  c.text({300, 110}, describe(d.graph.principal));
  char buf[64];
  std::snprintf(buf, sizeof buf, "length %.6f", R.interval_length);
  c.text({300, 140}, buf);
  return c.str();
}

}  // namespace svg

inline std::string render_chamber(const PolarData& d) {
  const Realization R = realize_chamber(d.chamber);
  if (R.dimension == 1) return svg::render_interval(d, R);
  const svg::Projection proj(R.model, svg::flat_extent(R, 0));
  svg::Canvas c(proj.width(), proj.height());
  proj.frame(c);
  c.polyline(svg::tile_outline(R, proj, Mat3::Identity()), "black", 2, true, "#e8eef8");
  const std::size_t k = R.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    const auto& corner = d.chamber.corners[i];
    auto at = proj(R.vertices[i]);
    c.text({at.x, at.y - 8}, corner.id + " " + describe(d.graph.corners.at(corner.id)) + " pi/" + std::to_string(corner.order), 11);
    const auto seg = svg::sample_segment(R.model, R.vertices[i], R.vertices[(i + 1) % k], 2);
    auto mid = proj(seg[seg.size() / 2]);
    const auto& side = d.chamber.sides[i];
    c.text({mid.x, mid.y + 14}, side.id + " " + describe(d.graph.faces.at(side.id)), 11);
  }
  auto center = proj(R.center);
  c.text(center, describe(d.graph.principal), 11);
  return c.str();
}

// Tiles of the development within `radius` of the chamber centre.
inline std::string render_tiling(const Realization& R, double radius, std::size_t node_budget = 20000) {
  if (R.dimension != 2) throw Error("render: tilings need a two-dimensional chamber");
  const svg::Projection proj(R.model, svg::flat_extent(R, radius));
  svg::Canvas c(proj.width(), proj.height());
  proj.frame(c);
  if (R.kappa > 0) {
    const auto dev = develop(R);
    for (const auto& e : dev.elements)
      c.polyline(svg::tile_outline(R, proj, e.matrix), "#335577", 0.8, true,
                 e.word.size() % 2 ? "#dde6f0" : "#f7f9fc");
  } else {
    visit_tiles(
        R, R.center, radius,
        [&](const TileNode& n) {
          c.polyline(svg::tile_outline(R, proj, n.g), "#335577", 0.8, true, n.depth % 2 ? "#dde6f0" : "#f7f9fc");
          return true;
        },
        false, node_budget);
  }
  c.polyline(svg::tile_outline(R, proj, Mat3::Identity()), "black", 2, true);
  return c.str();
}

inline std::string render_billiard(const BilliardConfig& cfg, const BilliardReport& rep) {
  const auto& R = cfg.chamber;
  if (R.dimension != 2) throw Error("render: billiard pictures need a two-dimensional chamber");
  double reach = 0;
  for (const auto& t : rep.trajectories) reach = std::max(reach, t.length);
  const svg::Projection proj(R.model, svg::flat_extent(R, reach + 1));
  svg::Canvas c(proj.width(), proj.height());
  proj.frame(c);
  c.polyline(svg::tile_outline(R, proj, Mat3::Identity()), "black", 2, true, "#e8eef8");
  for (const auto& t : rep.trajectories) {
    std::vector<svg::P2> pts;
    if (t.length > 0) {
      const Vec3& u = t.tangent;
      const int n = 8 + static_cast<int>(t.length * 16);
      for (int i = 0; i <= n; ++i) pts.push_back(proj(geodesic_point(R.model, t.start, u, t.length * i / n)));
    }
    c.polyline(pts, "#aa3322", 0.7);
    if (t.length > 0) c.circle(proj(t.end), 1.5, "#aa3322", "#aa3322");
  }
  c.circle(proj(cfg.p), 3, "black", "black");
  return c.str();
}

}  // namespace polaris
