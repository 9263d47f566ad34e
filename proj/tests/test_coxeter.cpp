// Reflection groups of realized chambers.
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "support.hpp"

using namespace polaris;

namespace {

Chamber polygon(const std::vector<int>& orders) {
  Chamber c;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    c.sides.push_back({"s" + std::to_string(i), std::nullopt});
    c.corners.push_back({"c" + std::to_string(i), orders[i]});
  }
  return c;
}

Mat3 model_form(Model m) {
  Mat3 j = Mat3::Identity();
  if (m == Model::hyperbolic) j(2, 2) = -1;
  return j;
}

Mat3 power(const Mat3& a, int n) {
  Mat3 r = Mat3::Identity();
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

}  // namespace

TEST(Coxeter, SphericalTriangleGroupOrders) {
  // |W| = 4 / (1/a + 1/b + 1/c - 1)
  const std::vector<std::vector<int>> triples{{2, 3, 3}, {2, 3, 4}, {3, 2, 4}, {2, 2, 2}, {2, 2, 3},
                                              {2, 2, 4}, {2, 2, 6}, {2, 6, 2}, {4, 3, 2}};
  for (const auto& t : triples) {
    const double excess = 1.0 / t[0] + 1.0 / t[1] + 1.0 / t[2] - 1;
    const auto expected = static_cast<std::size_t>(std::lround(4 / excess));
    const auto dev = develop(realize_chamber(polygon(t)));
    EXPECT_EQ(dev.status, DevelopmentStatus::closed_finite);
    EXPECT_EQ(dev.order(), expected) << t[0] << "," << t[1] << "," << t[2];
    EXPECT_NEAR(static_cast<double>(dev.order()) * dev.chamber.area, 4 * kPi, 1e-9);
  }
}

TEST(Coxeter, DihedralBiangle) {
  for (int m : {2, 3, 4, 6}) {
    const auto dev = develop(realize_chamber(polygon({m, m})));
    EXPECT_EQ(dev.status, DevelopmentStatus::closed_finite);
    EXPECT_EQ(dev.order(), static_cast<std::size_t>(2 * m));
  }
}

TEST(Coxeter, FigureOneHasOrder48) {
  const auto d = figure1();
  const auto dev = develop(d);
  EXPECT_EQ(dev.order(), 48u);
  EXPECT_NEAR(48 * kPi / 12, 4 * kPi, 1e-12);
  EXPECT_NEAR(static_cast<double>(dev.order()) * dev.chamber.area, 4 * kPi, 1e-9);
  const auto pc = pi_consistency(d, dev);
  EXPECT_TRUE(pc.consistent);
  ASSERT_TRUE(pc.coxeter_order);
  EXPECT_EQ(*pc.coxeter_order, 48u);
}

TEST(Coxeter, ElementsAreDistinctAndWordsEvaluate) {
  const auto dev = develop(figure1());
  for (std::size_t i = 0; i < dev.elements.size(); ++i) {
    const auto& e = dev.elements[i];
    EXPECT_LT((word_matrix(dev.chamber, e.word) - e.matrix).norm(), 1e-9);
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT((dev.elements[j].matrix - e.matrix).norm(), 1e-6);
    if (i > 0) { EXPECT_TRUE(shortlex_less(dev.elements[i - 1].word, e.word)); }
  }
}

TEST(Coxeter, ReflectionsSatisfyTheCoxeterRelations) {
  for (const auto& [name, d] : corpus()) {
    if (d.chamber.dimension != 2) continue;
    const auto R = realize_chamber(d.chamber);
    const auto M = coxeter_matrix(d);
    EXPECT_TRUE(M.symmetric());
    const Mat3 J = model_form(R.model);
    for (std::size_t i = 0; i < R.k(); ++i) {
      const Mat3& r = R.reflections[i];
      EXPECT_LT((r * r - Mat3::Identity()).norm(), 1e-9) << name;
      if (R.model == Model::euclidean) {
        const Eigen::Matrix2d l = r.topLeftCorner<2, 2>();
        EXPECT_LT((l.transpose() * l - Eigen::Matrix2d::Identity()).norm(), 1e-9) << name;
        EXPECT_LT((r.row(2) - Eigen::RowVector3d(0, 0, 1)).norm(), 1e-12) << name;
      } else {
        EXPECT_LT((r.transpose() * J * r - J).norm(), 1e-9) << name;
      }
      // the wall is fixed pointwise
      EXPECT_LT((r * R.vertices[i] - R.vertices[i]).norm(), 1e-9) << name;
      for (std::size_t j = 0; j < R.k(); ++j) {
        if (i == j || M.m[i][j] == 0) continue;
        const Mat3 rr = R.reflections[i] * R.reflections[j];
        EXPECT_LT((power(rr, M.m[i][j]) - Mat3::Identity()).norm(), 1e-8) << name << " " << i << "," << j;
        for (int e = 1; e < M.m[i][j]; ++e) EXPECT_GT((power(rr, e) - Mat3::Identity()).norm(), 1e-6);
      }
    }
  }
}

TEST(Coxeter, RealizedAnglesMatchOrders) {
  for (const auto& [name, d] : corpus()) {
    if (d.chamber.dimension != 2) continue;
    const auto R = realize_chamber(d.chamber);
    const std::size_t k = R.k();
    for (std::size_t i = 0; i < k; ++i) {
      const Vec3 x = R.vertices[i];
      const Vec3 a = direction_to(R.model, x, R.vertices[(i + 1) % k]);
      const Vec3 b = direction_to(R.model, x, R.vertices[(i + k - 1) % k]);
      const Mat3 J = model_form(R.model);
      const double c = (a.transpose() * J * b)(0, 0);
      EXPECT_NEAR(std::acos(std::clamp(c, -1.0, 1.0)), kPi / d.chamber.corners[i].order, 1e-9) << name << " c" << i;
    }
  }
}

TEST(Coxeter, InfiniteGroupsAreCertified) {
  for (const auto& d : {figure2(), figure3(), figure4(), hexagon()}) {
    const auto dev = develop(d, 2000);
    EXPECT_NE(dev.status, DevelopmentStatus::closed_finite);
  }
  EXPECT_EQ(develop(hexagon(), 2000).status, DevelopmentStatus::infinite_certified);
}

TEST(Coxeter, TileTreeCoversTheSquareLattice) {
  const auto R = realize_chamber(figure4().chamber);
  auto g = support::rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = support::random_interior(R, g);
    const double radius = 2.0 + trial % 5;
    std::map<std::pair<int, int>, int> seen;
    visit_tiles(R, p, radius, [&](const TileNode& n) {
      EXPECT_LT((word_matrix(R, n.word) - n.g).norm(), 1e-9);
      EXPECT_EQ(static_cast<std::size_t>(n.depth), n.word.size());
      const Vec3 c = n.g * R.center;
      const std::pair<int, int> cell{static_cast<int>(std::floor(c[0])), static_cast<int>(std::floor(c[1]))};
      EXPECT_EQ(seen.count(cell), 0u) << "tile visited twice";
      seen[cell] = n.depth;
      // length in the lattice Coxeter group is the number of grid lines crossed
      EXPECT_EQ(n.depth, std::abs(cell.first) + std::abs(cell.second));
      return true;
    });
    const int reach = static_cast<int>(radius) + 2;
    for (int a = -reach; a <= reach; ++a)
      for (int b = -reach; b <= reach; ++b) {
        const double dx = std::max({0.0, a - p[0], p[0] - (a + 1)});
        const double dy = std::max({0.0, b - p[1], p[1] - (b + 1)});
        if (std::hypot(dx, dy) <= radius) { EXPECT_EQ(seen.count({a, b}), 1u) << a << "," << b << " r=" << radius; }
      }
  }
}

TEST(Coxeter, HyperbolicTileTreeVisitsDistinctTiles) {
  const auto R = realize_chamber(hexagon().chamber);
  std::vector<Vec3> centres;
  std::size_t beyond = 0;
  const double radius = 3.0;
  visit_tiles(R, R.center, radius, [&](const TileNode& n) {
    const Vec3 c = n.g * R.center;
    for (const auto& x : centres) EXPECT_GT(distance(R.model, x, c), 1e-6);
    centres.push_back(c);
    EXPECT_LT((word_matrix(R, n.word) - n.g).norm(), 1e-6 * std::max(1.0, n.g.norm()));
    double circumradius = 0;
    for (const auto& v : R.vertices) circumradius = std::max(circumradius, distance(R.model, R.center, v));
    if (distance(R.model, R.center, c) > radius + 2 * circumradius) ++beyond;
    return true;
  });
  EXPECT_EQ(beyond, 0u);
  // a tile whose centre is within the radius minus its size must have been visited
  const auto dev = develop(R, 3000);
  double circumradius = 0;
  for (const auto& v : R.vertices) circumradius = std::max(circumradius, distance(R.model, R.center, v));
  for (const auto& e : dev.elements) {
    const Vec3 c = e.matrix * R.center;
    if (distance(R.model, R.center, c) + circumradius > radius) continue;
    bool found = false;
    for (const auto& x : centres) found = found || distance(R.model, x, c) < 1e-6;
    EXPECT_TRUE(found) << word_string(e.word);
  }
}

TEST(Coxeter, SectionInvariantsOfTheHexagon) {
  const auto s = section_invariants(hexagon());
  EXPECT_EQ(s.kappa, -1);
  EXPECT_EQ(s.chi.numerator(), -2);
  ASSERT_TRUE(s.genus);
  EXPECT_EQ(*s.genus, 2);
}

TEST(Coxeter, PiOrderMustDivideFiniteGroupOrder) {
  auto d = figure1();
  d.pi->order = 36;
  EXPECT_FALSE(pi_consistency(d, develop(d)).consistent);
  d.pi->order = 96;
  EXPECT_FALSE(pi_consistency(d, develop(d)).consistent);
  d.pi->order = 48;
  EXPECT_FALSE(pi_consistency(d, develop(d)).consistent);  // chi = 2 but declared non-orientable
  d.pi->orientable = true;
  EXPECT_TRUE(pi_consistency(d, develop(d)).consistent);
}
