// Billiard trajectories against independent oracles.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace polaris;

namespace {

struct Expected {
  double length;
  Word word;
};

bool expected_less(const Expected& a, const Expected& b) {
  if (std::abs(a.length - b.length) > 1e-9) return a.length < b.length;
  return a.word < b.word;
}

// Unit square with sides y=0, x=1, y=1, x=0: the images of q are
// (2a +- qx, 2b +- qy), and the bounce word lists the grid lines crossed,
// x = even -> 3, x = odd -> 1, y = even -> 0, y = odd -> 2.
std::vector<Expected> square_oracle(double px, double py, double qx, double qy, double L) {
  std::vector<Expected> out;
  const int n = static_cast<int>(L) + 3;
  for (int a = -n; a <= n; ++a)
    for (int b = -n; b <= n; ++b)
      for (int sx : {1, -1})
        for (int sy : {1, -1}) {
          const double X = 2 * a + sx * qx, Y = 2 * b + sy * qy;
          const double len = std::hypot(X - px, Y - py);
          if (len > L) continue;
          std::vector<std::pair<double, int>> hits;
          for (int m = static_cast<int>(std::floor(std::min(px, X))); m <= static_cast<int>(std::ceil(std::max(px, X))); ++m)
            if ((m - px) * (m - X) < 0) hits.emplace_back((m - px) / (X - px), (m % 2 == 0) ? 3 : 1);
          for (int m = static_cast<int>(std::floor(std::min(py, Y))); m <= static_cast<int>(std::ceil(std::max(py, Y))); ++m)
            if ((m - py) * (m - Y) < 0) hits.emplace_back((m - py) / (Y - py), (m % 2 == 0) ? 0 : 2);
          std::sort(hits.begin(), hits.end());
          Expected e{len, {}};
          for (const auto& h : hits) e.word.push_back(h.second);
          out.push_back(e);
        }
  std::sort(out.begin(), out.end(), expected_less);
  return out;
}

// Straight-line simulation on [0, l].
std::vector<Expected> interval_oracle(double l, double p, double q, double L) {
  std::vector<Expected> out;
  if (std::abs(p - q) < 1e-15) out.push_back({0, {}});
  for (int dir : {1, -1}) {
    double pos = p, travelled = 0;
    int d = dir;
    Word word;
    bool at_start = true;
    while (true) {
      const bool ahead = at_start ? d * (q - pos) > 0 : true;
      if (ahead && travelled + std::abs(q - pos) <= L) out.push_back({travelled + std::abs(q - pos), word});
      const double wall = d > 0 ? l : 0;
      travelled += std::abs(wall - pos);
      if (travelled > L) break;
      word.push_back(d > 0 ? 1 : 0);
      pos = wall;
      d = -d;
      at_start = false;
    }
  }
  std::sort(out.begin(), out.end(), expected_less);
  return out;
}

std::vector<Expected> as_expected(const std::vector<BilliardTrajectory>& ts) {
  std::vector<Expected> out;
  for (const auto& t : ts) out.push_back({t.length, t.word});
  std::sort(out.begin(), out.end(), expected_less);
  return out;
}

void expect_same(const std::vector<Expected>& got, const std::vector<Expected>& want, double tol, const std::string& what) {
  ASSERT_EQ(got.size(), want.size()) << what;
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i].length, want[i].length, tol) << what << " #" << i;
    EXPECT_EQ(got[i].word, want[i].word) << what << " #" << i << " length " << want[i].length;
  }
}

BilliardConfig config(const PolarData& d, const Vec3& p, const Vec3& q, double L, std::vector<int> codims = {}) {
  BilliardConfig c;
  c.chamber = realize_chamber(d.chamber);
  c.p = p;
  c.q = q;
  c.lmax = L;
  c.codims = codims.empty() ? std::vector<int>(c.chamber.k(), 2) : codims;
  return c;
}

Word reversed_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

TEST(Billiard, SquareWorkedExample) {
  const auto d = figure4();
  const auto c = config(d, chart_point(Model::euclidean, 0.45, 0.55), chart_point(Model::euclidean, 0.45, 0.55), 1.15);
  const auto rep = unfold_enumerate(c);
  const std::vector<Expected> want{{0, {}}, {0.9, {2}}, {0.9, {3}}, {1.1, {0}}, {1.1, {1}}};
  expect_same(as_expected(rep.trajectories), want, 1e-12, "square example");
  for (const auto& t : rep.trajectories) EXPECT_EQ(t.index, static_cast<int>(t.word.size()));
}

TEST(Billiard, SquareMatchesClosedFormUnfolding) {
  const auto d = figure4();
  auto g = support::rng(51);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 25; ++trial) {
    const double px = u(g), py = u(g), qx = u(g), qy = u(g);
    const double L = 3 + trial % 6;
    const auto c = config(d, chart_point(Model::euclidean, px, py), chart_point(Model::euclidean, qx, qy), L);
    const auto rep = unfold_enumerate(c);
    EXPECT_EQ(rep.rejected, 0u);
    expect_same(as_expected(rep.trajectories), square_oracle(px, py, qx, qy, L), 1e-9, "trial " + std::to_string(trial));
  }
}

TEST(Billiard, SquareCensusMatchesClosedForm) {
  const auto d = figure4();
  const auto c = config(d, chart_point(Model::euclidean, 0.31, 0.62), chart_point(Model::euclidean, 0.77, 0.18), 0);
  std::vector<double> radii;
  for (int L = 5; L <= 30; L += 5) radii.push_back(L);
  const auto cs = census(c, radii);
  const auto all = square_oracle(0.31, 0.62, 0.77, 0.18, 30);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto n = std::count_if(all.begin(), all.end(), [&](const Expected& e) { return e.length <= radii[i]; });
    EXPECT_EQ(cs.counts[i], static_cast<std::size_t>(n)) << "L = " << radii[i];
  }
  // one image of q per unit area, so N(L) ~ pi L^2
  EXPECT_NEAR(static_cast<double>(cs.counts.back()) / (kPi * 30 * 30), 1.0, 0.02);
}

TEST(Billiard, IntervalMatchesSimulation) {
  auto g = support::rng(52);
  for (const auto& d : {interval_sphere(), cp1_interval()}) {
    const auto R = realize_chamber(d.chamber);
    std::uniform_real_distribution<double> u(0.01 * R.interval_length, 0.99 * R.interval_length);
    for (int trial = 0; trial < 30; ++trial) {
      const double p = u(g), q = trial % 7 == 0 ? p : u(g);
      const double L = 2 + trial;
      const auto c = config(d, Vec3(p, 0, 0), Vec3(q, 0, 0), L, {3, 3});
      const auto rep = unfold_enumerate(c);
      expect_same(as_expected(rep.trajectories), interval_oracle(R.interval_length, p, q, L), 1e-9,
                  "trial " + std::to_string(trial));
    }
  }
}

TEST(Billiard, IntervalIsLacunaryWithCodimensionThree) {
  const auto d = interval_sphere();
  const auto c = config(d, Vec3(0.4, 0, 0), Vec3(1.9, 0, 0), 40, {3, 3});
  const auto rep = unfold_enumerate(c);
  const auto s = morse_series(rep.trajectories, c);
  EXPECT_TRUE(s.lacunary);
  EXPECT_EQ(s.gap, 2);
  for (const auto& t : rep.trajectories) EXPECT_EQ(t.index, 2 * static_cast<int>(t.word.size()));
  // the direct segment, then two trajectories of each index 2, 4, ... below the cutoff
  const int top = s.histogram.rbegin()->first;
  EXPECT_EQ(s.histogram.at(0), 1u);
  for (const auto& [index, count] : s.histogram)
    if (index > 0 && index < top - 2) { EXPECT_EQ(count, 2u) << "index " << index; }
}

TEST(Billiard, SquareLacunaryOnlyWithEvenGaps) {
  const auto d = figure4();
  const Vec3 p = chart_point(Model::euclidean, 0.3, 0.4), q = chart_point(Model::euclidean, 0.6, 0.7);
  const auto c3 = config(d, p, q, 6, {3, 3, 3, 3});
  const auto s3 = morse_series(unfold_enumerate(c3).trajectories, c3);
  EXPECT_TRUE(s3.lacunary);
  const auto cm = config(d, p, q, 6, {2, 3, 2, 3});
  const auto rep = unfold_enumerate(cm);
  const auto sm = morse_series(rep.trajectories, cm);
  EXPECT_FALSE(sm.lacunary);
  for (const auto& t : rep.trajectories) {
    int expect = 0;
    for (int w : t.word) expect += (w % 2 == 0) ? 1 : 2;
    EXPECT_EQ(t.index, expect);
  }
}

TEST(Billiard, SphereIndexCountsConjugatePoints) {
  const auto d = figure1();
  const auto R = realize_chamber(d.chamber);
  auto c = config(d, support::interior(R, {2.3, 1.4, 1}), support::interior(R, {1, 0.7, 2.9}), 9, {3, 3, 3});
  c.nu = 2;
  const auto rep = unfold_enumerate(c);
  ASSERT_FALSE(rep.trajectories.empty());
  bool beyond_pi = false;
  for (const auto& t : rep.trajectories) {
    const int laps = static_cast<int>(std::ceil(t.length / kPi)) - 1;
    EXPECT_EQ(t.index, 2 * static_cast<int>(t.word.size()) + 2 * laps);
    beyond_pi = beyond_pi || laps > 0;
  }
  EXPECT_TRUE(beyond_pi);
  EXPECT_TRUE(morse_series(rep.trajectories, c).lacunary);
}

TEST(Billiard, EnumeratorMatchesShootingOracle) {
  struct Case {
    PolarData d;
    double L;
  };
  const std::vector<Case> cases{{figure4(), 5}, {figure1(), 7}, {figure3(), 4}, {hexagon(), 4}};
  auto g = support::rng(53);
  for (const auto& cs : cases) {
    const auto R = realize_chamber(cs.d.chamber);
    for (int trial = 0; trial < 3; ++trial) {
      const auto c = config(cs.d, support::random_interior(R, g), support::random_interior(R, g), cs.L);
      const auto rep = unfold_enumerate(c);
      ShootingStats stats;
      const auto shot = shooting_oracle(c, {}, &stats);
      EXPECT_EQ(stats.unresolved, 0u);
      expect_same(as_expected(rep.trajectories), as_expected(shot), 1e-6,
                  model_name(R.model) + " trial " + std::to_string(trial));
    }
  }
}

TEST(Billiard, PinchedFanNeedsACornerBetweenCloseEnds) {
  const auto R = realize_chamber(figure4().chamber);
  // two chords from the centre ending near the corner (1,0), one on each wall
  const double len = std::sqrt(0.5) * (1 - 1e-7);
  oracle::Chord a{chart_point(Model::euclidean, 0.5, 0.5), Vec3(0.5 + 1e-7, -0.5, 0).normalized(), len, 0, Vec3::Zero()};
  oracle::Chord b{a.x, Vec3(0.5, -0.5 - 1e-7, 0).normalized(), len, 1, Vec3::Zero()};
  EXPECT_TRUE(oracle::pinched(R, a, b));
  b.u = Vec3(0, -1, 0);
  b.length = 0.5;
  EXPECT_FALSE(oracle::pinched(R, a, b));
}

TEST(Billiard, ReversingEndpointsReversesWords) {
  auto g = support::rng(54);
  for (const auto& d : {figure4(), hexagon(), figure3()}) {
    const auto R = realize_chamber(d.chamber);
    const Vec3 p = support::random_interior(R, g), q = support::random_interior(R, g);
    const double L = R.kappa == 0 ? 6 : 4.5;
    const auto fwd = as_expected(unfold_enumerate(config(d, p, q, L)).trajectories);
    auto back = as_expected(unfold_enumerate(config(d, q, p, L)).trajectories);
    for (auto& e : back) e.word = reversed_word(e.word);
    std::sort(back.begin(), back.end(), expected_less);
    expect_same(fwd, back, 1e-9, model_name(R.model));
  }
}

TEST(Billiard, HyperbolicCensusIsMonotoneAndMatchesEnumeration) {
  const auto d = hexagon();
  const auto R = realize_chamber(d.chamber);
  const auto c = config(d, support::interior(R, {2.3, 1.4, 1, 1, 1, 1}), support::interior(R, {1, 0.7, 1, 1, 1, 2.9}), 5);
  const std::vector<double> radii{1, 2, 3, 4, 5};
  const auto cs = census(c, radii);
  const auto rep = unfold_enumerate(c);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0) { EXPECT_GE(cs.counts[i], cs.counts[i - 1]); }
    const auto n = std::count_if(rep.trajectories.begin(), rep.trajectories.end(),
                                 [&](const BilliardTrajectory& t) { return t.length <= radii[i]; });
    EXPECT_EQ(cs.counts[i], static_cast<std::size_t>(n)) << "L = " << radii[i];
  }
  EXPECT_DOUBLE_EQ(cs.reached, 5);
}

TEST(Billiard, BudgetedCensusIsExactUpToReached) {
  const auto d = hexagon();
  const auto R = realize_chamber(d.chamber);
  auto c = config(d, support::interior(R, {2.3, 1.4, 1, 1, 1, 1}), support::interior(R, {1, 0.7, 1, 1, 1, 2.9}), 0);
  std::vector<double> radii;
  for (int L = 3; L <= 12; ++L) radii.push_back(L);
  const auto full = census(c, {3, 4, 5, 6, 7});
  c.node_budget = 20000;
  const auto part = census(c, radii);
  EXPECT_TRUE(part.budget_hit);
  EXPECT_GE(part.reached, 3);
  EXPECT_LT(part.reached, 12);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= part.reached && radii[i] <= 7) { EXPECT_EQ(part.counts[i], full.counts[i]) << radii[i]; }
    if (radii[i] > part.reached) { EXPECT_EQ(part.counts[i], 0u); }
  }
}

TEST(Billiard, PathThroughCornerIsRejected) {
  const auto d = figure4();
  const Vec3 p = chart_point(Model::euclidean, 0.25, 0.25);
  const auto rep = unfold_enumerate(config(d, p, p, 1));
  EXPECT_GE(rep.rejected, 1u);
  for (const auto& t : rep.trajectories) EXPECT_GT(std::abs(t.length - std::sqrt(0.5)), 1e-6);
  EXPECT_FALSE(rep.notes.empty());
}

TEST(Billiard, GenericityIsEnforced) {
  const auto d = figure4();
  EXPECT_THROW(unfold_enumerate(config(d, chart_point(Model::euclidean, 0.5, 1e-8), chart_point(Model::euclidean, 0.5, 0.5), 2)), Error);
  EXPECT_THROW(unfold_enumerate(config(d, chart_point(Model::euclidean, 1.5, 0.5), chart_point(Model::euclidean, 0.5, 0.5), 2)), Error);
  auto c = config(d, chart_point(Model::euclidean, 0.5, 0.5), chart_point(Model::euclidean, 0.4, 0.5), 2);
  c.codims = {2, 2, 1, 2};
  EXPECT_THROW(unfold_enumerate(c), Error);
  c.codims = {2, 2, 2};
  EXPECT_THROW(unfold_enumerate(c), Error);
}

TEST(Billiard, GrowthClassifierSeparatesPolynomialFromExponential) {
  std::vector<std::pair<double, double>> poly, expo;
  for (int L = 10; L <= 60; L += 5) poly.emplace_back(L, 3.1 * L * L + L);
  for (int L = 8; L <= 25; ++L) expo.emplace_back(L, 0.4 * std::exp(1.0 * L));
  const auto gp = growth_classify(poly);
  EXPECT_TRUE(gp.polynomial);
  EXPECT_NEAR(gp.degree, 2, 0.1);
  const auto ge = growth_classify(expo);
  EXPECT_FALSE(ge.polynomial);
  EXPECT_NEAR(ge.rate, 1, 1e-6);
  EXPECT_THROW(growth_classify({{1, 1}, {2, 2}}), Error);
}
