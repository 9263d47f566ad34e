// Integer lattices and torus subgroups against brute-force oracles.
#include <gtest/gtest.h>

#include <cstdlib>
#include <limits>
#include <set>

#include "support.hpp"

using namespace polaris;

namespace {

IntMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  IntMatrix a(rows, IntVector(cols));
  for (auto& r : a)
    for (auto& x : r) x = u(g);
  return a;
}

// [Z^2 : L] for L spanned by two independent rows, counted as the number of
// residues of a D x D box, D = |det|, that lie in L.
Integer brute_index2(const IntMatrix& a) {
  const Integer det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const Integer D = std::llabs(det);
  Integer members = 0;
  for (Integer x = 0; x < D; ++x)
    for (Integer y = 0; y < D; ++y) {
      // (x, y) = s a0 + t a1 with s, t = cofactor / det
      const Integer s = x * a[1][1] - y * a[1][0];
      const Integer t = -x * a[0][1] + y * a[0][0];
      if (s % det == 0 && t % det == 0) ++members;
    }
  return D * D / members;
}

bool is_hnf(const IntMatrix& h) {
  std::size_t last = 0;
  for (std::size_t r = 0; r < h.size(); ++r) {
    std::size_t p = 0;
    while (p < h[r].size() && h[r][p] == 0) ++p;
    if (p == h[r].size() || h[r][p] <= 0) return false;
    if (r > 0 && p <= last) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h[above][p] < 0 || h[above][p] >= h[r][p]) return false;
    last = p;
  }
  return true;
}

}  // namespace

TEST(Lattice, HermiteNormalFormIsCanonicalUnderUnimodularMixing) {
  auto g = support::rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3, rows = 1 + trial % 4;
    const IntMatrix a = random_matrix(g, rows, n, 6);
    const IntMatrix h = hermite_normal_form(a, n);
    ASSERT_TRUE(is_hnf(h));
    // rows mixed by a random unimodular matrix span the same lattice
    const IntMatrix u = random_unimodular(rows, g);
    const IntMatrix b = multiply(u, a, rows, n);
    EXPECT_EQ(hermite_normal_form(b, n), h);
    // every input row has integer coordinates in the HNF basis
    for (const auto& r : a) {
      IntVector c;
      EXPECT_TRUE(integer_coordinates(h, r, c));
      EXPECT_EQ(polaris::apply(transpose(h, n), c), r);
    }
  }
}

TEST(Lattice, IndexMatchesResidueCount) {
  auto g = support::rng(2);
  int checked = 0;
  while (checked < 200) {
    const IntMatrix a = random_matrix(g, 2, 2, 7);
    if (a[0][0] * a[1][1] - a[0][1] * a[1][0] == 0) continue;
    const auto span = lattice_span(a, 2);
    EXPECT_EQ(span.rank, 2u);
    EXPECT_EQ(span.index, brute_index2(a)) << to_string(a[0]) << " " << to_string(a[1]);
    EXPECT_EQ(span.saturation, (IntMatrix{{1, 0}, {0, 1}}));
    ++checked;
  }
}

TEST(Lattice, MultipleOfPrimitiveVectorHasIndexEqualToMultiplier) {
  auto g = support::rng(3);
  std::uniform_int_distribution<int> mult(1, 9);
  int checked = 0;
  while (checked < 200) {
    IntVector w = random_matrix(g, 1, 3, 8)[0];
    if (is_zero(w) || content(w) != 1) continue;
    const Integer c = mult(g);
    IntVector v = w;
    for (auto& x : v) x *= c;
    const auto span = lattice_span({v}, 3);
    EXPECT_EQ(span.index, c);
    ASSERT_EQ(span.saturation.size(), 1u);
    EXPECT_EQ(sign_normalized(span.saturation[0]), sign_normalized(w));
    ++checked;
  }
}

TEST(Lattice, CheckedArithmeticThrowsOnOverflow) {
  const Integer big = std::numeric_limits<Integer>::max();
  EXPECT_THROW(detail::checked_mul(big, 2), Error);
  EXPECT_THROW(detail::checked_add(big, 1), Error);
  EXPECT_EQ(detail::checked_mul(-4, 5), -20);
}

TEST(TorusSubgroup, EqualityIgnoresChoiceOfGenerators) {
  auto g = support::rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix gens = random_matrix(g, 2, 3, 5);
    const TorusSubgroup a(3, gens);
    const IntMatrix u = random_unimodular(2, g);
    const TorusSubgroup b(3, multiply(u, gens, 2, 3));
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.contains(b));
    EXPECT_TRUE(TorusSubgroup::full(3).contains(a));
    EXPECT_TRUE(a.contains(TorusSubgroup::trivial(3)));
  }
}

TEST(TorusSubgroup, ConnectedSubtorusIgnoresNonPrimitiveGenerators) {
  const auto c = TorusSubgroup::circle({2, 4});
  EXPECT_EQ(c.dim(), 1u);
  EXPECT_EQ(c.span_index(), 2);
  EXPECT_FALSE(c.generators_primitive());
  EXPECT_EQ(c, TorusSubgroup::circle({1, 2}));
  EXPECT_FALSE(c.contains(TorusSubgroup::circle({1, 0})));
}

TEST(TorusSubgroup, SignOfCircleGeneratorDoesNotMatter) {
  EXPECT_EQ(TorusSubgroup::circle({-1, 3}), TorusSubgroup::circle({1, -3}));
  EXPECT_THROW(TorusSubgroup(2, {{1, 2, 3}}), Error);
}

TEST(TorusHom, RestrictionMatchesMatrixProduct) {
  auto g = support::rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = random_matrix(g, 2, 3, 4);
    const IntMatrix gens = random_matrix(g, 2, 3, 4);
    const TorusHom phi(3, 2, m);
    const TorusSubgroup sub(3, gens);
    const TorusHom r = restrict_hom(phi, sub);
    ASSERT_EQ(r.source_rank, sub.generators().size());
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < r.source_rank; ++j) {
        Integer s = 0;
        for (std::size_t l = 0; l < 3; ++l) s += m[i][l] * sub.generators()[j][l];
        EXPECT_EQ(r.matrix[i][j], s);
      }
  }
}

TEST(TorusHom, ShapeIsChecked) {
  EXPECT_THROW(TorusHom(2, 1, {{1, 2, 3}}), Error);
  EXPECT_THROW(restrict_hom(TorusHom::zero(2, 1), TorusSubgroup::circle({1, 0, 0})), Error);
}

TEST(Catalog, DefaultCatalogIsConsistent) {
  const auto rep = validate_catalog(default_catalog());
  for (const auto& v : rep.violations) ADD_FAILURE() << v;
  EXPECT_TRUE(rep.valid());
}

TEST(Catalog, WeylOrdersAreCrystallographic) {
  std::set<int> allowed;
  for (int m = 1; m <= 12; ++m)
    if (allowed_weyl_order(m)) allowed.insert(m);
  EXPECT_EQ(allowed, (std::set<int>{2, 3, 4, 6}));
}
