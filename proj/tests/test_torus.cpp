// T^2 weight sequences and the 4-manifold classification.
#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "support.hpp"

using namespace polaris;

namespace {

struct FormOracle {
  int b2 = 0, signature = 0;
  bool even = true;
};

// Flip circle signs so every adjacent determinant is +1, read the
// self-intersections off v_{i-1} + v_{i+1} = -e_i v_i, and take the inertia
// of the cyclic intersection matrix from its eigenvalues.
FormOracle form_oracle(IntMatrix v) {
  const std::size_t k = v.size();
  Integer product = 1;
  for (std::size_t i = 0; i < k; ++i) product *= det2(v[i], v[(i + 1) % k]);
  const Integer s = product == 1 ? 1 : -1;
  if ((k % 2 == 0) && product != 1) throw Error("oracle: no consistent orientation");
  for (std::size_t i = 1; i < k; ++i)
    if (det2(v[i - 1], v[i]) != s)
      for (auto& x : v[i]) x = -x;
  if (s == -1)
    for (auto& x : v) std::swap(x[0], x[1]);
  for (std::size_t i = 0; i < k; ++i)
    if (det2(v[i], v[(i + 1) % k]) != 1) throw Error("oracle: normalization failed");
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  FormOracle out;
  out.b2 = static_cast<int>(k) - 2;
  for (std::size_t i = 0; i < k; ++i) {
    const Integer e = -det2(v[(i + k - 1) % k], v[(i + 1) % k]);
    const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>((i + 1) % k);
    q(I, I) = static_cast<double>(e);
    q(I, J) = q(J, I) = 1;
    if (e % 2 != 0) out.even = false;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  int zero = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()[i];
    if (std::abs(x) < 1e-9) ++zero;
    else out.signature += x > 0 ? 1 : -1;
  }
  if (zero != 2) throw Error("oracle: kernel of dimension " + std::to_string(zero));
  return out;
}

void expect_matches_oracle(const WeightSequence& s, const std::string& what) {
  const auto c = classify4(s);
  const auto o = form_oracle(s.v);
  EXPECT_EQ(c.b2, o.b2) << what;
  EXPECT_EQ(c.even, o.even) << what;
  EXPECT_EQ(std::abs(c.signature), std::abs(o.signature)) << what;
  EXPECT_EQ(c.type, classification_name(c.b2, c.even, c.signature)) << what;
}

std::string describe_seq(const IntMatrix& v) {
  std::string s;
  for (const auto& x : v) s += to_string(x) + " ";
  return s;
}

}  // namespace

TEST(Torus, HirzebruchFamily) {
  for (long long k = -4; k <= 4; ++k) {
    const auto s = make_sequence(figure4_vectors(k));
    const auto c = classify4(s);
    EXPECT_EQ(c.b2, 2);
    EXPECT_EQ(c.signature, 0);
    EXPECT_EQ(c.type, k % 2 == 0 ? "S^2xS^2" : "CP^2 # (-CP^2)") << k;
    expect_matches_oracle(s, "k = " + std::to_string(k));
  }
}

TEST(Torus, ProjectivePlane) {
  const auto c = classify4(make_sequence(cp2_fan()));
  EXPECT_EQ(c.b2, 1);
  EXPECT_FALSE(c.even);
  EXPECT_EQ(std::abs(c.signature), 1);
  EXPECT_EQ(c.type, c.signature > 0 ? "CP^2" : "(-CP^2)");
  expect_matches_oracle(make_sequence(cp2_fan()), "cp2");
}

TEST(Torus, TwoCirclesGiveTheFourSphere) {
  const auto c = classify4(make_sequence({{1, 0}, {0, 1}}));
  EXPECT_EQ(c.b2, 0);
  EXPECT_EQ(c.type, "S^4");
}

TEST(Torus, ClassificationIsInvariantUnderRemarking) {
  auto g = support::rng(31);
  std::vector<WeightSequence> instances;
  for (long long k = -4; k <= 4; ++k) instances.push_back(make_sequence(figure4_vectors(k)));
  instances.push_back(make_sequence(cp2_fan()));
  for (const auto& s : enumerate_sequences(5, 2)) instances.push_back(s);
  for (const auto& s : instances) {
    const auto c = classify4(s);
    const auto n = normalize(s);
    for (int i = 0; i < 200; ++i) {
      const auto t = random_remarking(s, g);
      ASSERT_TRUE(validate_sequence(t).valid()) << describe_seq(t.v);
      const auto ct = classify4(t);
      EXPECT_EQ(ct.b2, c.b2);
      EXPECT_EQ(ct.even, c.even);
      EXPECT_EQ(ct.signature, c.signature) << describe_seq(s.v) << " vs " << describe_seq(t.v);
      EXPECT_EQ(ct.type, c.type);
      EXPECT_EQ(normalize(t), n) << describe_seq(t.v);
    }
  }
}

TEST(Torus, EnumeratedSequencesMatchTheOracle) {
  for (std::size_t k = 3; k <= 6; ++k) {
    const auto all = enumerate_sequences(k, 3);
    EXPECT_FALSE(all.empty());
    for (const auto& s : all) {
      ASSERT_TRUE(validate_sequence(s).valid());
      expect_matches_oracle(s, describe_seq(s.v));
      EXPECT_TRUE(validate(polar_data_from_sequence(s), Catalog()).valid()) << describe_seq(s.v);
    }
  }
  // length three: only the projective plane
  for (const auto& s : enumerate_sequences(3, 3)) EXPECT_EQ(classify4(s).b2, 1);
}

TEST(Torus, SelfIntersectionsSatisfyTheRelation) {
  for (const auto& s : enumerate_sequences(5, 2)) {
    const auto e = self_intersections(s);
    const std::size_t k = s.k();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < 2; ++c)
        EXPECT_EQ(s.v[(i + k - 1) % k][c] + s.v[(i + 1) % k][c], -e[i] * s.v[i][c]);
  }
}

TEST(Torus, InvalidSequencesAreRejected) {
  EXPECT_FALSE(validate_sequence(make_sequence({{1, 0}, {2, 1}, {1, 2}, {0, 1}})).valid());  // adjacent det 3
  EXPECT_FALSE(validate_sequence(make_sequence({{2, 0}, {0, 1}, {-1, -1}})).valid());        // non-primitive
  EXPECT_THROW(classify4(make_sequence({{2, 0}, {0, 1}, {-1, -1}})), Error);
  EXPECT_THROW(polar_data_from_sequence(make_sequence({{1, 0}, {2, 1}, {1, 2}, {0, 1}})), Error);
}

TEST(Torus, SequenceDataIsValidTorusData) {
  const auto d = polar_data_from_sequence(make_sequence(cp2_fan()));
  EXPECT_TRUE(validate(d, Catalog()).valid());
  EXPECT_EQ(d.chamber.k(), 3u);
  for (const auto& c : d.chamber.corners) EXPECT_EQ(c.order, 2);
  EXPECT_EQ(chamber_geometry(d.chamber).kappa, 1);
}
