// Weight sequences of T^n actions on simply connected (n+2)-manifolds with a
// 2-disk orbit space, and the diffeomorphism type when n = 2.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "polaris/polar_data.hpp"

namespace polaris {

struct WeightSequence {
  std::size_t n = 2;
  IntMatrix v;
  bool normalized = false;

  std::size_t k() const { return v.size(); }
  bool operator==(const WeightSequence& o) const { return n == o.n && v == o.v; }
};

inline WeightSequence make_sequence(const IntMatrix& vectors) {
  if (vectors.empty()) throw Error("weight sequence is empty");
  WeightSequence s;
  s.n = vectors[0].size();
  s.v = vectors;
  return s;
}

struct SequenceReport {
  std::vector<std::string> problems;
  bool valid() const { return problems.empty(); }
};

inline Integer cyclic_det_product(const WeightSequence& s) {
  Integer prod = 1;
  for (std::size_t i = 0; i < s.k(); ++i) prod *= det2(s.v[i], s.v[(i + 1) % s.k()]);
  return prod;
}

inline SequenceReport validate_sequence(const WeightSequence& s) {
  SequenceReport rep;
  if (s.k() < 2) rep.problems.push_back("need at least two vectors, found " + std::to_string(s.k()));
  if (s.n == 0) rep.problems.push_back("ambient rank must be positive");
  for (std::size_t i = 0; i < s.k(); ++i) {
    if (s.v[i].size() != s.n) {
      rep.problems.push_back("v" + std::to_string(i) + " has length " + std::to_string(s.v[i].size()));
      return rep;
    }
    if (is_zero(s.v[i])) rep.problems.push_back("v" + std::to_string(i) + ": degenerate slope (zero vector)");
    else if (content(s.v[i]) != 1) rep.problems.push_back("v" + std::to_string(i) + " = " + to_string(s.v[i]) + " is not primitive");
  }
  if (!rep.valid() || s.k() < 2) return rep;
  const std::size_t pairs = s.k() == 2 ? 1 : s.k();
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t j = (i + 1) % s.k();
    const auto span = lattice_span({s.v[i], s.v[j]}, s.n);
    if (span.rank != 2 || span.index != 1)
      rep.problems.push_back("v" + std::to_string(i) + ", v" + std::to_string(j) + " span rank " + std::to_string(span.rank) +
                             " with index " + std::to_string(span.index) + ", not a 2-torus factor");
  }
  if (rep.valid() && s.n == 2 && s.k() >= 3) {
    const Integer p = cyclic_det_product(s);
    if (p != 1 && s.k() % 2 == 0)
      rep.problems.push_back("adjacent determinants multiply to -1: the signs cannot be made coherent");
  }
  return rep;
}

namespace detail {

inline IntMatrix dihedral_image(const IntMatrix& v, std::size_t shift, bool reflect) {
  const std::size_t k = v.size();
  IntMatrix out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = reflect ? v[(shift + k - i) % k] : v[(shift + i) % k];
  return out;
}

// Signs chosen so all adjacent determinants agree, then (w0, w1) -> (e1, e2).
inline IntMatrix normalize_rank2(const IntMatrix& w) {
  const std::size_t k = w.size();
  IntMatrix s = w;
  if (k == 2) {
    IntMatrix out{{1, 0}, {0, 1}};
    return out;
  }
  Integer prod = 1;
  for (std::size_t i = 0; i < k; ++i) prod *= det2(w[i], w[(i + 1) % k]);
  const Integer target = prod == 1 ? 1 : -1;
  for (std::size_t i = 0; i + 1 < k; ++i)
    if (det2(s[i], s[i + 1]) != target)
      for (auto& x : s[i + 1]) x = -x;
  if (det2(s[k - 1], s[0]) != target) throw Error("weight sequence is not sign-normalizable");
  // inverse of the matrix with columns s0, s1 (determinant +-1)
  const Integer d = det2(s[0], s[1]);
  const IntMatrix inv{{s[1][1] * d, -s[1][0] * d}, {-s[0][1] * d, s[0][0] * d}};
  IntMatrix out;
  for (const auto& x : s) out.push_back(polaris::apply(inv, x));
  return out;
}

inline bool shortlex_less(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace detail

// Canonical representative of the orbit under GL(n,Z), cyclic relabelling,
// reflection of the polygon and sign changes of individual circles.
inline WeightSequence normalize(const WeightSequence& s) {
  const auto rep = validate_sequence(s);
  if (!rep.valid()) throw Error("normalize: invalid sequence: " + rep.problems.front());
  const std::size_t k = s.k();
  std::optional<IntMatrix> best;
  for (std::size_t shift = 0; shift < k; ++shift)
    for (bool reflect : {false, true}) {
      const IntMatrix w = detail::dihedral_image(s.v, shift, reflect);
      if (s.n == 2) {
        IntMatrix c = detail::normalize_rank2(w);
        if (!best || detail::shortlex_less(c, *best)) best = c;
        continue;
      }
      for (std::size_t mask = 0; mask < (std::size_t(1) << (k - 1)); ++mask) {
        IntMatrix cols = w;
        for (std::size_t i = 1; i < k; ++i)
          if (mask >> (i - 1) & 1)
            for (auto& x : cols[i]) x = -x;
        // rows of the n x k matrix with the sequence as columns
        IntMatrix h = hermite_normal_form(transpose(cols, s.n), k);
        IntMatrix c = transpose(h, k);
        if (!best || detail::shortlex_less(c, *best)) best = c;
      }
    }
  WeightSequence out;
  out.n = s.n;
  out.v = *best;
  out.normalized = s.n == 2;
  return out;
}

inline bool det_normalized(const WeightSequence& s) {
  if (s.n != 2 || s.k() < 3) return false;
  for (std::size_t i = 0; i < s.k(); ++i)
    if (det2(s.v[i], s.v[(i + 1) % s.k()]) != 1) return false;
  return true;
}

// v_{i-1} + v_{i+1} = -e_i v_i
inline std::vector<Integer> self_intersections(const WeightSequence& s) {
  if (!det_normalized(s)) throw Error("self_intersections: sequence is not in normalized state (all adjacent determinants +1)");
  const std::size_t k = s.k();
  std::vector<Integer> e(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = s.v[(i + k - 1) % k];
    const auto& b = s.v[(i + 1) % k];
    const auto& v = s.v[i];
    const IntVector sum{a[0] + b[0], a[1] + b[1]};
    const std::size_t c = v[0] != 0 ? 0 : 1;
    if (sum[c] % v[c] != 0) throw Error("self_intersections: relation has no integer solution");
    e[i] = -sum[c] / v[c];
    if (sum[0] != -e[i] * v[0] || sum[1] != -e[i] * v[1])
      throw Error("self_intersections: v" + std::to_string(i) + " is not parallel to its neighbours' sum");
  }
  return e;
}

struct SymmetricFormData {
  std::size_t rank = 0;
  int signature = 0;
  int positive = 0, negative = 0;
};

// Exact congruence diagonalization over Q.
inline SymmetricFormData symmetric_form_data(const std::vector<std::vector<Integer>>& q) {
  using boost::multiprecision::cpp_rational;
  const std::size_t k = q.size();
  std::vector<std::vector<cpp_rational>> a(k, std::vector<cpp_rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = q[i][j];
  SymmetricFormData out;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i][i] == 0) {
      std::size_t p = k;
      for (std::size_t j = i + 1; j < k; ++j)
        if (a[j][j] != 0) { p = j; break; }
      if (p < k) {
        std::swap(a[i], a[p]);
        for (auto& row : a) std::swap(row[i], row[p]);
      } else {
        for (std::size_t j = i + 1; j < k; ++j)
          if (a[i][j] != 0) { p = j; break; }
        if (p == k) continue;  // row i vanishes on the remaining block
        for (std::size_t c = 0; c < k; ++c) a[i][c] += a[p][c];
        for (std::size_t r = 0; r < k; ++r) a[r][i] += a[r][p];
      }
    }
    for (std::size_t j = i + 1; j < k; ++j) {
      if (a[j][i] == 0) continue;
      const cpp_rational f = a[j][i] / a[i][i];
      for (std::size_t c = 0; c < k; ++c) a[j][c] -= f * a[i][c];
      for (std::size_t r = 0; r < k; ++r) a[r][j] -= f * a[r][i];
    }
    if (a[i][i] > 0) ++out.positive;
    else if (a[i][i] < 0) ++out.negative;
  }
  out.rank = static_cast<std::size_t>(out.positive + out.negative);
  out.signature = out.positive - out.negative;
  return out;
}

struct Classification4 {
  int b2 = 0;
  bool even = true;
  int signature = 0;
  std::string type;
  int m = 0, p = 0, q = 0;  // #m(S2xS2) or #p CP2 #q(-CP2)
};

inline std::string classification_name(int b2, bool even, int sigma) {
  if (b2 == 0) return "S^4";
  if (even) {
    const int m = b2 / 2;
    return m == 1 ? "S^2xS^2" : "#" + std::to_string(m) + "(S^2xS^2)";
  }
  const int p = (b2 + sigma) / 2, q = (b2 - sigma) / 2;
  std::string s;
  auto term = [](int count, const std::string& what) {
    return count == 1 ? what : "#" + std::to_string(count) + " " + what;
  };
  if (p > 0) s += term(p, "CP^2");
  if (q > 0) s += (s.empty() ? "" : " # ") + term(q, "(-CP^2)");
  return s;
}

inline Classification4 classify4(const WeightSequence& input) {
  if (input.n != 2) throw Error("classify4 needs T^2 data");
  const auto rep = validate_sequence(input);
  if (!rep.valid()) throw Error("classify4: invalid sequence: " + rep.problems.front());
  Classification4 c;
  const std::size_t k = input.k();
  c.b2 = static_cast<int>(k) - 2;
  if (k == 2) {
    c.type = "S^4";
    return c;
  }
  const WeightSequence s = det_normalized(input) ? input : normalize(input);
  const auto e = self_intersections(s);
  std::vector<std::vector<Integer>> q(k, std::vector<Integer>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    q[i][i] = e[i];
    q[i][(i + 1) % k] = 1;
    q[(i + 1) % k][i] = 1;
  }
  const auto form = symmetric_form_data(q);
  if (form.rank != k - 2)
    throw Error("classify4: intersection matrix has rank " + std::to_string(form.rank) + ", expected " + std::to_string(k - 2));
  c.signature = form.signature;
  c.even = std::all_of(e.begin(), e.end(), [](Integer x) { return x % 2 == 0; });
  if ((c.b2 - c.signature) % 2 != 0) throw Error("classify4: signature parity differs from b2");
  if (c.even && c.signature != 0) throw Error("classify4: even form with nonzero signature");
  if (c.even) c.m = c.b2 / 2;
  else {
    c.p = (c.b2 + c.signature) / 2;
    c.q = (c.b2 - c.signature) / 2;
  }
  c.type = classification_name(c.b2, c.even, c.signature);
  return c;
}

// Random equivalent re-marking: unimodular change of basis, dihedral
// relabelling and sign flips of single circles.
template <class Rng>
IntMatrix random_unimodular(std::size_t n, Rng& rng, int steps = 6) {
  IntMatrix a(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) {
      for (auto& x : a[i]) x = -x;
      continue;
    }
    detail::row_axpy(a, i, j, coef(rng));
  }
  return a;
}

template <class Rng>
WeightSequence random_remarking(const WeightSequence& s, Rng& rng) {
  const IntMatrix a = random_unimodular(s.n, rng);
  std::uniform_int_distribution<std::size_t> shift(0, s.k() - 1);
  std::bernoulli_distribution coin(0.5);
  IntMatrix w = detail::dihedral_image(s.v, shift(rng), coin(rng));
  for (auto& x : w) {
    x = polaris::apply(a, x);
    if (coin(rng))
      for (auto& y : x) y = -y;
  }
  WeightSequence out;
  out.n = s.n;
  out.v = w;
  return out;
}

inline PolarData polar_data_from_sequence(const WeightSequence& s) {
  const auto rep = validate_sequence(s);
  if (!rep.valid()) throw Error("invalid weight sequence: " + rep.problems.front());
  PolarData d;
  const std::size_t k = s.k();
  d.chamber.dimension = 2;
  d.graph.principal = TorusSubgroup::trivial(s.n);
  for (std::size_t i = 0; i < k; ++i) {
    const std::string sid = "s" + std::to_string(i), cid = "c" + std::to_string(i);
    d.chamber.sides.push_back({sid, std::nullopt});
    d.chamber.corners.push_back({cid, 2});
    d.graph.faces.emplace(sid, TorusSubgroup::circle(s.v[i]));
    const auto span = lattice_span({s.v[(i + k - 1) % k], s.v[i]}, s.n);
    d.graph.corners.emplace(cid, TorusSubgroup(s.n, span.saturation));
  }
  return d;
}

// All det-normalized T^2 sequences of length k with v0 = e1, v1 = e2 and
// |e_i| <= bound for the interior relations, up to equivalence.
inline std::vector<WeightSequence> enumerate_sequences(std::size_t k, int bound) {
  std::vector<WeightSequence> out;
  if (k < 3) return out;
  std::vector<IntMatrix> seen;
  std::vector<int> e(k - 2, -bound);
  while (true) {
    IntMatrix v{{1, 0}, {0, 1}};
    for (std::size_t i = 1; i + 1 < k; ++i) {
      const auto& a = v[i - 1];
      const auto& b = v[i];
      v.push_back({-a[0] - e[i - 1] * b[0], -a[1] - e[i - 1] * b[1]});
    }
    WeightSequence s;
    s.n = 2;
    s.v = v;
    if (det_normalized(s)) {
      const auto c = normalize(s);
      if (std::find(seen.begin(), seen.end(), c.v) == seen.end()) {
        seen.push_back(c.v);
        out.push_back(c);
      }
    }
    std::size_t i = 0;
    while (i < e.size() && ++e[i] > bound) e[i++] = -bound;
    if (i == e.size()) break;
  }
  return out;
}

}  // namespace polaris
