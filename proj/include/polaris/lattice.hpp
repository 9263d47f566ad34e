// Exact integer lattice arithmetic: Hermite normal form, saturation and
// small determinant helpers used by the torus-subgroup code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "polaris/error.hpp"

namespace polaris {

using Integer = std::int64_t;
using IntVector = std::vector<Integer>;
// Row-major; each inner vector is one row.
using IntMatrix = std::vector<IntVector>;

namespace detail {

inline Integer checked_mul(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in lattice arithmetic");
  return r;
}

inline Integer checked_add(Integer a, Integer b) {
  Integer r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in lattice arithmetic");
  return r;
}

inline Integer floor_div(Integer a, Integer b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// row[dst] -= q * row[src]
inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, Integer q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m[dst].size(); ++j)
    m[dst][j] = checked_add(m[dst][j], -checked_mul(q, m[src][j]));
}

}  // namespace detail

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](Integer x) { return x == 0; });
}

inline Integer content(const IntVector& v) {
  Integer g = 0;
  for (Integer x : v) g = std::gcd(g, x);
  return g;
}

// True iff gcd of the entries is 1, i.e. t -> exp(2 pi i t v) embeds a circle.
inline bool is_primitive(const IntVector& v) {
  if (is_zero(v)) throw Error("degenerate slope: zero vector");
  return content(v) == 1;
}

// First nonzero entry made positive; S^1_v and S^1_{-v} are the same circle.
inline IntVector sign_normalized(IntVector v) {
  for (Integer x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

inline Integer det2(const IntVector& a, const IntVector& b) {
  return detail::checked_add(detail::checked_mul(a[0], b[1]), -detail::checked_mul(a[1], b[0]));
}

inline std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// Row-style Hermite normal form of the row span: echelon, positive pivots,
// entries above each pivot reduced into [0, pivot). Zero rows are dropped,
// so the result is a canonical basis of the integer span.
inline IntMatrix hermite_normal_form(IntMatrix a, std::size_t n) {
  for (const auto& row : a)
    if (row.size() != n) throw Error("lattice: vector length does not match rank");
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < n && pivot_row < a.size(); ++col) {
    while (true) {
      std::size_t best = a.size();
      for (std::size_t r = pivot_row; r < a.size(); ++r) {
        if (a[r][col] == 0) continue;
        if (best == a.size() || std::llabs(a[r][col]) < std::llabs(a[best][col])) best = r;
      }
      if (best == a.size()) break;
      std::swap(a[pivot_row], a[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < a.size(); ++r) {
        if (a[r][col] == 0) continue;
        detail::row_axpy(a, r, pivot_row, a[r][col] / a[pivot_row][col]);
        if (a[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (pivot_row >= a.size() || a[pivot_row][col] == 0) continue;
    if (a[pivot_row][col] < 0)
      for (auto& x : a[pivot_row]) x = -x;
    for (std::size_t r = 0; r < pivot_row; ++r)
      detail::row_axpy(a, r, pivot_row, detail::floor_div(a[r][col], a[pivot_row][col]));
    ++pivot_row;
  }
  a.resize(pivot_row);
  return a;
}

struct LatticeSpan {
  std::size_t ambient_rank = 0;
  IntMatrix span;        // HNF of the raw integer span
  IntMatrix saturation;  // HNF of (span (x) Q) cap Z^n
  std::size_t rank = 0;
  Integer index = 1;     // [saturation : span]

  bool saturated() const { return index == 1; }
  bool full() const { return rank == ambient_rank && index == 1; }
};

// Column reduction B*Q = [T | 0] with T lower triangular; tracks Q^{-1}.
// The first rank rows of Q^{-1} are a primitive system spanning the
// saturation, and |det T| is the index of the span inside it.
inline LatticeSpan lattice_span(const IntMatrix& vectors, std::size_t n) {
  LatticeSpan out;
  out.ambient_rank = n;
  out.span = hermite_normal_form(vectors, n);
  out.rank = out.span.size();
  if (out.rank == 0) return out;

  IntMatrix b = out.span;
  IntMatrix qinv(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) qinv[i][i] = 1;
  auto col_axpy = [&](std::size_t dst, std::size_t src, Integer q) {
    // col_dst -= q col_src  <=>  row_src(Q^{-1}) += q row_dst(Q^{-1})
    if (q == 0) return;
    for (auto& row : b) row[dst] = detail::checked_add(row[dst], -detail::checked_mul(q, row[src]));
    detail::row_axpy(qinv, src, dst, -q);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : b) std::swap(row[x], row[y]);
    std::swap(qinv[x], qinv[y]);
  };

  Integer det = 1;
  for (std::size_t i = 0; i < out.rank; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t c = i; c < n; ++c) {
        if (b[i][c] == 0) continue;
        if (best == n || std::llabs(b[i][c]) < std::llabs(b[i][best])) best = c;
      }
      if (best == n) throw Error("lattice_span: rank deficiency during column reduction");
      col_swap(i, best);
      bool done = true;
      for (std::size_t c = i + 1; c < n; ++c) {
        if (b[i][c] == 0) continue;
        col_axpy(c, i, b[i][c] / b[i][i]);
        if (b[i][c] != 0) done = false;
      }
      if (done) break;
    }
    det = detail::checked_mul(det, std::llabs(b[i][i]));
  }
  out.index = det;
  IntMatrix basis(qinv.begin(), qinv.begin() + static_cast<std::ptrdiff_t>(out.rank));
  out.saturation = hermite_normal_form(basis, n);
  return out;
}

// v lies in the rational span of the rows of `basis`.
inline bool in_rational_span(const IntMatrix& basis, const IntVector& v, std::size_t n) {
  IntMatrix ext = basis;
  ext.push_back(v);
  return hermite_normal_form(ext, n).size() == hermite_normal_form(basis, n).size();
}

// Solve coeffs * basis = target for integer coeffs (basis rows independent).
// Returns false if no integral solution exists.
inline bool integer_coordinates(const IntMatrix& basis, const IntVector& target, IntVector& coeffs) {
  const std::size_t r = basis.size();
  const std::size_t n = target.size();
  // Augment with an identity block so row operations record the combination.
  IntMatrix aug(r, IntVector(n + r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = basis[i][j];
    aug[i][n + i] = 1;
  }
  // Echelonize the basis part only, keeping the transform.
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < n && pivot_row < r; ++col) {
    while (true) {
      std::size_t best = r;
      for (std::size_t i = pivot_row; i < r; ++i) {
        if (aug[i][col] == 0) continue;
        if (best == r || std::llabs(aug[i][col]) < std::llabs(aug[best][col])) best = i;
      }
      if (best == r) break;
      std::swap(aug[pivot_row], aug[best]);
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < r; ++i) {
        if (aug[i][col] == 0) continue;
        detail::row_axpy(aug, i, pivot_row, aug[i][col] / aug[pivot_row][col]);
        if (aug[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (aug[pivot_row][col] == 0) continue;
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  if (pivot_row != r) throw Error("integer_coordinates: basis rows are dependent");
  IntVector rest = target;
  IntVector echelon_coeffs(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t col = pivot_cols[i];
    if (rest[col] % aug[i][col] != 0) return false;
    const Integer q = rest[col] / aug[i][col];
    echelon_coeffs[i] = q;
    for (std::size_t j = 0; j < n; ++j)
      rest[j] = detail::checked_add(rest[j], -detail::checked_mul(q, aug[i][j]));
  }
  if (!is_zero(rest)) return false;
  coeffs.assign(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      coeffs[k] = detail::checked_add(coeffs[k], detail::checked_mul(echelon_coeffs[i], aug[i][n + k]));
  return true;
}

inline IntMatrix transpose(const IntMatrix& m, std::size_t cols) {
  IntMatrix t(cols, IntVector(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

// (rows x inner) * (inner x cols)
inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner, std::size_t cols) {
  IntMatrix c(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        c[i][j] = detail::checked_add(c[i][j], detail::checked_mul(a[i][k], b[k][j]));
    }
  return c;
}

inline IntVector apply(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] = detail::checked_add(out[i], detail::checked_mul(m[i][j], v[j]));
  return out;
}

}  // namespace polaris
