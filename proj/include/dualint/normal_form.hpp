#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "dualint/matrix.hpp"

namespace dualint {

struct BezoutResult {
  Int g;         // nonnegative gcd; zero iff the input is the zero vector
  IntVec coeffs; // coeffs . a == g
};

inline BezoutResult gcd_bezout(std::span<const Int> a) {
  if (a.empty()) throw UsageError("gcd_bezout of an empty vector");
  BezoutResult r{0, IntVec(a.size(), 0)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (r.g == 0) {
      r.g = abs(a[i]);
      r.coeffs[i] = sgn(a[i]);
      continue;
    }
    // s*g + t*a_i = g'
    Int g2, s, t;
    mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r.g.get_mpz_t(), a[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) r.coeffs[j] *= s;
    r.coeffs[i] = t;
    r.g = g2;
  }
  return r;
}

inline BezoutResult gcd_bezout(const IntVec& a) { return gcd_bezout(std::span<const Int>(a)); }

// Smith form: U*A*V == D with D diagonal, d1 | d2 | ..., all d_i >= 0 and
// U, V unimodular. Hermite form: U*A == D with D in row echelon form, positive
// pivots and entries above each pivot reduced into [0, pivot).
struct NormalForm {
  IntMat D;
  IntMat U;
  IntMat V;
  std::size_t rank = 0;
};

namespace detail {

// Replace rows (a, b) by (s*ra + t*rb, -(y/g)*ra + (x/g)*rb) where x = M(a,c),
// y = M(b,c) and s*x + t*y = g. Determinant of the 2x2 transform is 1.
inline void combine_rows(IntMat& M, std::size_t a, std::size_t b, const Int& s, const Int& t,
                         const Int& xg, const Int& yg) {
  for (std::size_t j = 0; j < M.cols(); ++j) {
    Int ra = M(a, j);
    Int rb = M(b, j);
    M(a, j) = s * ra + t * rb;
    M(b, j) = xg * rb - yg * ra;
  }
}

inline void combine_cols(IntMat& M, std::size_t a, std::size_t b, const Int& s, const Int& t,
                         const Int& xg, const Int& yg) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Int ca = M(i, a);
    Int cb = M(i, b);
    M(i, a) = s * ca + t * cb;
    M(i, b) = xg * cb - yg * ca;
  }
}

struct Gcdext {
  Int g, s, t, xg, yg;
};

// When x | y this degenerates to plain elimination (s = 1, t = 0), so the
// pivot x is kept; otherwise the new pivot g is strictly smaller than |x|.
// Either way repeated elimination terminates.
inline Gcdext gcdext(const Int& x, const Int& y) {
  Gcdext e;
  if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
    e.g = x;
    e.s = 1;
    e.t = 0;
    e.xg = 1;
    mpz_divexact(e.yg.get_mpz_t(), y.get_mpz_t(), x.get_mpz_t());
    return e;
  }
  mpz_gcdext(e.g.get_mpz_t(), e.s.get_mpz_t(), e.t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpz_divexact(e.xg.get_mpz_t(), x.get_mpz_t(), e.g.get_mpz_t());
  mpz_divexact(e.yg.get_mpz_t(), y.get_mpz_t(), e.g.get_mpz_t());
  return e;
}

}  // namespace detail

inline NormalForm smith(const IntMat& A) {
  if (A.empty()) throw UsageError("smith of an empty matrix");
  const std::size_t m = A.rows(), n = A.cols();
  NormalForm nf{A, IntMat::identity(m), IntMat::identity(n), 0};
  IntMat& D = nf.D;
  IntMat& U = nf.U;
  IntMat& V = nf.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero pivot candidate in the trailing block
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    D.swap_rows(t, pi);
    U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    V.swap_cols(t, pj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const detail::Gcdext e = detail::gcdext(D(t, t), D(i, t));
        detail::combine_rows(D, t, i, e.s, e.t, e.xg, e.yg);
        detail::combine_rows(U, t, i, e.s, e.t, e.xg, e.yg);
        changed = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const detail::Gcdext e = detail::gcdext(D(t, t), D(t, j));
        detail::combine_cols(D, t, j, e.s, e.t, e.xg, e.yg);
        detail::combine_cols(V, t, j, e.s, e.t, e.xg, e.yg);
        changed = true;
      }
      if (changed) continue;
      // divisibility: fold an offending row into row t and redo the elimination
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = 0; j < n; ++j) D(t, j) += D(bad, j);
      for (std::size_t j = 0; j < m; ++j) U(t, j) += U(bad, j);
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
    nf.rank = t + 1;
  }
  return nf;
}

inline NormalForm hermite(const IntMat& A) {
  if (A.empty()) throw UsageError("hermite of an empty matrix");
  const std::size_t m = A.rows(), n = A.cols();
  NormalForm nf{A, IntMat::identity(m), IntMat::identity(n), 0};
  IntMat& H = nf.D;
  IntMat& U = nf.U;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && H(p, c) == 0) ++p;
    if (p == m) continue;
    H.swap_rows(r, p);
    U.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (H(i, c) == 0) continue;
      const detail::Gcdext e = detail::gcdext(H(r, c), H(i, c));
      detail::combine_rows(H, r, i, e.s, e.t, e.xg, e.yg);
      detail::combine_rows(U, r, i, e.s, e.t, e.xg, e.yg);
    }
    if (H(r, c) < 0) {
      for (std::size_t j = 0; j < n; ++j) H(r, j) = -H(r, j);
      for (std::size_t j = 0; j < m; ++j) U(r, j) = -U(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) H(i, j) -= q * H(r, j);
      for (std::size_t j = 0; j < m; ++j) U(i, j) -= q * U(r, j);
    }
    ++r;
  }
  nf.rank = r;
  return nf;
}

}  // namespace dualint
