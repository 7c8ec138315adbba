#pragma once

#include "dualint/polyhedron.hpp"

namespace dualint {

struct OptimalFaceResult {
  Face face;
  Rat tau;
  LpOutcome lp;
};

inline OptimalFaceResult optimal_face_full(const LinearSystem& sys, const RatVec& w) {
  LpOutcome lp = solve(sys, w);
  if (lp.status != LpStatus::Optimal)
    throw AdmissibilityError(std::string("weight ") + to_string(w) + " is not admissible (primal " +
                             to_string(lp.status) + ")");
  RatMat E(1, sys.n());
  for (std::size_t j = 0; j < sys.n(); ++j) E(0, j) = w[j];
  // never empty: the LP optimum lies on the hyperplane
  const IndexSet tight = *detail::implicit_rows(sys, {}, E, RatVec{lp.optimal_value});
  return {Face{tight, detail::face_dim(sys, tight)}, lp.optimal_value, std::move(lp)};
}

// The face of all optimal solutions of max { w^T x : Mx <= b }.
inline Face optimal_face(const LinearSystem& sys, const RatVec& w) {
  return optimal_face_full(sys, w).face;
}

inline Face optimal_face(const LinearSystem& sys, const IntVec& w) {
  return optimal_face(sys, to_rat(std::span<const Int>(w)));
}

// Optimal dual solution positive exactly on I(F): the average of one
// maximizer of y_i per i in I(F), or a point along the ray when unbounded.
inline RatVec strictly_complementary_dual(const LinearSystem& sys, const RatVec& w) {
  const OptimalFaceResult opt = optimal_face_full(sys, w);
  const IndexSet& I = opt.face.tight_set;
  const std::size_t m = sys.m(), n = sys.n(), k = I.size();
  RatVec y(m, 0);
  if (k == 0) return y;

  // variables y_I >= 0; M_I^T y_I = w; b_I^T y_I = tau
  LpProblem p;
  p.A = RatMat(n + 1, k);
  p.b.assign(n + 1, 0);
  p.equality.assign(n + 1, 1);
  p.nonneg.assign(k, 1);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < n; ++j) p.A(j, c) = sys.M(I[c], j);
    p.A(n, c) = sys.b[I[c]];
  }
  for (std::size_t j = 0; j < n; ++j) p.b[j] = w[j];
  p.b[n] = opt.tau;
  for (std::size_t t = 0; t < k; ++t) {
    p.c.assign(k, 0);
    p.c[t] = 1;
    LpOutcome out = solve_lp(p);
    if (out.status == LpStatus::Unbounded) {
      // step once along the improving ray from the last basic point
      for (std::size_t c = 0; c < k; ++c) out.primal_point[c] += out.ray[c];
      out.optimal_value = out.primal_point[t];
      out.status = LpStatus::Optimal;
    }
    if (out.status != LpStatus::Optimal || out.optimal_value <= 0)
      throw InternalError("no optimal dual solution is positive on a tight row");
    for (std::size_t c = 0; c < k; ++c) y[I[c]] += out.primal_point[c];
  }
  for (Rat& v : y) v /= Rat(static_cast<long>(k));
  return y;
}

inline RatVec strictly_complementary_dual(const LinearSystem& sys, const IntVec& w) {
  return strictly_complementary_dual(sys, to_rat(std::span<const Int>(w)));
}

// {y : M^T y = w, y_i = 0 for i outside I(F)} in R^m, rows scaled to integers.
inline AffineSubspace dual_affine_hull(const LinearSystem& sys, const RatVec& w) {
  const Face F = optimal_face(sys, w);
  const std::size_t m = sys.m(), n = sys.n();
  AffineSubspace a{IntMat(0, m), {}, false};
  for (std::size_t j = 0; j < n; ++j) {
    IntVec row(m);
    const Int& d = w[j].get_den();
    for (std::size_t i = 0; i < m; ++i) row[i] = sys.M(i, j) * d;
    a.N.append_row(std::span<const Int>(row));
    a.f.push_back(w[j].get_num());
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (std::binary_search(F.tight_set.begin(), F.tight_set.end(), i)) continue;
    IntVec row(m, 0);
    row[i] = 1;
    a.N.append_row(std::span<const Int>(row));
    a.f.push_back(0);
  }
  return a;
}

inline AffineSubspace dual_affine_hull(const LinearSystem& sys, const IntVec& w) {
  return dual_affine_hull(sys, to_rat(std::span<const Int>(w)));
}

}  // namespace dualint
