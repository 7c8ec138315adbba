#pragma once

#include <cstdlib>
#include <optional>
#include <set>

#include "dualint/lattice.hpp"
#include "dualint/polyhedron.hpp"

namespace dualint {

inline constexpr std::size_t kDefaultZonotopeCap = 1000000;

struct GscReport {
  bool holds = true;
  std::optional<IntVec> counterexample;  // integer point of the cone that is not representable
  std::size_t points_checked = 0;        // integer cone points tested
  std::size_t lineality_rows = 0;        // rows whose negation lies in the cone
  Rat multiplier_bound;                  // bound on the sum of multipliers of non-lineality rows
};

namespace detail {

// lambda >= 0 with A^T lambda = z.
inline bool in_row_cone(const IntMat& A, std::span<const Int> z) {
  const std::size_t k = A.rows(), n = A.cols();
  if (k == 0) return std::all_of(z.begin(), z.end(), [](const Int& v) { return v == 0; });
  LpProblem p;
  p.A = RatMat(n, k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < k; ++i) p.A(j, i) = A(i, j);
  p.b = to_rat(z);
  p.c.assign(k, 0);
  p.equality.assign(n, 1);
  p.nonneg.assign(k, 1);
  return solve_lp(p).status == LpStatus::Optimal;
}

// Integer points of the cone generated by the rows of A that lie in the
// bounding box of the zonotope sum [0,1] a_i. Every integer point of the cone
// differs from one of these by a nonnegative integer combination of rows.
class ConeSampler {
 public:
  ConeSampler(const IntMat& A, std::size_t cap) {
    const std::size_t n = A.cols();
    lo_.assign(n, 0);
    hi_.assign(n, 0);
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) (A(i, j) < 0 ? lo_[j] : hi_[j]) += A(i, j);
    Int count = 1;
    for (std::size_t j = 0; j < n; ++j) count *= hi_[j] - lo_[j] + 1;
    if (count > Int(static_cast<unsigned long>(cap)))
      throw ResourceLimitError("zonotope_points", cap,
                               "zonotope bounding box holds " + count.get_str() +
                                   " lattice points");
  }

  const IntVec& lo() const { return lo_; }
  const IntVec& hi() const { return hi_; }

  // Visits box points in lexicographic order until the visitor returns false.
  template <class Visit>
  void run(Visit&& visit) const {
    IntVec z = lo_;
    const std::size_t n = z.size();
    for (;;) {
      if (!visit(static_cast<const IntVec&>(z))) return;
      std::size_t j = n;
      while (j > 0) {
        --j;
        if (z[j] < hi_[j]) {
          ++z[j];
          break;
        }
        z[j] = lo_[j];
        if (j == 0) return;
      }
      if (n == 0) return;
    }
  }

 private:
  IntVec lo_, hi_;
};

// Rows i with -a_i in cone(A): they span the lineality space of the cone.
inline IndexSet lineality_rows(const IntMat& A) {
  IndexSet out;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    IntVec neg = A.row_vec(i);
    for (Int& v : neg) v = -v;
    if (in_row_cone(A, std::span<const Int>(neg))) out.push_back(i);
  }
  return out;
}

// c with c.g = 0 on lineality rows and c.p >= 1 on the others.
inline RatVec pointing_functional(const IntMat& A, const IndexSet& lin) {
  const std::size_t n = A.cols();
  LpProblem p;
  p.A = RatMat(A.rows(), n);
  p.b.assign(A.rows(), 0);
  p.equality.assign(A.rows(), 0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const bool is_lin = std::binary_search(lin.begin(), lin.end(), i);
    for (std::size_t j = 0; j < n; ++j) p.A(i, j) = -A(i, j);
    p.b[i] = is_lin ? 0 : -1;
    p.equality[i] = is_lin;
  }
  p.c.assign(n, 0);
  const LpOutcome out = solve_lp(p);
  if (out.status != LpStatus::Optimal)
    throw InternalError("no functional separates the pointed part of the cone");
  return out.primal_point;
}

}  // namespace detail

// Every integer point of cone(rows of A) is a nonnegative integer combination
// of the rows. Lineality rows generate a group under nonnegative integer
// combinations, so the test is exact for non-pointed cones too: z passes iff
// z - s lies in lattice(lineality rows) for some sum s of the other rows.
inline GscReport Z_GSC_report(const IntMat& A, std::size_t cap = kDefaultZonotopeCap) {
  GscReport r;
  const std::size_t n = A.cols();
  if (A.rows() == 0) return r;
  const detail::ConeSampler box(A, cap);
  const IndexSet lin = detail::lineality_rows(A);
  r.lineality_rows = lin.size();
  const IndexSet pointed = set_difference(all_rows(A.rows()), lin);
  const RatVec c = detail::pointing_functional(A, lin);

  auto value = [&](std::span<const Int> z) { return dot(std::span<const Rat>(c), z); };
  Rat bmax = 0;
  for (std::size_t j = 0; j < n; ++j) bmax += std::max(c[j] * box.lo()[j], c[j] * box.hi()[j]);
  r.multiplier_bound = bmax;

  // sums of non-lineality rows with c-value at most bmax
  std::set<IntVec> reach{IntVec(n, 0)};
  std::vector<IntVec> frontier{IntVec(n, 0)};
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const IntVec& s : frontier)
      for (std::size_t i : pointed) {
        IntVec t = s;
        for (std::size_t j = 0; j < n; ++j) t[j] += A(i, j);
        if (value(std::span<const Int>(t)) > bmax) continue;
        if (reach.insert(t).second) {
          if (reach.size() > cap) throw ResourceLimitError("reachable_points", cap, "too many row sums");
          next.push_back(std::move(t));
        }
      }
    frontier = std::move(next);
  }

  std::optional<LatticeSolver> lattice;
  if (!lin.empty()) lattice.emplace(A.select_rows(lin).transpose());
  auto representable = [&](const IntVec& z) {
    if (!lattice) return reach.count(z) > 0;
    const Rat cz = value(std::span<const Int>(z));
    for (const IntVec& s : reach) {
      if (value(std::span<const Int>(s)) > cz) continue;
      IntVec d = z;
      for (std::size_t j = 0; j < n; ++j) d[j] -= s[j];
      if (lattice->solve_integer(std::span<const Int>(d))) return true;
    }
    return false;
  };

  box.run([&](const IntVec& z) {
    if (representable(z)) {
      ++r.points_checked;
      return true;
    }
    if (!detail::in_row_cone(A, std::span<const Int>(z))) return true;
    ++r.points_checked;
    r.holds = false;
    r.counterexample = z;
    return false;
  });
  return r;
}

inline bool is_Z_GSC(const IntMat& A, std::size_t cap = kDefaultZonotopeCap) {
  return Z_GSC_report(A, cap).holds;
}

// Every integer point of the cone is a nonnegative combination of rows with
// multipliers in L. A point z passes iff P_z = {y >= 0 : A^T y = z} is
// nonempty and its affine hull meets L^k (L is dense).
inline GscReport L_GSC_report(const IntMat& A, const LSpec& L,
                              std::size_t cap = kDefaultZonotopeCap) {
  if (L.is_integers()) throw UsageError("use is_Z_GSC for integer multipliers");
  GscReport r = Z_GSC_report(A, cap);
  if (r.holds) return r;
  r = GscReport{};
  const std::size_t k = A.rows(), n = A.cols();
  const detail::ConeSampler box(A, cap);
  const IntMat At = A.transpose();
  // P_z as a system in y: -y <= 0, A^T y <= z, -A^T y <= -z
  IntMat P(k + 2 * n, k);
  for (std::size_t i = 0; i < k; ++i) P(i, i) = -1;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      P(k + j, i) = At(j, i);
      P(k + n + j, i) = -At(j, i);
    }
  box.run([&](const IntVec& z) {
    IntVec rhs(k + 2 * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      rhs[k + j] = z[j];
      rhs[k + n + j] = -z[j];
    }
    const LinearSystem Pz{P, rhs};
    const auto eq = detail::implicit_rows(Pz, {});
    if (!eq) return true;  // z outside the cone
    ++r.points_checked;
    const AffineSubspace hull = affine_hull_of_rows(Pz, *eq);
    if (solve_in_L(hull.N, std::span<const Int>(hull.f), L)) return true;
    r.holds = false;
    r.counterexample = z;
    return false;
  });
  return r;
}

inline bool is_L_GSC(const IntMat& A, const LSpec& L, std::size_t cap = kDefaultZonotopeCap) {
  return L_GSC_report(A, L, cap).holds;
}

}  // namespace dualint
