#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dualint/lattice.hpp"
#include "dualint/lp.hpp"

namespace dualint {

// A face of Q = {x : Mx <= b}, identified by its closed tight set. The empty
// face has dim -1 and every row in its tight set.
struct Face {
  IndexSet tight_set;
  int dim = -1;

  bool is_empty() const { return dim < 0; }
  friend bool operator==(const Face&, const Face&) = default;
  friend auto operator<=>(const Face& a, const Face& b) { return a.tight_set <=> b.tight_set; }
};

// {x : Nx = f}; `empty` marks an inconsistent system.
struct AffineSubspace {
  IntMat N;
  IntVec f;
  bool empty = false;

  bool contains(const RatVec& x) const {
    if (empty) return false;
    return multiply(N, x) == to_rat(std::span<const Int>(f));
  }
};

inline constexpr std::size_t kDefaultFaceRowCap = 16;

namespace detail {

inline void check_index_set(const LinearSystem& sys, const IndexSet& I) {
  for (std::size_t i : I)
    if (i >= sys.m()) throw UsageError("row index " + std::to_string(i + 1) + " out of range");
}

// Rows of sys that hold with equality on all of {Mx <= b, M_F x = b_F, E x = f}.
// Candidate rows get a slack t_i in [0,1]; maximizing sum t_i exposes at least
// one non-tight candidate per round until none is left. nullopt when empty.
inline std::optional<IndexSet> implicit_rows(const LinearSystem& sys, const IndexSet& forced,
                                             const RatMat& E = RatMat(), const RatVec& f = {}) {
  const std::size_t m = sys.m(), n = sys.n();
  std::vector<char> is_forced(m, 0);
  for (std::size_t i : forced) is_forced[i] = 1;
  IndexSet cand;
  for (std::size_t i = 0; i < m; ++i)
    if (!is_forced[i]) cand.push_back(i);

  bool first = true;
  for (;;) {
    const std::size_t k = cand.size();
    LpProblem p;
    p.A = RatMat(m + E.rows() + k, n + k);
    p.b.assign(p.A.rows(), 0);
    p.c.assign(n + k, 0);
    p.equality.assign(p.A.rows(), 0);
    p.nonneg.assign(n + k, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) p.A(i, j) = sys.M(i, j);
      p.b[i] = sys.b[i];
      p.equality[i] = is_forced[i];
    }
    for (std::size_t e = 0; e < E.rows(); ++e) {
      for (std::size_t j = 0; j < n; ++j) p.A(m + e, j) = E(e, j);
      p.b[m + e] = f[e];
      p.equality[m + e] = 1;
    }
    for (std::size_t c = 0; c < k; ++c) {
      p.A(cand[c], n + c) = 1;
      p.A(m + E.rows() + c, n + c) = 1;
      p.b[m + E.rows() + c] = 1;
      p.c[n + c] = 1;
      p.nonneg[n + c] = 1;
    }
    const LpOutcome out = solve_lp(p);
    if (out.status == LpStatus::Infeasible) {
      if (first) return std::nullopt;
      throw InternalError("implicit equality search lost feasibility");
    }
    if (out.status != LpStatus::Optimal) throw InternalError("bounded slack LP reported unbounded");
    first = false;
    if (out.optimal_value == 0) break;
    IndexSet keep;
    for (std::size_t c = 0; c < k; ++c)
      if (out.primal_point[n + c] == 0) keep.push_back(cand[c]);
    cand = std::move(keep);
    if (cand.empty()) break;
  }
  IndexSet out = forced;
  out.insert(out.end(), cand.begin(), cand.end());
  return normalized(std::move(out));
}

inline int face_dim(const LinearSystem& sys, const IndexSet& tight) {
  if (tight.empty()) return static_cast<int>(sys.n());
  return static_cast<int>(sys.n() - rank(sys.M.select_rows(tight)));
}

}  // namespace detail

inline Face empty_face(const LinearSystem& sys) { return Face{all_rows(sys.m()), -1}; }

inline IndexSet implicit_equalities(const LinearSystem& sys) {
  auto r = detail::implicit_rows(sys, {});
  if (!r) throw InfeasibleError("the system Mx <= b has no solution");
  return *r;
}

inline AffineSubspace affine_hull_of_rows(const LinearSystem& sys, const IndexSet& rows) {
  AffineSubspace a{sys.M.select_rows(rows), {}, false};
  if (rows.empty()) a.N = IntMat(0, sys.n());
  for (std::size_t i : rows) a.f.push_back(sys.b[i]);
  return a;
}

inline AffineSubspace affine_hull(const LinearSystem& sys) {
  return affine_hull_of_rows(sys, implicit_equalities(sys));
}

// aff(F) = {x : row_i x = b_i, i in I(F)}.
inline AffineSubspace affine_hull(const LinearSystem& sys, const Face& F) {
  if (F.is_empty()) {
    AffineSubspace a{IntMat(0, sys.n()), {}, true};
    return a;
  }
  return affine_hull_of_rows(sys, F.tight_set);
}

inline Face face_from_tight(const LinearSystem& sys, IndexSet I) {
  I = normalized(std::move(I));
  detail::check_index_set(sys, I);
  auto tight = detail::implicit_rows(sys, I);
  if (!tight) return empty_face(sys);
  return Face{*tight, detail::face_dim(sys, *tight)};
}

inline LinearSystem shift_in(const LinearSystem& sys, std::size_t i, const Int& s) {
  if (i >= sys.m()) throw UsageError("row index " + std::to_string(i + 1) + " out of range");
  if (s <= 0) throw UsageError("shift amount must be positive");
  LinearSystem out = sys;
  out.b[i] -= s;
  return out;
}

// Vertices and extreme rays of P' = Q ∩ lin(Q)^⊥, with the rows tight at each
// vertex and the rows annihilating each ray. Every face of Q is
// conv(vertices) + cone(rays) + lin(Q) for the vertices and rays it contains.
struct PolyhedronSummary {
  struct Vertex {
    RatVec x;
    IndexSet tight;
  };
  struct Ray {
    IntVec d;        // primitive
    IndexSet zeros;  // rows with row_i d = 0
  };

  std::size_t m = 0, n = 0, rank = 0;
  std::vector<Vertex> vertices;
  std::vector<Ray> rays;
  std::vector<IntVec> lineality;  // integer basis of ker M

  bool feasible() const { return !vertices.empty(); }
  bool pointed() const { return lineality.empty(); }
  bool bounded() const { return rays.empty() && lineality.empty(); }
};

namespace detail {

// Depth-first search over row subsets of a fixed size whose rows are linearly
// independent; rows are reduced against the running echelon basis so dependent
// prefixes are pruned.
class IndependentSubsets {
 public:
  IndependentSubsets(const IntMat& M, std::size_t size) : M_(M), size_(size) {}

  template <class Visit>
  void run(Visit&& visit) {
    std::vector<std::size_t> chosen;
    std::vector<std::pair<RatVec, std::size_t>> basis;
    dfs(0, chosen, basis, visit);
  }

 private:
  template <class Visit>
  void dfs(std::size_t start, std::vector<std::size_t>& chosen,
           std::vector<std::pair<RatVec, std::size_t>>& basis, Visit& visit) {
    if (chosen.size() == size_) {
      visit(chosen);
      return;
    }
    const std::size_t remaining = size_ - chosen.size();
    for (std::size_t i = start; i + remaining <= M_.rows(); ++i) {
      RatVec r(M_.cols());
      for (std::size_t j = 0; j < M_.cols(); ++j) r[j] = M_(i, j);
      for (const auto& [v, p] : basis) {
        if (r[p] == 0) continue;
        const Rat f = r[p];
        for (std::size_t j = 0; j < r.size(); ++j)
          if (v[j] != 0) r[j] -= f * v[j];
      }
      std::size_t piv = 0;
      while (piv < r.size() && r[piv] == 0) ++piv;
      if (piv == r.size()) continue;
      const Rat inv = 1 / r[piv];
      for (Rat& x : r) x *= inv;
      chosen.push_back(i);
      basis.emplace_back(std::move(r), piv);
      dfs(i + 1, chosen, basis, visit);
      basis.pop_back();
      chosen.pop_back();
    }
  }

  const IntMat& M_;
  std::size_t size_;
};

}  // namespace detail

inline PolyhedronSummary summarize(const LinearSystem& sys) {
  PolyhedronSummary s;
  s.m = sys.m();
  s.n = sys.n();
  const LatticeSolver ls(sys.M);
  s.rank = ls.rank();
  s.lineality = ls.kernel();
  const std::size_t n = s.n;

  // Equalities L^T x = 0 cutting Q down to the pointed part.
  IntMat lin(s.lineality.size(), n);
  for (std::size_t k = 0; k < s.lineality.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) lin(k, j) = s.lineality[k][j];

  auto stacked = [&](const std::vector<std::size_t>& rows) {
    IntMat A = sys.M.select_rows(rows);
    for (std::size_t k = 0; k < lin.rows(); ++k) A.append_row(lin.row(k));
    if (rows.empty() && lin.rows() == 0) A = IntMat(0, n);
    return A;
  };

  std::set<RatVec> seen_v;
  detail::IndependentSubsets(sys.M, s.rank).run([&](const std::vector<std::size_t>& rows) {
    const IntMat A = stacked(rows);
    RatVec rhs;
    for (std::size_t i : rows) rhs.emplace_back(sys.b[i]);
    rhs.resize(A.rows(), Rat(0));
    std::optional<RatVec> x = A.rows() ? solve_rational(A, rhs) : RatVec(n, 0);
    if (!x) throw InternalError("independent basis system was inconsistent");
    PolyhedronSummary::Vertex v{*x, {}};
    for (std::size_t i = 0; i < sys.m(); ++i) {
      const Rat lhs = dot(sys.row(i), std::span<const Rat>(v.x));
      if (lhs > Rat(sys.b[i])) return;
      if (lhs == Rat(sys.b[i])) v.tight.push_back(i);
    }
    if (seen_v.insert(v.x).second) s.vertices.push_back(std::move(v));
  });
  std::sort(s.vertices.begin(), s.vertices.end(),
            [](const auto& a, const auto& b) { return a.x < b.x; });

  if (s.rank >= 1 && s.feasible()) {
    std::set<IntVec> seen_r;
    detail::IndependentSubsets(sys.M, s.rank - 1).run([&](const std::vector<std::size_t>& rows) {
      const IntMat A = stacked(rows);
      const std::vector<RatVec> ker = kernel_basis(A);
      if (ker.size() != 1) throw InternalError("ray basis kernel is not one-dimensional");
      IntVec d = primitive(std::span<const Rat>(ker[0]));
      for (int sign : {1, -1}) {
        IntVec e = d;
        if (sign < 0)
          for (Int& x : e) x = -x;
        PolyhedronSummary::Ray r{e, {}};
        bool ok = true;
        for (std::size_t i = 0; i < sys.m() && ok; ++i) {
          const Int v = dot_int(sys.row(i), e);
          if (v > 0) ok = false;
          if (v == 0) r.zeros.push_back(i);
        }
        if (ok && seen_r.insert(e).second) s.rays.push_back(std::move(r));
      }
    });
    std::sort(s.rays.begin(), s.rays.end(), [](const auto& a, const auto& b) { return a.d < b.d; });
  }
  return s;
}

// Closure of I using the vertex/ray description; agrees with face_from_tight.
inline Face closure(const LinearSystem& sys, const PolyhedronSummary& s, const IndexSet& I) {
  bool any_vertex = false;
  std::vector<char> tight(sys.m(), 1);
  for (const auto& v : s.vertices) {
    if (!is_subset(I, v.tight)) continue;
    any_vertex = true;
    std::vector<char> t(sys.m(), 0);
    for (std::size_t i : v.tight) t[i] = 1;
    for (std::size_t i = 0; i < sys.m(); ++i) tight[i] &= t[i];
  }
  if (!any_vertex) return empty_face(sys);
  for (const auto& r : s.rays) {
    if (!is_subset(I, r.zeros)) continue;
    std::vector<char> t(sys.m(), 0);
    for (std::size_t i : r.zeros) t[i] = 1;
    for (std::size_t i = 0; i < sys.m(); ++i) tight[i] &= t[i];
  }
  IndexSet out;
  for (std::size_t i = 0; i < sys.m(); ++i)
    if (tight[i]) out.push_back(i);
  return Face{out, detail::face_dim(sys, out)};
}

// All nonempty faces, sorted by tight set.
inline std::vector<Face> enumerate_faces(const LinearSystem& sys, const PolyhedronSummary& s,
                                         std::size_t row_cap = kDefaultFaceRowCap) {
  if (sys.m() > row_cap)
    throw ResourceLimitError("face_row_cap", row_cap,
                             "face enumeration on " + std::to_string(sys.m()) + " rows");
  if (!s.feasible()) throw InfeasibleError("the system Mx <= b has no solution");
  std::set<Face> faces;
  std::deque<Face> todo;
  const Face top = closure(sys, s, {});
  faces.insert(top);
  todo.push_back(top);
  while (!todo.empty()) {
    const Face F = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < sys.m(); ++i) {
      if (std::binary_search(F.tight_set.begin(), F.tight_set.end(), i)) continue;
      IndexSet I = F.tight_set;
      I.insert(std::upper_bound(I.begin(), I.end(), i), i);
      const Face G = closure(sys, s, I);
      if (G.is_empty()) continue;
      if (faces.insert(G).second) todo.push_back(G);
    }
  }
  return {faces.begin(), faces.end()};
}

inline std::vector<Face> enumerate_faces(const LinearSystem& sys,
                                         std::size_t row_cap = kDefaultFaceRowCap) {
  if (sys.m() > row_cap)
    throw ResourceLimitError("face_row_cap", row_cap,
                             "face enumeration on " + std::to_string(sys.m()) + " rows");
  return enumerate_faces(sys, summarize(sys), row_cap);
}

// Faces G with F ⊂ G and dim G = dim F + 1.
inline std::vector<Face> down_faces(const std::vector<Face>& lattice, const Face& F) {
  std::vector<Face> out;
  for (const Face& G : lattice)
    if (G.dim == F.dim + 1 && G.tight_set != F.tight_set && is_subset(G.tight_set, F.tight_set))
      out.push_back(G);
  return out;
}

inline std::vector<Face> down_faces(const LinearSystem& sys, const Face& F) {
  return down_faces(enumerate_faces(sys), F);
}

// Minimal faces are the affine spaces {x : M_T x = b_T} for T the tight set of a
// vertex of P'.
inline std::vector<Face> minimal_faces(const LinearSystem& sys, const PolyhedronSummary& s) {
  std::set<Face> out;
  for (const auto& v : s.vertices) out.insert(Face{v.tight, detail::face_dim(sys, v.tight)});
  return {out.begin(), out.end()};
}

struct IntegralityReport {
  bool integral = true;
  std::optional<Face> witness;  // minimal face without an integer point
  RatVec witness_point;         // a point of that face
};

// Vacuously integral when empty.
inline IntegralityReport integrality(const LinearSystem& sys, const PolyhedronSummary& s) {
  IntegralityReport r;
  for (const auto& v : s.vertices) {
    if (v.tight.empty()) continue;
    const IntMat A = sys.M.select_rows(v.tight);
    IntVec rhs;
    for (std::size_t i : v.tight) rhs.push_back(sys.b[i]);
    if (!solve_integer(A, rhs)) {
      r.integral = false;
      r.witness = Face{v.tight, detail::face_dim(sys, v.tight)};
      r.witness_point = v.x;
      return r;
    }
  }
  return r;
}

inline IntegralityReport integrality(const LinearSystem& sys) {
  return integrality(sys, summarize(sys));
}

inline bool is_integral(const LinearSystem& sys) {
  const PolyhedronSummary s = summarize(sys);
  if (!s.feasible()) throw InfeasibleError("the system Mx <= b has no solution");
  return integrality(sys, s).integral;
}

// Extreme rays of rec(Q) plus, for non-pointed Q, each lineality basis vector
// with both signs. Lineality vectors are oriented with first nonzero entry
// positive before the negated copy is added.
inline std::vector<IntVec> recession_generators(const LinearSystem& sys,
                                                const PolyhedronSummary& s) {
  std::set<IntVec> out;
  for (const auto& r : s.rays) out.insert(r.d);
  for (IntVec l : s.lineality) {
    RatVec lr = to_rat(std::span<const Int>(l));
    l = primitive(std::span<const Rat>(lr));
    auto nz = std::find_if(l.begin(), l.end(), [](const Int& x) { return x != 0; });
    if (nz != l.end() && *nz < 0)
      for (Int& x : l) x = -x;
    out.insert(l);
    for (Int& x : l) x = -x;
    out.insert(l);
  }
  (void)sys;
  return {out.begin(), out.end()};
}

inline std::vector<IntVec> recession_generators(const LinearSystem& sys) {
  return recession_generators(sys, summarize(sys));
}

struct DegeneracyReport {
  bool non_degenerate = true;
  bool scaled_pair_collapsed = false;  // a pair was antiparallel only after normalization
  std::optional<Face> witness;         // minimal face with dependent tight rows
};

inline DegeneracyReport degeneracy(const LinearSystem& sys, const PolyhedronSummary& s) {
  DegeneracyReport r;
  std::vector<IntVec> prim(sys.m());
  for (std::size_t i = 0; i < sys.m(); ++i) {
    const RatVec row = to_rat(sys.row(i));
    prim[i] = primitive(std::span<const Rat>(row));
  }
  for (const Face& F : minimal_faces(sys, s)) {
    std::vector<std::size_t> kept;
    std::vector<char> paired;
    for (std::size_t i : F.tight_set) {
      IntVec neg = prim[i];
      for (Int& x : neg) x = -x;
      bool collapsed = false;
      for (std::size_t k = 0; k < kept.size() && !collapsed; ++k) {
        if (paired[k] || prim[kept[k]] != neg) continue;
        paired[k] = 1;
        collapsed = true;
        bool exact = true;
        for (std::size_t j = 0; j < sys.n(); ++j)
          if (sys.M(kept[k], j) != -sys.M(i, j)) exact = false;
        if (!exact) r.scaled_pair_collapsed = true;
      }
      if (!collapsed) {
        kept.push_back(i);
        paired.push_back(0);
      }
    }
    if (!kept.empty() && rank(sys.M.select_rows(kept)) != kept.size()) {
      r.non_degenerate = false;
      if (!r.witness) r.witness = F;
    }
  }
  return r;
}

inline bool is_non_degenerate(const LinearSystem& sys) {
  return degeneracy(sys, summarize(sys)).non_degenerate;
}

struct FacetedReport {
  bool faceted = false;
  bool irredundant = true;        // (i)
  bool primitive_rows = true;     // (ii)
  bool full_dimensional = true;   // (iii)
  IndexSet redundant_rows;
  IndexSet non_primitive_rows;
  IndexSet implicit_rows;
};

inline FacetedReport faceted(const LinearSystem& sys) {
  FacetedReport r;
  r.implicit_rows = implicit_equalities(sys);  // throws when infeasible
  r.full_dimensional = r.implicit_rows.empty();
  for (std::size_t i = 0; i < sys.m(); ++i) {
    IntVec ext(sys.row(i).begin(), sys.row(i).end());
    ext.push_back(sys.b[i]);
    if (content(ext) != 1) r.non_primitive_rows.push_back(i);
    // removing row i enlarges Q iff max row_i x over the others exceeds b_i
    LpProblem p;
    p.A = RatMat(0, sys.n());
    for (std::size_t k = 0; k < sys.m(); ++k) {
      if (k == i) continue;
      const RatVec row = to_rat(sys.row(k));
      p.A.append_row(std::span<const Rat>(row));
      p.b.emplace_back(sys.b[k]);
    }
    p.c = to_rat(sys.row(i));
    const LpOutcome out = solve_lp(p);
    const bool enlarges = out.status == LpStatus::Unbounded ||
                          (out.status == LpStatus::Optimal && out.optimal_value > Rat(sys.b[i]));
    if (!enlarges) r.redundant_rows.push_back(i);
  }
  r.primitive_rows = r.non_primitive_rows.empty();
  r.irredundant = r.redundant_rows.empty();
  r.faceted = r.irredundant && r.primitive_rows && r.full_dimensional;
  return r;
}

inline bool is_faceted(const LinearSystem& sys) { return faceted(sys).faceted; }

// Optimal face of max w^T x read off the vertex/ray description; nullopt when
// w is not admissible.
struct OptimalFaceFast {
  Face face;
  Rat value;
};

inline std::optional<OptimalFaceFast> optimal_face_from_summary(const LinearSystem& sys,
                                                                const PolyhedronSummary& s,
                                                                const RatVec& w) {
  if (!s.feasible()) return std::nullopt;
  for (const IntVec& l : s.lineality)
    if (dot(std::span<const Int>(l), std::span<const Rat>(w)) != 0) return std::nullopt;
  for (const auto& r : s.rays)
    if (dot(std::span<const Int>(r.d), std::span<const Rat>(w)) > 0) return std::nullopt;
  Rat best;
  std::vector<std::size_t> arg;
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    const Rat v = dot(std::span<const Rat>(w), std::span<const Rat>(s.vertices[k].x));
    if (arg.empty() || v > best) {
      best = v;
      arg.assign(1, k);
    } else if (v == best) {
      arg.push_back(k);
    }
  }
  std::vector<char> tight(sys.m(), 1);
  auto meet = [&](const IndexSet& t) {
    std::vector<char> in(sys.m(), 0);
    for (std::size_t i : t) in[i] = 1;
    for (std::size_t i = 0; i < sys.m(); ++i) tight[i] &= in[i];
  };
  for (std::size_t k : arg) meet(s.vertices[k].tight);
  for (const auto& r : s.rays)
    if (dot(std::span<const Int>(r.d), std::span<const Rat>(w)) == 0) meet(r.zeros);
  IndexSet I;
  for (std::size_t i = 0; i < sys.m(); ++i)
    if (tight[i]) I.push_back(i);
  return OptimalFaceFast{Face{I, detail::face_dim(sys, I)}, best};
}

}  // namespace dualint
