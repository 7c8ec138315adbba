#pragma once

#include <optional>
#include <string>

#include "dualint/duality.hpp"
#include "dualint/integer_points.hpp"

namespace dualint {

// sum_{i in index_set} coeff_i u_i = rhs, with gcd(coeff, rhs) = 1 and rhs > 0.
struct TiltConstraint {
  IndexSet index_set;  // I(F) \ I(F+)
  IntVec coeff;
  Int rhs;

  // how it was built
  RatVec w;
  Face F, Fplus;
  RatVec rho;
  Rat tau;

  bool same_equation(const TiltConstraint& o) const {
    return index_set == o.index_set && coeff == o.coeff && rhs == o.rhs;
  }

  bool satisfied_by(const RatVec& u) const {
    if (u.size() != coeff.size()) return false;
    Rat s = 0;
    for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * coeff[k];
    return s == rhs;
  }
};

struct Brace {
  std::size_t i_hat = 0;
  IntVec rho;
  Int gap;

  friend bool operator==(const Brace&, const Brace&) = default;
};

namespace detail {

inline IntVec rhs_of(const LinearSystem& sys, const IndexSet& I) {
  IntVec f;
  for (std::size_t i : I) f.push_back(sys.b[i]);
  return f;
}

// F nonempty, F+ a face with I(F+) strictly inside I(F) and dim F+ = dim F + 1.
inline void check_down_face(const LinearSystem& sys, const Face& F, const Face& Fplus) {
  if (F.is_empty()) throw UsageError("F must be a nonempty face");
  if (face_from_tight(sys, F.tight_set) != F) throw UsageError("F is not a face of the system");
  if (face_from_tight(sys, Fplus.tight_set) != Fplus)
    throw UsageError("F+ is not a face of the system");
  if (!is_subset(Fplus.tight_set, F.tight_set) || Fplus.tight_set == F.tight_set ||
      Fplus.dim != F.dim + 1)
    throw UsageError("F+ " + index_set_string(Fplus.tight_set) + " is not a down-face of F " +
                     index_set_string(F.tight_set));
}

inline void check_optimal_face(const LinearSystem& sys, const RatVec& w, const Face& F,
                               Rat* tau = nullptr) {
  if (w.size() != sys.n()) throw UsageError("weight has the wrong dimension");
  OptimalFaceResult opt;
  try {
    opt = optimal_face_full(sys, w);
  } catch (const AdmissibilityError& e) {
    throw UsageError(e.what());
  }
  if (opt.face.tight_set != F.tight_set)
    throw UsageError("F " + index_set_string(F.tight_set) + " is not the optimal face of w (" +
                     index_set_string(opt.face.tight_set) + ")");
  if (tau) *tau = opt.tau;
}

// A point of aff(F+) outside aff(F), integral when aff(F+) has integer points.
inline RatVec choose_rho(const LinearSystem& sys, const Face& F, const Face& Fplus) {
  const AffineSubspace outer = affine_hull(sys, Fplus), inner = affine_hull(sys, F);
  const std::size_t n = sys.n();
  IntVec x0(n, 0);
  std::vector<IntVec> K;
  bool integral = true;
  if (Fplus.tight_set.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      IntVec e(n, 0);
      e[j] = 1;
      K.push_back(e);
    }
  } else if (auto sol = integer_solutions(outer.N, std::span<const Int>(outer.f))) {
    x0 = sol->particular;
    K = sol->kernel;
  } else {
    integral = false;
  }
  if (integral) {
    auto as_rat = [](const IntVec& v) { return to_rat(std::span<const Int>(v)); };
    if (!inner.contains(as_rat(x0))) return as_rat(x0);
    for (const IntVec& k : K) {
      IntVec x = x0;
      for (std::size_t j = 0; j < n; ++j) x[j] += k[j];
      if (!inner.contains(as_rat(x))) return as_rat(x);
    }
    throw InternalError("aff(F+) has no lattice point outside aff(F)");
  }
  const RatMat N = to_rat(outer.N);
  RatVec x = *solve_rational(N, to_rat(std::span<const Int>(outer.f)));
  if (!inner.contains(x)) return x;
  for (const RatVec& k : kernel_basis(N)) {
    RatVec y = x;
    for (std::size_t j = 0; j < n; ++j) y[j] += k[j];
    if (!inner.contains(y)) return y;
  }
  throw InternalError("aff(F+) equals aff(F)");
}

inline TiltConstraint build_tilt(const LinearSystem& sys, const RatVec& w, const Rat& tau,
                                 const Face& F, const Face& Fplus, const RatVec& rho) {
  TiltConstraint t;
  t.index_set = set_difference(F.tight_set, Fplus.tight_set);
  t.w = w;
  t.F = F;
  t.Fplus = Fplus;
  t.rho = rho;
  t.tau = tau;
  const Rat denom = tau - dot(std::span<const Rat>(w), std::span<const Rat>(rho));
  if (denom == 0) throw InternalError("tau - w.rho vanished for rho outside aff(F)");
  RatVec c;
  for (std::size_t i : t.index_set) {
    const IntVec row = sys.M.row_vec(i);
    c.push_back((Rat(sys.b[i]) - dot(std::span<const Int>(row), std::span<const Rat>(rho))) / denom);
  }
  Int D = 1;
  for (const Rat& v : c) D = lcm(D, v.get_den());
  Int g = D;
  for (const Rat& v : c) {
    const Rat scaled = v * D;
    t.coeff.push_back(scaled.get_num());
    g = gcd(g, scaled.get_num());
  }
  for (Int& v : t.coeff) v /= g;
  t.rhs = D / g;
  return t;
}

}  // namespace detail

// The (w, F, F+)-tilt constraint in canonical integer form. F must be the
// optimal face of w and F+ a down-face of F.
inline TiltConstraint tilt_constraint(const LinearSystem& sys, const RatVec& w, const Face& F,
                                      const Face& Fplus) {
  detail::check_down_face(sys, F, Fplus);
  Rat tau;
  detail::check_optimal_face(sys, w, F, &tau);
  return detail::build_tilt(sys, w, tau, F, Fplus, detail::choose_rho(sys, F, Fplus));
}

// Same, evaluated at a caller-supplied rho in aff(F+) \ aff(F).
inline TiltConstraint tilt_constraint(const LinearSystem& sys, const RatVec& w, const Face& F,
                                      const Face& Fplus, const RatVec& rho) {
  detail::check_down_face(sys, F, Fplus);
  Rat tau;
  detail::check_optimal_face(sys, w, F, &tau);
  if (rho.size() != sys.n()) throw UsageError("rho has the wrong dimension");
  if (!affine_hull(sys, Fplus).contains(rho) || affine_hull(sys, F).contains(rho))
    throw UsageError("rho must lie in aff(F+) but not in aff(F)");
  return detail::build_tilt(sys, w, tau, F, Fplus, rho);
}

inline SingleEqResult tilt_solvable(const TiltConstraint& t, const LSpec& L) {
  return single_eq_solvable_in_L(t.coeff, t.rhs, L);
}

// b1: rho integral, in aff(F+) and not in aff(F); b2: i_hat in I(F) \ I(F+);
// b3: gap = |b_i - row_i rho| > 0.
inline bool is_valid_brace(const LinearSystem& sys, const Face& F, const Face& Fplus,
                           const Brace& br) {
  if (br.rho.size() != sys.n() || br.i_hat >= sys.m()) return false;
  const RatVec r = to_rat(std::span<const Int>(br.rho));
  if (!affine_hull(sys, Fplus).contains(r) || affine_hull(sys, F).contains(r)) return false;
  const IndexSet I = set_difference(F.tight_set, Fplus.tight_set);
  if (!std::binary_search(I.begin(), I.end(), br.i_hat)) return false;
  const IntVec row = sys.M.row_vec(br.i_hat);
  const Int gap = abs(sys.b[br.i_hat] - dot_int(std::span<const Int>(row), std::span<const Int>(br.rho)));
  return gap > 0 && gap == br.gap;
}

enum class BraceSearch {
  Full,       // any slack s in [max_gap]
  KappaOnly,  // only integer maximizers of the slack over F+
};

// Brace with the least gap <= max_gap, ties broken by the smallest row index.
// rho is searched among integer points of F+ within the box
// |x_j| <= max vertex coordinate + max_gap.
inline std::optional<Brace> find_brace(const LinearSystem& sys, const PolyhedronSummary& s,
                                       const Face& F, const Face& Fplus, unsigned long max_gap,
                                       BraceSearch mode = BraceSearch::Full) {
  detail::check_down_face(sys, F, Fplus);
  const std::size_t n = sys.n();
  const IndexSet I = set_difference(F.tight_set, Fplus.tight_set);
  const IndexSet rest = set_difference(all_rows(sys.m()), Fplus.tight_set);

  Int box = 0;
  for (const auto& v : s.vertices)
    for (const Rat& x : v.x) box = std::max(box, ceil_div(abs(x)));
  box += max_gap;

  // kappa_i = sup { b_i - row_i x : x in F+ }
  std::vector<std::optional<Rat>> kappa(I.size());
  LpProblem lp;
  lp.A = RatMat(sys.m(), n);
  lp.b.resize(sys.m());
  lp.equality.assign(sys.m(), 0);
  for (std::size_t i = 0; i < sys.m(); ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.A(i, j) = sys.M(i, j);
    lp.b[i] = sys.b[i];
  }
  for (std::size_t i : Fplus.tight_set) lp.equality[i] = 1;
  for (std::size_t k = 0; k < I.size(); ++k) {
    lp.c.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) lp.c[j] = -sys.M(I[k], j);
    const LpOutcome out = solve_lp(lp);
    if (out.status == LpStatus::Optimal) kappa[k] = Rat(sys.b[I[k]]) + out.optimal_value;
  }

  auto point_at = [&](std::size_t i, const Int& slack) -> std::optional<IntVec> {
    IntegerPointQuery q;
    q.A = RatMat(rest.size(), n);
    for (std::size_t r = 0; r < rest.size(); ++r) {
      for (std::size_t j = 0; j < n; ++j) q.A(r, j) = sys.M(rest[r], j);
      q.b.push_back(sys.b[rest[r]]);
    }
    IndexSet eq = Fplus.tight_set;
    q.E = sys.M.select_rows(eq);
    if (eq.empty()) q.E = IntMat(0, n);
    q.f = detail::rhs_of(sys, eq);
    const IntVec row = sys.M.row_vec(i);
    q.E.append_row(std::span<const Int>(row));
    q.f.push_back(sys.b[i] - slack);
    q.box = box;
    return find_integer_point(std::move(q));
  };

  std::optional<Brace> best;
  auto consider = [&](std::size_t i, const Int& slack) {
    if (best && (slack > best->gap || (slack == best->gap && i >= best->i_hat))) return;
    if (auto x = point_at(i, slack)) best = Brace{i, *x, slack};
  };

  if (mode == BraceSearch::KappaOnly) {
    for (std::size_t k = 0; k < I.size(); ++k) {
      if (!kappa[k] || !is_integer(*kappa[k])) continue;
      const Int g = kappa[k]->get_num();
      if (g <= 0 || g > Int(max_gap)) continue;
      consider(I[k], g);
    }
  } else {
    for (unsigned long slack = 1; slack <= max_gap && !best; ++slack)
      for (std::size_t k = 0; k < I.size() && !best; ++k) {
        if (kappa[k] && *kappa[k] < Rat(slack)) continue;
        consider(I[k], Int(slack));
      }
  }
  if (best && !is_valid_brace(sys, F, Fplus, *best))
    throw InternalError("brace search returned an invalid brace");
  return best;
}

inline std::optional<Brace> find_brace(const LinearSystem& sys, const Face& F, const Face& Fplus,
                                       unsigned long max_gap,
                                       BraceSearch mode = BraceSearch::Full) {
  return find_brace(sys, summarize(sys), F, Fplus, max_gap, mode);
}

// u_i = (tau - w.rho) / (b_i - row_i rho) at i = i_hat and 0 elsewhere, indexed
// like the tilt constraint's index set.
inline RatVec brace_to_tilt_solution(const LinearSystem& sys, const RatVec& w, const Face& F,
                                     const Face& Fplus, const Brace& br) {
  detail::check_down_face(sys, F, Fplus);
  if (!is_valid_brace(sys, F, Fplus, br)) throw UsageError("not a valid (F, F+)-brace");
  Rat tau;
  detail::check_optimal_face(sys, w, F, &tau);
  if (!integrality(sys).integral) throw UsageError("brace solutions need an integral polyhedron");
  const RatVec rho = to_rat(std::span<const Int>(br.rho));
  const IntVec row = sys.M.row_vec(br.i_hat);
  const Rat num = tau - dot(std::span<const Rat>(w), std::span<const Rat>(rho));
  const Rat den = Rat(sys.b[br.i_hat]) - dot(std::span<const Int>(row), std::span<const Rat>(rho));
  const IndexSet I = set_difference(F.tight_set, Fplus.tight_set);
  RatVec u(I.size(), 0);
  for (std::size_t k = 0; k < I.size(); ++k)
    if (I[k] == br.i_hat) u[k] = num / den;
  const TiltConstraint t = detail::build_tilt(sys, w, tau, F, Fplus, detail::choose_rho(sys, F, Fplus));
  if (!t.satisfied_by(u)) throw InternalError("brace solution violates the tilt constraint");
  return u;
}

struct RowShift {
  std::optional<unsigned long> s;  // least shift with an integral result
  bool vacuous = false;            // that shift emptied the polyhedron
};

struct ResiliencyProfile {
  bool integral = false;
  bool resilient = false;
  bool half_resilient = false;
  bool p_resilient = false;
  unsigned long p = 1;
  std::vector<RowShift> rows;
};

// Least s(i) in [max(p, 2)] with Q ∩ {row_i x <= b_i - s(i)} integral. An
// empty shifted polyhedron counts as integral and is flagged.
inline ResiliencyProfile resiliency_profile(const LinearSystem& sys, unsigned long p) {
  if (p == 0) throw UsageError("p must be a positive integer");
  ResiliencyProfile r;
  r.p = p;
  const PolyhedronSummary s = summarize(sys);
  r.integral = integrality(sys, s).integral;
  r.rows.resize(sys.m());
  if (!r.integral) return r;
  const unsigned long probe = std::max<unsigned long>(p, 2);
  bool all1 = true, all2 = true, allp = true;
  for (std::size_t i = 0; i < sys.m(); ++i) {
    for (unsigned long k = 1; k <= probe; ++k) {
      const LinearSystem shifted = shift_in(sys, i, Int(k));
      const PolyhedronSummary ss = summarize(shifted);
      if (!ss.feasible()) {
        r.rows[i] = RowShift{k, true};
        break;
      }
      if (integrality(shifted, ss).integral) {
        r.rows[i] = RowShift{k, false};
        break;
      }
    }
    const auto& si = r.rows[i].s;
    all1 = all1 && si && *si <= 1;
    all2 = all2 && si && *si <= 2;
    allp = allp && si && *si <= p;
  }
  r.resilient = all1;
  r.half_resilient = all2;
  r.p_resilient = allp;
  return r;
}

struct SmallReport {
  bool small = false;
  std::string reason;
  Rat max_slack;
};

// Integral polytope whose vertex-row slacks are all at most p.
inline SmallReport p_small_report(const LinearSystem& sys, unsigned long p) {
  SmallReport r;
  const PolyhedronSummary s = summarize(sys);
  if (!s.feasible()) {
    r.reason = "the polyhedron is empty";
    return r;
  }
  if (!s.bounded()) {
    r.reason = "the polyhedron is not a polytope";
    return r;
  }
  if (!integrality(sys, s).integral) {
    r.reason = "the polytope is not integral";
    return r;
  }
  for (const auto& v : s.vertices) {
    const RatVec Mx = multiply(sys.M, v.x);
    for (std::size_t i = 0; i < sys.m(); ++i) r.max_slack = std::max(r.max_slack, Rat(Rat(sys.b[i]) - Mx[i]));
  }
  r.small = r.max_slack <= Rat(p);
  if (!r.small) r.reason = "largest slack " + to_string(r.max_slack) + " exceeds " + std::to_string(p);
  return r;
}

inline bool is_p_small(const LinearSystem& sys, unsigned long p) { return p_small_report(sys, p).small; }

}  // namespace dualint
