#pragma once

#include <map>
#include <optional>
#include <string>

#include "dualint/generating_sets.hpp"
#include "dualint/tilt.hpp"

namespace dualint {

enum class Property { TDI, NearTDI, TDD, TDinL };
enum class Status { Certified, Refuted, Undecided };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::TDI: return "TDI";
    case Property::NearTDI: return "near-TDI";
    case Property::TDD: return "TDD";
    case Property::TDinL: return "TD-in-L";
  }
  return "?";
}

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Certified: return "certified";
    case Status::Refuted: return "refuted";
    case Status::Undecided: return "undecided";
  }
  return "?";
}

struct SearchBudget {
  unsigned long weight_box = 2;                     // all integer w with |w_j| <= W
  std::vector<unsigned long> prime_sample{2, 3, 5};  // primes for near-TDI scans
  unsigned long denominator_cap = 8;                // witness denominators up to 2^cap

  void validate() const {
    if (weight_box < 1) throw UsageError("weight box must be at least 1");
    if (denominator_cap < 1) throw UsageError("denominator cap must be at least 1");
    if (prime_sample.empty()) throw UsageError("prime sample must be nonempty");
    for (unsigned long p : prime_sample)
      if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
  }
};

struct BadWeightSearch {
  std::optional<IntVec> bad;           // lexicographically first bad weight
  std::optional<RatVec> alternative;   // certificate that bad has no dual point in L (L heavy)
  std::size_t weights_checked = 0;
  std::size_t admissible = 0;
  std::size_t undecided = 0;  // integer scans whose unbounded dual face had no point in the box
  unsigned long weight_box = 0;
  std::string domain;
};

struct Verdict {
  Property property = Property::TDI;
  std::optional<LSpec> L;
  Status status = Status::Undecided;
  std::string rule;    // criterion applied
  std::string reason;  // why, in words
  std::optional<IntVec> bad_weight;
  std::optional<std::string> bad_weight_domain;
  std::optional<RatVec> alternative;
  std::optional<IntVec> gsc_counterexample;
  std::optional<std::size_t> failing_row;
  std::optional<ResiliencyProfile> resiliency;
  std::vector<BadWeightSearch> searches;
};

namespace detail {

// {y : M^T y = w, y_i = 0 for i outside I} for an integer weight.
inline AffineSubspace dual_hull(const LinearSystem& sys, const IndexSet& I, const IntVec& w) {
  const std::size_t m = sys.m(), n = sys.n();
  AffineSubspace a{IntMat(0, m), {}, false};
  for (std::size_t j = 0; j < n; ++j) {
    a.N.append_row(std::span<const Int>(sys.M.col_vec(j)));
    a.f.push_back(w[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (std::binary_search(I.begin(), I.end(), i)) continue;
    IntVec e(m, 0);
    e[i] = 1;
    a.N.append_row(std::span<const Int>(e));
    a.f.push_back(0);
  }
  return a;
}

// Integer points of the optimal dual face, optionally in a box.
inline IntegerPointQuery dual_face_query(const LinearSystem& sys, const IndexSet& I,
                                         const IntVec& w, const Int& scale,
                                         std::optional<Int> box) {
  const std::size_t m = sys.m();
  AffineSubspace a = dual_hull(sys, I, w);
  IntegerPointQuery q;
  q.A = RatMat(I.size(), m);
  q.b.assign(I.size(), 0);
  for (std::size_t k = 0; k < I.size(); ++k) q.A(k, I[k]) = -1;
  if (I.empty()) q.A = RatMat(0, m);
  q.E = a.N;
  q.f = a.f;
  for (Int& v : q.f) v *= scale;
  q.box = box;
  return q;
}

// Visits integer weights in [-W, W]^n in lexicographic order.
template <class Visit>
void for_each_weight(std::size_t n, unsigned long W, Visit&& visit) {
  const Int lo = -Int(W), hi = Int(W);
  IntVec w(n, lo);
  for (;;) {
    if (!visit(static_cast<const IntVec&>(w))) return;
    std::size_t j = n;
    for (;;) {
      if (j == 0) return;
      --j;
      if (w[j] < hi) {
        ++w[j];
        break;
      }
      w[j] = lo;
    }
  }
}

}  // namespace detail

struct DualLPoint {
  bool exists = false;
  RatVec hull_point;            // point of the dual affine hull in L^m
  std::optional<RatVec> witness;  // optimal dual solution in L^m
  bool witness_pending = false;  // exists, but no witness within the denominator cap
  std::optional<RatVec> alternative;
};

// Whether max{w^T x : Mx <= b} has an optimal dual solution in L^m. The dual
// optimal set is a nonempty rational polyhedron, so (L dense) this holds iff
// its affine hull meets L^m. The witness is searched among points z/d with d
// an S-number up to 2^denominator_cap.
inline DualLPoint dual_has_L_point(const LinearSystem& sys, const IntVec& w, const LSpec& L,
                                   unsigned long denominator_cap = 8) {
  if (L.is_integers()) throw UsageError("dual_has_L_point needs a prime set; use check_TDI_at");
  const RatVec wr = to_rat(std::span<const Int>(w));
  const Face F = optimal_face(sys, wr);
  const AffineSubspace a = detail::dual_hull(sys, F.tight_set, w);
  DualLPoint r;
  auto res = solve_in_L_certified(a.N, std::span<const Int>(a.f), L);
  if (auto* alt = std::get_if<AlternativeCertificate>(&res)) {
    r.alternative = alt->u;
    return r;
  }
  r.exists = true;
  r.hull_point = std::get<RatVec>(res);
  const RatVec y = strictly_complementary_dual(sys, wr);
  Rat ymax = 0;
  for (const Rat& v : y) ymax = std::max(ymax, v);
  const Int top = Int(1) << denominator_cap;
  for (const Int& d : L.S_numbers_up_to(top)) {
    const Int box = ceil_div(ymax * d) + d;
    auto z = find_integer_point(detail::dual_face_query(sys, F.tight_set, w, d, box));
    if (!z) continue;
    RatVec yl(z->size());
    for (std::size_t i = 0; i < z->size(); ++i) yl[i] = Rat((*z)[i]) / d;
    r.witness = yl;
    return r;
  }
  r.witness_pending = true;
  return r;
}

struct TdiAtResult {
  std::optional<bool> value;       // nullopt when the box search was inconclusive
  std::optional<IntVec> witness;   // integer optimal dual solution
  bool exact = true;               // dual optimal face bounded, so the search was exhaustive
};

inline TdiAtResult check_TDI_at(const LinearSystem& sys, const IndexSet& I, const IntVec& w,
                                unsigned long box) {
  TdiAtResult r;
  try {
    r.witness = find_integer_point(detail::dual_face_query(sys, I, w, 1, std::nullopt));
    r.value = r.witness.has_value();
    return r;
  } catch (const UsageError&) {
    // unbounded dual face
  }
  r.exact = false;
  r.witness = find_integer_point(detail::dual_face_query(sys, I, w, 1, Int(box)));
  if (r.witness) r.value = true;
  return r;
}

// Whether the optimal dual face for w contains an integer point. Exhaustive
// when that face is bounded; otherwise searched within |y_i| <= box.
inline TdiAtResult check_TDI_at(const LinearSystem& sys, const IntVec& w, unsigned long box = 64) {
  const Face F = optimal_face(sys, to_rat(std::span<const Int>(w)));
  return check_TDI_at(sys, F.tight_set, w, box);
}

// First admissible integer w in the box whose dual has no optimal solution in L.
inline BadWeightSearch search_bad_weight(const LinearSystem& sys, const LSpec& L,
                                         const SearchBudget& budget) {
  budget.validate();
  BadWeightSearch r;
  r.weight_box = budget.weight_box;
  r.domain = L.name();
  const PolyhedronSummary s = summarize(sys);
  if (!s.feasible()) return r;
  std::map<IndexSet, LatticeSolver> solvers;
  detail::for_each_weight(sys.n(), budget.weight_box, [&](const IntVec& w) {
    ++r.weights_checked;
    const auto opt = optimal_face_from_summary(sys, s, to_rat(std::span<const Int>(w)));
    if (!opt) return true;
    ++r.admissible;
    const IndexSet& I = opt->face.tight_set;
    if (L.is_integers()) {
      const TdiAtResult t = check_TDI_at(sys, I, w, std::max<unsigned long>(budget.weight_box * 8, 16));
      if (!t.value) {
        ++r.undecided;
        return true;
      }
      if (*t.value) return true;
      r.bad = w;
      return false;
    }
    const AffineSubspace a = detail::dual_hull(sys, I, w);
    auto it = solvers.find(I);
    if (it == solvers.end()) it = solvers.emplace(I, LatticeSolver(a.N)).first;
    auto res = it->second.solve_in_L(std::span<const Int>(a.f), L);
    if (std::holds_alternative<RatVec>(res)) return true;
    r.bad = w;
    r.alternative = std::get<AlternativeCertificate>(res).u;
    return false;
  });
  return r;
}

// Rows of the implicit equalities M^= as generators.
inline IntMat implicit_rows_matrix(const LinearSystem& sys) {
  const IndexSet eq = implicit_equalities(sys);
  if (eq.empty()) return IntMat(0, sys.n());
  return sys.M.select_rows(eq);
}

// Sufficient condition: M^= rows form an L-GSC and the system is
// 1/p-resilient, where L is closed under q-division for all q in {2..p}.
inline Verdict certify_TD_in_L(const LinearSystem& sys, const LSpec& L);

// For non-degenerate systems: TDI iff the rows of M^= form a Hilbert cone and
// the system is resilient.
inline Verdict decide_TDI_nondegenerate(const LinearSystem& sys) {
  Verdict v;
  v.property = Property::TDI;
  v.L = LSpec::integers();
  v.rule = "non-degenerate systems: TDI iff implicit-equality rows form a Hilbert cone and the system is resilient";
  const PolyhedronSummary s = summarize(sys);
  if (!s.feasible()) {
    v.reason = "the system has no solution";
    return v;
  }
  const DegeneracyReport deg = degeneracy(sys, s);
  if (!deg.non_degenerate) {
    v.reason = "the system is degenerate at minimal face " +
               index_set_string(deg.witness ? deg.witness->tight_set : IndexSet{});
    return v;
  }
  const IntMat Meq = implicit_rows_matrix(sys);
  const GscReport g = Z_GSC_report(Meq);
  if (!g.holds) {
    v.status = Status::Refuted;
    v.gsc_counterexample = g.counterexample;
    v.reason = "implicit-equality rows are not a Hilbert cone: " + to_string(*g.counterexample) +
               " is not a nonnegative integer combination";
    return v;
  }
  const ResiliencyProfile rp = resiliency_profile(sys, 1);
  v.resiliency = rp;
  if (!rp.integral) {
    v.status = Status::Refuted;
    v.reason = "the polyhedron is not integral";
    return v;
  }
  for (std::size_t i = 0; i < sys.m(); ++i)
    if (!rp.rows[i].s || *rp.rows[i].s != 1) {
      v.status = Status::Refuted;
      v.failing_row = i;
      v.reason = "not resilient, row " + std::to_string(i + 1);
      return v;
    }
  v.status = Status::Certified;
  v.reason = Meq.rows() == 0 ? "resilient and full-dimensional" : "resilient and implicit-equality rows form a Hilbert cone";
  return v;
}

inline Verdict certify_TD_in_L(const LinearSystem& sys, const LSpec& L) {
  Verdict v;
  v.property = Property::TDinL;
  v.L = L;
  const PolyhedronSummary s = summarize(sys);
  if (!s.feasible()) {
    v.reason = "the system has no solution";
    return v;
  }
  if (L.is_integers()) {
    // the resiliency route reaches Z only through near-TDI, which needs non-degeneracy
    Verdict t = decide_TDI_nondegenerate(sys);
    t.property = Property::TDinL;
    if (t.status == Status::Refuted) {
      t.status = Status::Undecided;
      t.reason = "sufficient condition fails: " + t.reason;
    }
    return t;
  }
  const unsigned long p = L.division_closure_bound();
  v.rule = "implicit-equality rows form an L-GSC and the system is 1/" + std::to_string(p) +
           "-resilient (L closed under q-division for q <= " + std::to_string(p) + ")";
  const IntMat Meq = implicit_rows_matrix(sys);
  if (Meq.rows() > 0) {
    const GscReport g = L_GSC_report(Meq, L);
    if (!g.holds) {
      v.gsc_counterexample = g.counterexample;
      v.reason = "implicit-equality rows are not an L-GSC";
      return v;
    }
  }
  const ResiliencyProfile rp = resiliency_profile(sys, p);
  v.resiliency = rp;
  if (!rp.p_resilient) {
    v.reason = rp.integral ? "not 1/" + std::to_string(p) + "-resilient" : "the polyhedron is not integral";
    return v;
  }
  v.status = Status::Certified;
  v.reason = (p == 1 ? std::string("resilient") : "1/" + std::to_string(p) + "-resilient") +
             (Meq.rows() == 0 ? " and full-dimensional" : " and implicit-equality rows form an L-GSC");
  return v;
}

// TD in L: certify by the sufficient condition, else scan for a bad weight.
inline Verdict check_TD_in_L(const LinearSystem& sys, const LSpec& L, const SearchBudget& budget) {
  if (L.is_integers()) {
    Verdict v = decide_TDI_nondegenerate(sys);
    if (v.status != Status::Undecided) return v;
  } else {
    Verdict v = certify_TD_in_L(sys, L);
    if (v.status == Status::Certified) return v;
  }
  Verdict v;
  v.property = L == LSpec::primes({2}) ? Property::TDD : (L.is_integers() ? Property::TDI : Property::TDinL);
  v.L = L;
  v.rule = "weight-box scan for an admissible w without an optimal dual solution in L";
  BadWeightSearch b = search_bad_weight(sys, L, budget);
  if (b.bad) {
    v.status = Status::Refuted;
    v.bad_weight = b.bad;
    v.bad_weight_domain = b.domain;
    v.alternative = b.alternative;
    v.reason = "w = " + to_string(*b.bad) + " has no optimal dual solution in " + L.name();
  } else {
    v.reason = "no bad weight with |w_j| <= " + std::to_string(budget.weight_box) +
               (b.undecided ? " (" + std::to_string(b.undecided) + " weights inconclusive)" : "");
  }
  v.searches.push_back(std::move(b));
  return v;
}

inline Verdict check_TDD(const LinearSystem& sys, const SearchBudget& budget) {
  Verdict v = check_TD_in_L(sys, LSpec::primes({2}), budget);
  v.property = Property::TDD;
  return v;
}

// Scans each sampled prime; certification needs resiliency plus a Hilbert
// cone, which gives TD in every heavy L at once.
inline Verdict near_TDI_sample(const LinearSystem& sys, const SearchBudget& budget) {
  budget.validate();
  Verdict v;
  v.property = Property::NearTDI;
  for (unsigned long p : budget.prime_sample) {
    BadWeightSearch b = search_bad_weight(sys, LSpec::primes({p}), budget);
    const bool bad = b.bad.has_value();
    if (bad) {
      v.status = Status::Refuted;
      v.rule = "weight-box scan per sampled prime";
      v.bad_weight = b.bad;
      v.bad_weight_domain = b.domain;
      v.alternative = b.alternative;
      v.reason = "w = " + to_string(*b.bad) + " has no optimal dual solution in " + b.domain;
    }
    v.searches.push_back(std::move(b));
    if (bad) return v;
  }
  const PolyhedronSummary s = summarize(sys);
  if (s.feasible()) {
    const IntMat Meq = implicit_rows_matrix(sys);
    const GscReport g = Z_GSC_report(Meq);
    const ResiliencyProfile rp = resiliency_profile(sys, 1);
    v.resiliency = rp;
    if (g.holds && rp.resilient) {
      v.status = Status::Certified;
      v.rule = "resilient with implicit-equality rows forming a Hilbert cone: TD in every heavy L";
      v.reason = "resilient";
      return v;
    }
  }
  v.rule = "weight-box scan per sampled prime";
  v.reason = "no refutation within the budget";
  return v;
}

inline Verdict check_TDI(const LinearSystem& sys, const SearchBudget& budget) {
  return check_TD_in_L(sys, LSpec::integers(), budget);
}

// Conditions of the TD-in-L characterization: (i) M^= rows form an L-GSC;
// (ii) every tilt constraint is solvable over L.
enum class DownFaceMode { All, Some };

struct TiltCheck {
  Face F, Fplus;
  IntVec w;
  bool canonical = false;  // w is the sum of the rows tight on F
  IndexSet index_set;
  IntVec coeff;
  Int rhs;
  bool solvable = false;
  std::optional<RatVec> witness;
};

struct MainCharReport {
  LSpec L = LSpec::primes({2});
  DownFaceMode mode = DownFaceMode::All;
  bool cond_i = true;
  bool cond_i_vacuous = true;
  std::optional<IntVec> gsc_counterexample;
  bool cond_ii = true;
  std::vector<TiltCheck> checks;     // canonical weights, plus failing box weights
  std::size_t box_weights = 0;       // admissible box weights tested
  std::size_t box_constraints = 0;   // tilt constraints tested for them
  std::optional<TiltCheck> failure;  // first failing (F, F+, w)
  Status status = Status::Undecided;
  std::string reason;
};

inline MainCharReport check_main_char(const LinearSystem& sys, const LSpec& L,
                                      const SearchBudget& budget,
                                      DownFaceMode mode = DownFaceMode::All) {
  if (L.is_integers()) throw UsageError("the tilt characterization needs a heavy L (a prime set)");
  budget.validate();
  MainCharReport r;
  r.L = L;
  r.mode = mode;
  const PolyhedronSummary s = summarize(sys);
  if (!s.feasible()) throw InfeasibleError("the system Mx <= b has no solution");

  const IntMat Meq = implicit_rows_matrix(sys);
  if (Meq.rows() > 0) {
    r.cond_i_vacuous = false;
    const GscReport g = L_GSC_report(Meq, L);
    r.cond_i = g.holds;
    r.gsc_counterexample = g.counterexample;
  }

  const std::vector<Face> lattice = enumerate_faces(sys, s);
  std::map<IndexSet, std::vector<Face>> downs;
  for (const Face& F : lattice)
    if (!F.is_empty()) downs[F.tight_set] = down_faces(lattice, F);

  // tilt constraints of one (w, F); returns false on a failure under the mode
  auto test = [&](const IntVec& w, const Face& F, bool canonical) {
    const RatVec wr = to_rat(std::span<const Int>(w));
    const auto& ds = downs[F.tight_set];
    std::vector<TiltCheck> here;
    bool any = false, all = true;
    for (const Face& Fp : ds) {
      const TiltConstraint t = tilt_constraint(sys, wr, F, Fp);
      const SingleEqResult res = tilt_solvable(t, L);
      TiltCheck c{F, Fp, w, canonical, t.index_set, t.coeff, t.rhs, res.solvable, std::nullopt};
      if (res.solvable) c.witness = res.witness;
      any = any || res.solvable;
      all = all && res.solvable;
      here.push_back(std::move(c));
    }
    if (!canonical) r.box_constraints += here.size();
    const bool ok = ds.empty() || (mode == DownFaceMode::All ? all : any);
    for (auto& c : here)
      if (canonical || !c.solvable) {
        if (!ok && !r.failure && !c.solvable) r.failure = c;
        if (canonical || !ok) r.checks.push_back(std::move(c));
      }
    return ok;
  };

  for (const Face& F : lattice) {
    if (F.is_empty()) continue;
    IntVec w(sys.n(), 0);
    for (std::size_t i : F.tight_set)
      for (std::size_t j = 0; j < sys.n(); ++j) w[j] += sys.M(i, j);
    if (!test(w, F, true)) r.cond_ii = false;
  }
  if (r.cond_ii) {
    detail::for_each_weight(sys.n(), budget.weight_box, [&](const IntVec& w) {
      const auto opt = optimal_face_from_summary(sys, s, to_rat(std::span<const Int>(w)));
      if (!opt) return true;
      ++r.box_weights;
      if (test(w, opt->face, false)) return true;
      r.cond_ii = false;
      return false;
    });
  }

  if (!r.cond_i) {
    r.status = Status::Refuted;
    r.reason = "implicit-equality rows are not an " + L.name() + "-GSC";
  } else if (!r.cond_ii) {
    r.status = Status::Refuted;
    r.reason = "a tilt constraint has no solution over " + L.name();
  } else {
    r.reason = "both conditions hold for every face and every weight in the budget";
  }
  return r;
}

struct HierarchyReport {
  Verdict tdi, near_tdi;
  bool integral = false;
  bool consistent = true;
};

// TDI => near-TDI => integral on one system; a violation is an internal error.
inline HierarchyReport check_hierarchy(const LinearSystem& sys, const SearchBudget& budget) {
  HierarchyReport h;
  h.tdi = check_TDI(sys, budget);
  h.near_tdi = near_TDI_sample(sys, budget);
  const PolyhedronSummary s = summarize(sys);
  h.integral = !s.feasible() || integrality(sys, s).integral;
  if (h.tdi.status == Status::Certified && h.near_tdi.status == Status::Refuted) h.consistent = false;
  if (h.tdi.status == Status::Certified && !h.integral) h.consistent = false;
  if (h.near_tdi.status == Status::Certified && !h.integral) h.consistent = false;
  if (!h.consistent) throw InternalError("hierarchy violated: TDI / near-TDI / integrality disagree");
  return h;
}

}  // namespace dualint
