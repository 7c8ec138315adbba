#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "dualint/analyzer.hpp"

namespace dualint {

inline constexpr std::size_t kMaxBlockerGround = 12;

using Member = std::vector<std::size_t>;  // sorted 0-based elements

// An antichain of subsets of {0..n-1}, members sorted lexicographically. The
// empty clutter and {∅} are representable; polyhedral operations reject them.
class Clutter {
 public:
  Clutter() = default;

  Clutter(std::size_t n, std::vector<Member> members) : n_(n) {
    for (Member& S : members) {
      std::sort(S.begin(), S.end());
      if (std::adjacent_find(S.begin(), S.end()) != S.end())
        throw ClutterInvariantError("member " + member_string(S) + " repeats an element");
      for (std::size_t e : S)
        if (e >= n) throw ClutterInvariantError("element " + std::to_string(e + 1) + " outside the ground set of size " + std::to_string(n));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = 0; b < members.size(); ++b)
        if (a != b && std::includes(members[b].begin(), members[b].end(), members[a].begin(),
                                    members[a].end()))
          throw ClutterInvariantError("member " + member_string(members[a]) + " is contained in " +
                                      member_string(members[b]));
    members_ = std::move(members);
  }

  std::size_t ground_size() const { return n_; }
  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  bool is_degenerate() const {
    return members_.empty() || (members_.size() == 1 && members_[0].empty());
  }

  void require_nondegenerate() const {
    if (is_degenerate())
      throw DegenerateClutterError(members_.empty() ? "the empty clutter has no covering polyhedron"
                                                    : "the clutter {{}} has no covering polyhedron");
  }

  static std::string member_string(const Member& S) {
    std::string s = "{";
    for (std::size_t k = 0; k < S.size(); ++k) s += (k ? "," : "") + std::to_string(S[k] + 1);
    return s + "}";
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < members_.size(); ++k) s += (k ? "," : "") + member_string(members_[k]);
    return s + "}";
  }

  friend bool operator==(const Clutter&, const Clutter&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Member> members_;
};

namespace detail {

inline unsigned mask_of(const Member& S) {
  unsigned m = 0;
  for (std::size_t e : S) m |= 1u << e;
  return m;
}

inline Member member_of(unsigned mask, std::size_t n) {
  Member S;
  for (std::size_t e = 0; e < n; ++e)
    if (mask >> e & 1u) S.push_back(e);
  return S;
}

}  // namespace detail

// Inclusion-minimal sets meeting every member. The degenerate clutters {∅}
// and ∅ are each other's blockers.
inline Clutter blocker(const Clutter& C) {
  const std::size_t n = C.ground_size();
  if (n > kMaxBlockerGround)
    throw ResourceLimitError("blocker_ground_size", kMaxBlockerGround,
                             "ground set of size " + std::to_string(n));
  std::vector<unsigned> masks;
  for (const Member& S : C.members()) masks.push_back(detail::mask_of(S));
  auto covers = [&](unsigned B) {
    return std::all_of(masks.begin(), masks.end(), [&](unsigned S) { return (S & B) != 0; });
  };
  std::vector<Member> out;
  for (unsigned B = 0; B < (1u << n); ++B) {
    if (!covers(B)) continue;
    bool minimal = true;
    for (std::size_t e = 0; e < n && minimal; ++e)
      if ((B >> e & 1u) && covers(B & ~(1u << e))) minimal = false;
    if (minimal) out.push_back(detail::member_of(B, n));
  }
  return Clutter(n, std::move(out));
}

// M(C) x <= d(C) with M(C) = [-T(C); -I] and d(C) = (-1, ..., -1, 0, ..., 0).
inline LinearSystem covering_system(const Clutter& C) {
  C.require_nondegenerate();
  const std::size_t m = C.size(), n = C.ground_size();
  if (n == 0) throw DegenerateClutterError("the ground set is empty");
  IntMat M(m + n, n);
  IntVec d(m + n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t e : C.members()[i]) M(i, e) = -1;
    d[i] = -1;
  }
  for (std::size_t j = 0; j < n; ++j) M(m + j, j) = -1;
  return {M, d};
}

inline IntVec incidence(const Member& S, std::size_t n) {
  IntVec x(n, 0);
  for (std::size_t e : S) x[e] = 1;
  return x;
}

struct IdealReport {
  bool ideal = false;
  std::optional<RatVec> fractional_vertex;
};

// Integrality of {x >= 0 : T(C) x >= 1}; when ideal its vertices must be
// exactly the blocker incidence vectors.
inline IdealReport ideal_report(const Clutter& C) {
  const LinearSystem sys = covering_system(C);
  const PolyhedronSummary s = summarize(sys);
  const IntegralityReport ir = integrality(sys, s);
  IdealReport r;
  r.ideal = ir.integral;
  if (!r.ideal) {
    r.fractional_vertex = ir.witness_point;
    return r;
  }
  std::set<RatVec> vertices, covers;
  for (const auto& v : s.vertices) vertices.insert(v.x);
  const Clutter b = blocker(C);
  for (const Member& B : b.members())
    covers.insert(to_rat(std::span<const Int>(incidence(B, C.ground_size()))));
  if (vertices != covers) throw InternalError("ideal clutter whose vertices are not its minimal covers");
  return r;
}

inline bool is_ideal(const Clutter& C) { return ideal_report(C).ideal; }

struct IntersectionProfile {
  std::size_t max_SB = 0;
  bool all_in_P = true;  // every |S∩B| - 1 lies in {0, 1, 2, 4, 8, ...}
  bool binary = true;    // every |S∩B| is odd
};

inline bool in_power_set_P(std::size_t k) { return k == 0 || (k & (k - 1)) == 0; }

inline IntersectionProfile intersection_profile(const Clutter& C) {
  IntersectionProfile p;
  const Clutter B = blocker(C);
  for (const Member& S : C.members())
    for (const Member& T : B.members()) {
      Member I;
      std::set_intersection(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(I));
      const std::size_t k = I.size();
      p.max_SB = std::max(p.max_SB, k);
      if (k == 0 || !in_power_set_P(k - 1)) p.all_in_P = false;
      if (k % 2 == 0) p.binary = false;
    }
  return p;
}

struct ClutterTddReport {
  Verdict verdict;
  IntersectionProfile profile;
  bool ideal = false;
  bool hypothesis = false;  // ideal and every |S∩B| - 1 in {0, 1, 2, 4, ...}
  BadWeightSearch scan;     // weights in clutter form (w >= 0)
};

// Scans w in [0, W]^n for a covering LP without a dyadic optimal dual,
// through (P : M(C), d(C), -w). Ideal clutters whose intersections satisfy
// |S∩B| - 1 in {0, 1, 2, 4, ...} are TDD for every w.
inline ClutterTddReport verify_TDD_clutter(const Clutter& C, const SearchBudget& budget) {
  budget.validate();
  const LinearSystem sys = covering_system(C);
  ClutterTddReport r;
  r.profile = intersection_profile(C);
  r.ideal = is_ideal(C);
  r.hypothesis = r.ideal && r.profile.all_in_P;

  const LSpec L2 = LSpec::primes({2});
  r.scan.weight_box = budget.weight_box;
  r.scan.domain = L2.name();
  const PolyhedronSummary s = summarize(sys);
  std::map<IndexSet, LatticeSolver> solvers;
  const std::size_t n = C.ground_size();
  IntVec w(n, 0);
  for (;;) {
    ++r.scan.weights_checked;
    IntVec neg = w;
    for (Int& v : neg) v = -v;
    if (const auto opt = optimal_face_from_summary(sys, s, to_rat(std::span<const Int>(neg)))) {
      ++r.scan.admissible;
      const AffineSubspace a = detail::dual_hull(sys, opt->face.tight_set, neg);
      auto it = solvers.find(opt->face.tight_set);
      if (it == solvers.end()) it = solvers.emplace(opt->face.tight_set, LatticeSolver(a.N)).first;
      auto res = it->second.solve_in_L(std::span<const Int>(a.f), L2);
      if (auto* alt = std::get_if<AlternativeCertificate>(&res)) {
        r.scan.bad = w;
        r.scan.alternative = alt->u;
        break;
      }
    }
    std::size_t j = n;
    bool done = true;
    while (j > 0) {
      --j;
      if (w[j] < Int(budget.weight_box)) {
        ++w[j];
        done = false;
        break;
      }
      w[j] = 0;
    }
    if (done) break;
  }

  Verdict& v = r.verdict;
  v.property = Property::TDD;
  v.L = L2;
  if (r.scan.bad && r.hypothesis)
    throw InternalError("TDD scan refuted a clutter covered by the intersection criterion");
  if (r.hypothesis) {
    v.status = Status::Certified;
    v.rule = "ideal clutter with |S∩B| - 1 in {0, 1, 2, 4, ...} for all members and minimal covers: TDD";
    v.reason = "ideal, max |S∩B| = " + std::to_string(r.profile.max_SB);
  } else if (r.scan.bad) {
    v.status = Status::Refuted;
    v.rule = "weight-box scan of the covering LP for an optimal dual without a dyadic solution";
    v.bad_weight = r.scan.bad;
    v.bad_weight_domain = L2.name();
    v.alternative = r.scan.alternative;
    v.reason = "w = " + to_string(*r.scan.bad) + " has no dyadic optimal dual solution";
  } else {
    v.rule = "weight-box scan of the covering LP";
    v.reason = std::string(r.ideal ? "" : "not ideal; ") + "no bad weight in [0, " +
               std::to_string(budget.weight_box) + "]^n";
  }
  v.searches.push_back(r.scan);
  return r;
}

enum class BraceCase { ExtremePoint, RecessionStep, Generic };

struct ClutterBrace {
  Brace brace;
  BraceCase source = BraceCase::Generic;
};

// Braces for a covering system: minimal-cover incidence vectors in F+ \ F,
// then v + e_j for integral vertices v of F and e_j in rec(F+) \ rec(F),
// falling back to the generic search with gaps up to n + 1.
inline std::optional<ClutterBrace> clutter_brace_search(const Clutter& C, const Face& F,
                                                         const Face& Fplus) {
  const LinearSystem sys = covering_system(C);
  detail::check_down_face(sys, F, Fplus);
  const std::size_t n = C.ground_size();
  const IndexSet I = set_difference(F.tight_set, Fplus.tight_set);
  const AffineSubspace hullF = affine_hull(sys, F), hullFp = affine_hull(sys, Fplus);

  std::optional<ClutterBrace> best;
  auto offer = [&](const IntVec& rho, BraceCase src) {
    const RatVec r = to_rat(std::span<const Int>(rho));
    if (!hullFp.contains(r) || hullF.contains(r)) return;
    const RatVec Mr = multiply(sys.M, r);
    for (std::size_t i : I) {
      const Int gap = abs(Int(sys.b[i] - Mr[i].get_num()));
      if (gap == 0) continue;
      const Brace b{i, rho, gap};
      if (!best || gap < best->brace.gap || (gap == best->brace.gap && i < best->brace.i_hat))
        best = ClutterBrace{b, src};
    }
  };

  // case 1: extreme points of Q in F+ \ F
  const PolyhedronSummary s = summarize(sys);
  for (const auto& v : s.vertices) {
    if (!is_subset(Fplus.tight_set, v.tight) || is_subset(F.tight_set, v.tight)) continue;
    bool integral = std::all_of(v.x.begin(), v.x.end(), [](const Rat& x) { return is_integer(x); });
    if (!integral) continue;
    IntVec rho;
    for (const Rat& x : v.x) rho.push_back(x.get_num());
    offer(rho, BraceCase::ExtremePoint);
  }
  if (!best) {
    // case 2: integral vertex of F plus a unit recession direction of F+ not in rec(F)
    auto in_rec = [&](const IndexSet& tight, std::size_t j) {
      return std::all_of(tight.begin(), tight.end(), [&](std::size_t i) { return sys.M(i, j) == 0; });
    };
    for (const auto& v : s.vertices) {
      if (!is_subset(F.tight_set, v.tight)) continue;
      if (!std::all_of(v.x.begin(), v.x.end(), [](const Rat& x) { return is_integer(x); })) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!in_rec(Fplus.tight_set, j) || in_rec(F.tight_set, j)) continue;
        IntVec rho;
        for (const Rat& x : v.x) rho.push_back(x.get_num());
        rho[j] += 1;
        offer(rho, BraceCase::RecessionStep);
      }
    }
  }
  if (best) {
    if (!is_valid_brace(sys, F, Fplus, best->brace)) throw InternalError("invalid clutter brace");
    return best;
  }
  if (auto b = find_brace(sys, s, F, Fplus, n + 1)) return ClutterBrace{*b, BraceCase::Generic};
  return std::nullopt;
}

// All nondegenerate clutters on {0..n-1}; with `up_to_isomorphism` only the
// lexicographically least relabeling of each class.
inline std::vector<Clutter> all_clutters(std::size_t n, bool up_to_isomorphism) {
  if (n > 6) throw ResourceLimitError("clutter_enumeration_ground_size", 6, "n = " + std::to_string(n));
  const unsigned full = 1u << n;
  std::vector<std::vector<unsigned>> families;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned next) -> void {
    if (!cur.empty()) families.push_back(cur);
    for (unsigned S = next; S < full; ++S) {
      bool ok = true;
      for (unsigned T : cur)
        if ((S & T) == S || (S & T) == T) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(S);
      self(self, S + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  auto relabel = [&](const std::vector<unsigned>& fam, const std::vector<std::size_t>& p) {
    std::vector<unsigned> out;
    for (unsigned S : fam) {
      unsigned T = 0;
      for (std::size_t e = 0; e < n; ++e)
        if (S >> e & 1u) T |= 1u << p[e];
      out.push_back(T);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::set<std::vector<unsigned>> seen;
  std::vector<Clutter> out;
  for (const auto& fam : families) {
    std::vector<unsigned> key = relabel(fam, perms[0]);
    if (up_to_isomorphism)
      for (const auto& p : perms) key = std::min(key, relabel(fam, p));
    if (!seen.insert(key).second) continue;
    std::vector<Member> ms;
    for (unsigned S : key) ms.push_back(detail::member_of(S, n));
    out.emplace_back(n, std::move(ms));
  }
  return out;
}

}  // namespace dualint
