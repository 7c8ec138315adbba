#include <gtest/gtest.h>

#include "support.hpp"

using namespace dualint;
using namespace dualint::testing;

namespace {

LinearSystem random_system(std::mt19937& rng, std::size_t m, std::size_t n) {
  const IntMat M = random_matrix(rng, m, n, -3, 3);
  const IntVec x0 = random_vector(rng, n, -2, 2);
  IntVec b = multiply(M, x0);
  std::uniform_int_distribution<int> slack(0, 3);
  for (auto& v : b) v += slack(rng);
  return {M, b};
}

// Polygons from rows in a few directions; many are integral.
LinearSystem random_polygon(std::mt19937& rng) {
  static const int dirs[][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1},
                                {1, -1}, {-1, 1}, {2, 1}, {1, 2}, {-2, -1}, {-1, -2}};
  std::uniform_int_distribution<int> pick(0, 11), rhs(0, 4), count(1, 3);
  IntMat M(4, 2);
  IntVec b{rhs(rng), rhs(rng), 0, 0};
  M(0, 0) = 1;
  M(1, 1) = 1;
  M(2, 0) = -1;
  M(3, 1) = -1;
  for (int k = count(rng); k > 0; --k) {
    const int* d = dirs[pick(rng)];
    M.append_row(std::span<const Int>(iv({d[0], d[1]})));
    b.push_back(rhs(rng) + (d[0] < 0 || d[1] < 0 ? -1 : 1));
  }
  return {M, b};
}

struct Instance {
  LinearSystem sys;
  IntVec w;
  Face F, Fplus;
};

// Random (w, F, F+) with F the optimal face of w and F+ a down-face of F.
template <class Make, class Visit>
void for_each_instance(std::mt19937& rng, Make&& make, std::size_t wanted, Visit&& visit) {
  std::size_t seen = 0;
  for (int guard = 0; seen < wanted && guard < 50 * static_cast<int>(wanted); ++guard) {
    const LinearSystem sys = make();
    const PolyhedronSummary s = summarize(sys);
    if (!s.feasible()) continue;
    const IntVec w = random_vector(rng, sys.n(), -3, 3);
    const auto opt = optimal_face_from_summary(sys, s, to_rat(std::span<const Int>(w)));
    if (!opt) continue;
    const std::vector<Face> lattice = enumerate_faces(sys, s);
    for (const Face& Fp : down_faces(lattice, opt->face)) {
      visit(Instance{sys, w, opt->face, Fp});
      ++seen;
    }
  }
  EXPECT_GE(seen, wanted);
}

RatVec axpy(const RatVec& x, const Rat& a, const RatVec& y) {
  RatVec out = x;
  for (std::size_t j = 0; j < x.size(); ++j) out[j] += a * y[j];
  return out;
}

RatVec minus(const RatVec& x, const RatVec& y) { return axpy(x, Rat(-1), y); }

}  // namespace

TEST(Tilt, TriangleRidge) {
  const LinearSystem sys = triangle();
  const RatVec w = rv({0, 1});
  const Face F = face_from_tight(sys, {0, 1});
  const TiltConstraint t1 = tilt_constraint(sys, w, F, face_from_tight(sys, {0}));
  EXPECT_EQ(t1.index_set, IndexSet({1}));
  EXPECT_EQ(t1.coeff, iv({1}));
  EXPECT_EQ(t1.rhs, 1);
  const TiltConstraint t2 = tilt_constraint(sys, w, F, face_from_tight(sys, {1}));
  EXPECT_EQ(t2.index_set, IndexSet({0}));
  EXPECT_EQ(t2.coeff, iv({1}));
  EXPECT_EQ(t2.rhs, 1);
}

TEST(Tilt, QuadrilateralVertexNeedsThirds) {
  const LinearSystem sys = quadrilateral();
  const Face F = face_from_tight(sys, {0, 1});
  const TiltConstraint t = tilt_constraint(sys, rv({1, 1}), F, face_from_tight(sys, {1}));
  EXPECT_EQ(t.coeff, iv({3}));
  EXPECT_EQ(t.rhs, 1);
  EXPECT_FALSE(tilt_solvable(t, LSpec::primes({2})).solvable);
  EXPECT_TRUE(tilt_solvable(t, LSpec::primes({3})).solvable);
  EXPECT_FALSE(tilt_solvable(t, LSpec::integers()).solvable);
}

TEST(Tilt, RejectsBadPairs) {
  const LinearSystem sys = triangle();
  const Face F = face_from_tight(sys, {0, 1});
  // not the optimal face of w
  EXPECT_THROW(tilt_constraint(sys, rv({1, 0}), F, face_from_tight(sys, {0})), UsageError);
  // not a down-face
  EXPECT_THROW(tilt_constraint(sys, rv({0, 1}), F, face_from_tight(sys, {2})), UsageError);
  EXPECT_THROW(tilt_constraint(sys, rv({0, 1}), F, F), UsageError);
  // rho inside aff(F)
  EXPECT_THROW(tilt_constraint(sys, rv({0, 1}), F, face_from_tight(sys, {0}), rv({0, 3})), UsageError);
  // rho outside aff(F+)
  EXPECT_THROW(tilt_constraint(sys, rv({0, 1}), F, face_from_tight(sys, {0}), rv({1, 1})), UsageError);
}

TEST(Tilt, IndependentOfRho) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> m(3, 6), n(2, 3);
  std::size_t rhos = 0;
  for_each_instance(rng, [&] { return random_system(rng, m(rng), n(rng)); }, 500, [&](const Instance& I) {
    const RatVec w = to_rat(std::span<const Int>(I.w));
    const TiltConstraint t = tilt_constraint(I.sys, w, I.F, I.Fplus);
    const RatVec xF = solve(I.sys, w).primal_point;
    const RatVec d = minus(t.rho, xF);
    std::vector<RatVec> others{axpy(xF, Rat(2), d), axpy(xF, q(1, 3), d), axpy(xF, q(-5, 2), d)};
    const IntMat MF = I.sys.M.select_rows(I.F.tight_set);
    for (const RatVec& k : kernel_basis(MF)) others.push_back(axpy(t.rho, Rat(7), k));
    for (const RatVec& rho : others) {
      const TiltConstraint u = tilt_constraint(I.sys, w, I.F, I.Fplus, rho);
      EXPECT_TRUE(u.same_equation(t)) << to_string(I.sys.M) << " w=" << to_string(I.w);
      ++rhos;
    }
  });
  EXPECT_GE(rhos, 1500u);
}

// (a) F+ lies on the tilted hyperplane, (b) the tilted weight is spanned by
// the rows tight on F+, (c) u solves the tilt constraint: all or none.
TEST(Tilt, PerturbationEquivalence) {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> m(3, 6), n(2, 3), coin(-3, 3);
  std::size_t satisfied = 0, violated = 0;
  for_each_instance(rng, [&] { return random_system(rng, m(rng), n(rng)); }, 500, [&](const Instance& I) {
    const RatVec w = to_rat(std::span<const Int>(I.w));
    const TiltConstraint t = tilt_constraint(I.sys, w, I.F, I.Fplus);
    const std::size_t k = t.index_set.size();
    std::size_t lead = 0;
    while (t.coeff[lead] == 0) ++lead;
    std::vector<RatVec> us;
    RatVec u0(k, 0);
    u0[lead] = Rat(t.rhs) / Rat(t.coeff[lead]);
    us.push_back(u0);
    for (std::size_t j = 0; j < k; ++j) {
      if (j == lead) continue;
      RatVec u = u0;
      const Rat s = q(coin(rng), 2);
      u[j] += s * t.coeff[lead];
      u[lead] -= s * t.coeff[j];
      us.push_back(u);
    }
    RatVec r(k);
    for (Rat& x : r) x = q(coin(rng), 3);
    us.push_back(r);

    const AffineSubspace hull = affine_hull(I.sys, I.Fplus);
    const RatVec x0 = *solve_rational(to_rat(hull.N), to_rat(std::span<const Int>(hull.f)));
    const std::vector<RatVec> dirs = kernel_basis(hull.N);
    const IntMat Mp = I.sys.M.select_rows(I.Fplus.tight_set);
    for (const RatVec& u : us) {
      RatVec wbar = w;
      Rat taubar = t.tau;
      for (std::size_t a = 0; a < k; ++a) {
        const std::size_t i = t.index_set[a];
        for (std::size_t j = 0; j < I.sys.n(); ++j) wbar[j] -= u[a] * I.sys.M(i, j);
        taubar -= u[a] * I.sys.b[i];
      }
      bool on = dot(std::span<const Rat>(wbar), std::span<const Rat>(x0)) == taubar;
      for (const RatVec& d : dirs) on = on && dot(std::span<const Rat>(wbar), std::span<const Rat>(d)) == 0;
      RatMat stacked = to_rat(Mp);
      stacked.append_row(std::span<const Rat>(wbar));
      const bool spanned = rank(stacked) == rank(Mp);
      const bool solves = t.satisfied_by(u);
      EXPECT_EQ(on, solves) << to_string(I.sys.M) << " b=" << to_string(I.sys.b) << " w=" << to_string(I.w)
                            << " F=" << index_set_string(I.F.tight_set) << " F+=" << index_set_string(I.Fplus.tight_set)
                            << " u=" << to_string(u) << " coeff=" << to_string(t.coeff) << " rhs=" << t.rhs.get_str();
      EXPECT_EQ(spanned, solves);
      (solves ? satisfied : violated)++;
    }
  });
  EXPECT_GE(satisfied, 500u);
  EXPECT_GE(violated, 100u);
}

// Restricting an optimal dual solution to I(F) \ I(F+) solves the tilt constraint.
TEST(Tilt, OptimalDualsSatisfyIt) {
  std::mt19937 rng(47);
  std::uniform_int_distribution<int> m(3, 6), n(2, 3);
  for_each_instance(rng, [&] { return random_system(rng, m(rng), n(rng)); }, 500, [&](const Instance& I) {
    const RatVec w = to_rat(std::span<const Int>(I.w));
    const TiltConstraint t = tilt_constraint(I.sys, w, I.F, I.Fplus);
    for (const RatVec& y : {solve(I.sys, w).dual_point, strictly_complementary_dual(I.sys, w)}) {
      RatVec u;
      for (std::size_t i : t.index_set) u.push_back(y[i]);
      EXPECT_TRUE(t.satisfied_by(u)) << to_string(I.sys.M) << " w=" << to_string(I.w);
    }
  });
}

TEST(Brace, Examples) {
  const LinearSystem sys = triangle();
  const Face F = face_from_tight(sys, {0, 1});
  const Face Fp = face_from_tight(sys, {0});
  const auto br = find_brace(sys, F, Fp, 4);
  ASSERT_TRUE(br.has_value());
  EXPECT_EQ(br->i_hat, 1u);
  EXPECT_EQ(br->gap, 1);
  EXPECT_TRUE(is_valid_brace(sys, F, Fp, *br));
  EXPECT_EQ(brace_to_tilt_solution(sys, rv({0, 1}), F, Fp, *br), rv({1}));
  const auto kappa = find_brace(sys, F, Fp, 4, BraceSearch::KappaOnly);
  ASSERT_TRUE(kappa.has_value());
  EXPECT_EQ(kappa->gap, 3);
  EXPECT_TRUE(is_valid_brace(sys, F, Fp, *kappa));

  EXPECT_FALSE(is_valid_brace(sys, F, Fp, Brace{1, iv({0, 3}), Int(0)}));
  EXPECT_FALSE(is_valid_brace(sys, F, Fp, Brace{0, iv({1, 2}), Int(1)}));
}

TEST(Brace, QuadrilateralGapThree) {
  const LinearSystem sys = quadrilateral();
  const Face F = face_from_tight(sys, {0, 1});
  const Face Fp = face_from_tight(sys, {1});
  EXPECT_FALSE(find_brace(sys, F, Fp, 2).has_value());
  const auto br = find_brace(sys, F, Fp, 3);
  ASSERT_TRUE(br.has_value());
  EXPECT_EQ(br->gap, 3);
  EXPECT_EQ(brace_to_tilt_solution(sys, rv({1, 1}), F, Fp, *br), RatVec({q(1, 3)}));
}

// On integral polygons every returned brace is valid and yields a tilt solution.
TEST(Brace, RandomIntegralPolygons) {
  std::mt19937 rng(53);
  std::size_t braces = 0;
  for_each_instance(rng, [&] {
    for (;;) {
      LinearSystem sys = random_polygon(rng);
      const PolyhedronSummary s = summarize(sys);
      if (s.feasible() && integrality(sys, s).integral) return sys;
    }
  }, 500, [&](const Instance& I) {
    const RatVec w = to_rat(std::span<const Int>(I.w));
    const auto br = find_brace(I.sys, I.F, I.Fplus, 6);
    ASSERT_TRUE(br.has_value());
    EXPECT_TRUE(is_valid_brace(I.sys, I.F, I.Fplus, *br));
    const TiltConstraint t = tilt_constraint(I.sys, w, I.F, I.Fplus);
    EXPECT_TRUE(t.satisfied_by(brace_to_tilt_solution(I.sys, w, I.F, I.Fplus, *br)));
    ++braces;
  });
  EXPECT_GE(braces, 500u);
}

TEST(Resiliency, Examples) {
  const ResiliencyProfile tri = resiliency_profile(triangle(), 1);
  EXPECT_TRUE(tri.integral && tri.resilient && tri.half_resilient);
  const ResiliencyProfile quad = resiliency_profile(quadrilateral(), 2);
  EXPECT_TRUE(quad.integral);
  EXPECT_FALSE(quad.resilient);
  EXPECT_FALSE(quad.half_resilient);
  EXPECT_FALSE(quad.rows[0].s.has_value());
  EXPECT_EQ(*quad.rows[2].s, 1u);
  const ResiliencyProfile half = resiliency_profile(half_resilient_triangle(), 2);
  EXPECT_FALSE(half.resilient);
  EXPECT_TRUE(half.half_resilient);
  EXPECT_EQ(*half.rows[0].s, 2u);
  EXPECT_EQ(*half.rows[1].s, 1u);
  EXPECT_EQ(*half.rows[2].s, 2u);
}

TEST(Resiliency, EmptiedShiftIsFlagged) {
  // 0 <= x <= 0: shifting either row empties the polyhedron
  const ResiliencyProfile r = resiliency_profile({IntMat{{1}, {-1}}, IntVec{0, 0}}, 1);
  EXPECT_TRUE(r.resilient);
  EXPECT_TRUE(r.rows[0].vacuous);
  EXPECT_TRUE(r.rows[1].vacuous);
}

TEST(Small, Examples) {
  EXPECT_TRUE(is_p_small(half_resilient_triangle(), 2));
  EXPECT_FALSE(is_p_small(half_resilient_triangle(), 1));
  EXPECT_FALSE(is_p_small(triangle(), 2));
  EXPECT_TRUE(is_p_small(triangle(), 3));
  EXPECT_FALSE(p_small_report(two_three(), 5).small);  // a cone, not a polytope
}

// p-small integral polytopes are 1/p-resilient.
TEST(Small, ImpliesFractionalResiliency) {
  std::mt19937 rng(59);
  std::size_t small = 0;
  for (int t = 0; t < 3000 && small < 500; ++t) {
    const LinearSystem sys = random_polygon(rng);
    for (unsigned long p = 1; p <= 3; ++p) {
      if (!is_p_small(sys, p)) continue;
      ++small;
      EXPECT_TRUE(resiliency_profile(sys, p).p_resilient) << to_string(sys.M) << " b=" << to_string(sys.b);
    }
  }
  EXPECT_GE(small, 500u);
}
