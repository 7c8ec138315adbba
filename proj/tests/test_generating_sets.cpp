#include <gtest/gtest.h>

#include "support.hpp"

using namespace dualint;
using namespace dualint::testing;

namespace {

// Largest sum of multipliers over {lambda >= 0 : A^T lambda = z}; nullopt when
// z is outside the cone or the sum is unbounded.
std::optional<Int> multiplier_bound(const IntMat& A, const IntVec& z) {
  LpProblem p;
  p.A = RatMat(A.cols(), A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) p.A(j, i) = A(i, j);
  p.b = to_rat(std::span<const Int>(z));
  p.c.assign(A.rows(), 1);
  p.equality.assign(A.cols(), 1);
  p.nonneg.assign(A.rows(), 1);
  const LpOutcome out = solve_lp(p);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  return floor_div(out.optimal_value);
}

// Brute force: try every integer multiplier vector with sum at most the LP bound.
bool representable(const IntMat& A, const IntVec& z, const Int& bound) {
  const std::size_t k = A.rows(), n = A.cols();
  const long B = bound.get_si();
  std::vector<long> lam(k, 0);
  for (;;) {
    long total = 0;
    for (long l : lam) total += l;
    if (total <= B) {
      bool hit = true;
      for (std::size_t j = 0; j < n && hit; ++j) {
        Int s = 0;
        for (std::size_t i = 0; i < k; ++i) s += A(i, j) * lam[i];
        hit = s == z[j];
      }
      if (hit) return true;
    }
    std::size_t i = 0;
    while (i < k && lam[i] == B) lam[i++] = 0;
    if (i == k) return false;
    ++lam[i];
  }
}

// No nonzero lambda >= 0 with A^T lambda = 0 (this also rules out zero rows).
bool pointed(const IntMat& A) {
  const auto b = multiplier_bound(A, IntVec(A.cols(), 0));
  return b && *b == 0;
}

}  // namespace

TEST(ZGsc, Examples) {
  EXPECT_TRUE(is_Z_GSC(IntMat{{1, 0}, {0, 1}}));
  const GscReport r = Z_GSC_report(IntMat{{2}, {3}});
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(*r.counterexample, iv({1}));
  EXPECT_EQ(*Z_GSC_report(IntMat{{1, 0}, {1, 2}}).counterexample, iv({1, 1}));
  EXPECT_TRUE(is_Z_GSC(IntMat{{1, 0}, {1, 1}, {1, 2}}));
}

TEST(ZGsc, NonPointedCones) {
  // 2x and -2x generate 2Z, but the cone is the whole line
  const GscReport r = Z_GSC_report(IntMat{{2}, {-2}});
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(*r.counterexample, iv({-1}));
  EXPECT_EQ(r.lineality_rows, 2u);
  EXPECT_TRUE(is_Z_GSC(IntMat{{1}, {-1}}));
  EXPECT_TRUE(is_Z_GSC(IntMat{{1, 0}, {-1, 0}, {0, 1}}));
  EXPECT_FALSE(is_Z_GSC(IntMat{{1, 0}, {-1, 0}, {0, 2}}));
  EXPECT_TRUE(is_Z_GSC(IntMat{{1, 0}, {-2, 0}, {0, 1}}));
  // (-1,0) lies in the upper half-plane but every combination has even x
  EXPECT_EQ(*Z_GSC_report(IntMat{{2, 0}, {-2, 0}, {1, 1}, {0, 1}}).counterexample, iv({-1, 0}));
}

TEST(ZGsc, RefusesHugeZonotopes) {
  try {
    Z_GSC_report(IntMat{{1000, 1000}, {1000, -999}}, 100000);
    FAIL() << "expected a resource limit";
  } catch (const ResourceLimitError& e) {
    EXPECT_EQ(e.limit(), "zonotope_points");
  }
}

TEST(ZGsc, RandomPointedAgainstBoundedEnumeration) {
  std::mt19937 rng(23);
  int compared = 0;
  for (int t = 0; t < 400; ++t) {
    std::uniform_int_distribution<int> rows(1, 3);
    const IntMat A = random_matrix(rng, rows(rng), 2, -2, 2);
    if (!pointed(A)) continue;
    const GscReport r = Z_GSC_report(A);
    if (r.holds) {
      for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
          const IntVec z = iv({a, b});
          const auto bound = multiplier_bound(A, z);
          if (!bound) continue;
          EXPECT_TRUE(representable(A, z, *bound)) << to_string(A) << " " << to_string(z);
        }
    } else {
      const auto bound = multiplier_bound(A, *r.counterexample);
      ASSERT_TRUE(bound.has_value()) << "counterexample outside the cone";
      EXPECT_FALSE(representable(A, *r.counterexample, *bound));
    }
    ++compared;
  }
  EXPECT_GE(compared, 200);
}

TEST(ZGsc, ImpliesGss) {
  std::mt19937 rng(29);
  int gsc = 0;
  for (int t = 0; t < 600; ++t) {
    std::uniform_int_distribution<int> sz(1, 3);
    const IntMat A = random_matrix(rng, sz(rng) + 1, sz(rng), -3, 3);
    if (is_Z_GSC(A)) {
      ++gsc;
      EXPECT_TRUE(is_Z_GSS(A, Orientation::Rows)) << to_string(A);
    }
  }
  EXPECT_GE(gsc, 50);
}

TEST(LGsc, Examples) {
  EXPECT_TRUE(is_L_GSC(IntMat{{2}, {3}}, LSpec::primes({2})));
  EXPECT_FALSE(is_L_GSC(IntMat{{3}}, LSpec::primes({2})));
  EXPECT_TRUE(is_L_GSC(IntMat{{3}}, LSpec::primes({3})));
  EXPECT_TRUE(is_L_GSC(IntMat{{3}, {-3}}, LSpec::primes({3})));
  EXPECT_EQ(*L_GSC_report(IntMat{{3}, {-3}}, LSpec::primes({2})).counterexample, iv({-2}));
  EXPECT_THROW(L_GSC_report(IntMat{{1}}, LSpec::integers()), UsageError);
}

TEST(LGsc, MonotoneInTheRing) {
  std::mt19937 rng(31);
  const LSpec L2 = LSpec::primes({2}), L3 = LSpec::primes({3}), L23 = LSpec::primes({2, 3});
  for (int t = 0; t < 500; ++t) {
    std::uniform_int_distribution<int> sz(1, 3);
    const IntMat A = random_matrix(rng, sz(rng), sz(rng), -3, 3);
    const bool z = is_Z_GSC(A), a = is_L_GSC(A, L2), b = is_L_GSC(A, L3), ab = is_L_GSC(A, L23);
    if (z) {
      EXPECT_TRUE(a && b);
    }
    if (a || b) {
      EXPECT_TRUE(ab) << to_string(A);
    }
  }
}

// The counterexample z has P_z nonempty and no point of aff(P_z) in L^k.
TEST(LGsc, CounterexamplesAreCertified) {
  std::mt19937 rng(37);
  const LSpec L2 = LSpec::primes({2});
  int refuted = 0;
  for (int t = 0; t < 300; ++t) {
    std::uniform_int_distribution<int> sz(1, 3);
    const IntMat A = random_matrix(rng, sz(rng), sz(rng), -3, 3);
    const GscReport r = L_GSC_report(A, L2);
    if (r.holds) continue;
    ++refuted;
    const IntVec& z = *r.counterexample;
    // every solution of A^T y = z with y in L fails; with only the equations the
    // affine hull may be larger than aff(P_z), so check P_z's own hull instead
    const std::size_t k = A.rows(), n = A.cols();
    IntMat P(k + 2 * n, k);
    IntVec rhs(k + 2 * n, 0);
    for (std::size_t i = 0; i < k; ++i) P(i, i) = -1;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        P(k + j, i) = A(i, j);
        P(k + n + j, i) = -A(i, j);
      }
      rhs[k + j] = z[j];
      rhs[k + n + j] = -z[j];
    }
    const LinearSystem Pz{P, rhs};
    const AffineSubspace hull = affine_hull(Pz);
    ASSERT_FALSE(hull.empty);
    auto res = solve_in_L_certified(hull.N, std::span<const Int>(hull.f), L2);
    ASSERT_TRUE(std::holds_alternative<AlternativeCertificate>(res));
    EXPECT_TRUE(verify_alternative(hull.N, std::span<const Int>(hull.f), L2,
                                   std::get<AlternativeCertificate>(res)));
  }
  EXPECT_GE(refuted, 20);
}
