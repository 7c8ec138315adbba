#pragma once

#include <random>

#include "dualint/dualint.hpp"

namespace dualint::testing {

// Triangle x1 + x2 <= 3, x >= 0.
inline LinearSystem triangle() { return {IntMat{{1, 1}, {-1, 0}, {0, -1}}, IntVec{3, 0, 0}}; }

// Quadrilateral 3x1 + x2 <= 6, x2 <= 3, x >= 0.
inline LinearSystem quadrilateral() {
  return {IntMat{{3, 1}, {0, 1}, {-1, 0}, {0, -1}}, IntVec{6, 3, 0, 0}};
}

// 2x <= 0, 3x <= 0.
inline LinearSystem two_three() { return {IntMat{{2}, {3}}, IntVec{0, 0}}; }

// 2x1 + x2 <= 2, x >= 0: integral, half-resilient but not resilient.
inline LinearSystem half_resilient_triangle() {
  return {IntMat{{2, 1}, {-1, 0}, {0, -1}}, IntVec{2, 0, 0}};
}

inline RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Rat q(long n, long d) { return make_rat(Int(n), Int(d)); }

inline IntMat random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMat A(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = d(rng);
  return A;
}

inline IntVec random_vector(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntVec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace dualint::testing
