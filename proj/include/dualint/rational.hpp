#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dualint/errors.hpp"

namespace dualint {

// mpq_class keeps values canonical (reduced, positive denominator, zero as 0/1)
// after every arithmetic operation; only direct num/den construction needs
// canonicalize(), which make_rat does.
using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int floor_div(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil_div(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// q-adic valuation of a nonzero integer.
inline unsigned long valuation(const Int& a, unsigned long q) {
  if (a == 0) throw UsageError("valuation of zero");
  Int rem = abs(a);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(rem.get_mpz_t(), q) != 0) {
    mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), q);
    ++v;
  }
  return v;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw UsageError("not a rational literal: '" + s + "'");
  if (r.get_den() == 0) throw UsageError("rational with zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline RatVec to_rat(std::span<const Int> v) {
  RatVec out;
  out.reserve(v.size());
  for (const Int& x : v) out.emplace_back(x);
  return out;
}

template <class A, class B>
Rat dot(std::span<const A> a, std::span<const B> b) {
  if (a.size() != b.size()) throw UsageError("dot product of vectors with different lengths");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * Rat(b[i]);
  return s;
}

inline Int dot_int(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw UsageError("dot product of vectors with different lengths");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Least common multiple of all denominators.
inline Int common_denominator(std::span<const Rat> v) {
  Int l = 1;
  for (const Rat& x : v) l = lcm(l, x.get_den());
  return l;
}

// gcd of all entries (0 for the zero vector).
inline Int content(std::span<const Int> v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

// Scale a rational vector to the primitive integer vector with the same direction.
inline IntVec primitive(std::span<const Rat> v) {
  const Int den = common_denominator(v);
  IntVec out;
  out.reserve(v.size());
  for (const Rat& x : v) {
    Rat s = x * den;
    out.push_back(s.get_num());
  }
  const Int g = content(out);
  if (g > 1) {
    for (Int& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

template <class T>
std::string to_string(std::span<const T> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

template <class T>
std::string to_string(const std::vector<T>& v) {
  return to_string(std::span<const T>(v));
}

}  // namespace dualint
