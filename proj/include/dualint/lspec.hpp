#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "dualint/rational.hpp"

namespace dualint {

inline bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Coefficient domain: the integers, or L(S) = rationals whose denominators
// factor over a finite nonempty prime set S. Only the L(S) variant is heavy
// (dense, contains Z, additive subgroup).
class LSpec {
 public:
  static LSpec integers() { return LSpec(); }

  static LSpec primes(std::vector<unsigned long> S) {
    if (S.empty()) throw UsageError("prime set S must be nonempty");
    std::sort(S.begin(), S.end());
    if (std::adjacent_find(S.begin(), S.end()) != S.end())
      throw UsageError("prime set S has a repeated element");
    for (unsigned long p : S)
      if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    LSpec l;
    l.primes_ = std::move(S);
    return l;
  }

  bool is_integers() const { return primes_.empty(); }
  bool is_heavy() const { return !is_integers(); }
  const std::vector<unsigned long>& primes() const { return primes_; }

  // Part of |k| coprime to every prime in S (|k| itself for the integers).
  Int strip(const Int& k) const {
    Int r = abs(k);
    for (unsigned long p : primes_)
      while (r != 0 && mpz_divisible_ui_p(r.get_mpz_t(), p) != 0)
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    return r;
  }

  // k > 0 and every prime factor of k is in S.
  bool is_S_number(const Int& k) const { return k > 0 && strip(k) == 1; }

  bool contains(const Rat& x) const { return is_S_number(x.get_den()); }

  bool contains_all(const RatVec& v) const {
    return std::all_of(v.begin(), v.end(), [&](const Rat& x) { return contains(x); });
  }

  // Largest p such that L is closed under q-division for every q in {2..p}
  // (1 when not even 2 qualifies).
  unsigned long division_closure_bound() const {
    unsigned long p = 1;
    while (is_S_number(Int(p + 1))) ++p;
    return p;
  }

  // The smallest prime outside S.
  unsigned long first_excluded_prime() const {
    for (unsigned long q = 2;; ++q)
      if (is_prime(q) && !std::binary_search(primes_.begin(), primes_.end(), q)) return q;
  }

  // S-numbers up to `cap`, ascending (just {1} for the integers).
  std::vector<Int> S_numbers_up_to(const Int& cap) const {
    std::vector<Int> out{Int(1)};
    for (unsigned long p : primes_) {
      const std::size_t before = out.size();
      for (std::size_t i = 0; i < before; ++i) {
        Int k = out[i] * p;
        while (k <= cap) {
          out.push_back(k);
          k *= p;
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string name() const {
    if (is_integers()) return "Z";
    std::string s = "L{";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(primes_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const LSpec&, const LSpec&) = default;

 private:
  LSpec() = default;
  std::vector<unsigned long> primes_;
};

}  // namespace dualint
