#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dualint/lspec.hpp"
#include "dualint/normal_form.hpp"

namespace dualint {

// x = particular + sum_k z_k * kernel[k], z integer, describes every integer solution.
struct IntegerSolutionSet {
  IntVec particular;
  std::vector<IntVec> kernel;
};

// Certificate that Ax = b has no solution over L: A^T u is integral while
// b^T u is not in L.
struct AlternativeCertificate {
  RatVec u;
};

// Smith form of a fixed matrix, reused across right-hand sides.
class LatticeSolver {
 public:
  explicit LatticeSolver(IntMat A) : A_(std::move(A)) {
    if (A_.empty()) throw UsageError("lattice solver on an empty matrix");
    nf_ = smith(A_);
  }

  const IntMat& matrix() const { return A_; }
  const NormalForm& normal_form() const { return nf_; }
  std::size_t rank() const { return nf_.rank; }

  // Integer basis of {x in Z^n : Ax = 0}: the trailing columns of V.
  std::vector<IntVec> kernel() const {
    std::vector<IntVec> k;
    for (std::size_t j = nf_.rank; j < A_.cols(); ++j) k.push_back(nf_.V.col_vec(j));
    return k;
  }

  std::optional<IntegerSolutionSet> integer_solutions(std::span<const Int> b) const {
    const IntVec c = transformed(b);
    IntVec z(A_.cols(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < nf_.rank) {
        if (!mpz_divisible_p(c[i].get_mpz_t(), nf_.D(i, i).get_mpz_t())) return std::nullopt;
        mpz_divexact(z[i].get_mpz_t(), c[i].get_mpz_t(), nf_.D(i, i).get_mpz_t());
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    return IntegerSolutionSet{multiply(nf_.V, z), kernel()};
  }

  std::optional<IntVec> solve_integer(std::span<const Int> b) const {
    auto s = integer_solutions(b);
    if (!s) return std::nullopt;
    return s->particular;
  }

  // A solution over L, or a certificate of the alternative. In D z = U b the
  // rank rows force z_i = c_i / d_i; the rest need c_i = 0.
  std::variant<RatVec, AlternativeCertificate> solve_in_L(std::span<const Int> b,
                                                          const LSpec& L) const {
    const IntVec c = transformed(b);
    RatVec z(A_.cols(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < nf_.rank) {
        z[i] = make_rat(c[i], nf_.D(i, i));
        if (!L.contains(z[i])) return certificate_row(i, Rat(1) / Rat(nf_.D(i, i)));
      } else if (c[i] != 0) {
        // u = U_i / (q c_i) gives A^T u = 0 and b^T u = 1/q with q outside S
        const Int q = L.is_integers() ? Int(2) : Int(L.first_excluded_prime());
        return certificate_row(i, Rat(1) / Rat(q * c[i]));
      }
    }
    return multiply(nf_.V, std::span<const Rat>(z));
  }

 private:
  IntVec transformed(std::span<const Int> b) const {
    if (b.size() != A_.rows()) throw UsageError("right-hand side length does not match rows");
    return multiply(nf_.U, b);
  }

  AlternativeCertificate certificate_row(std::size_t i, const Rat& scale) const {
    AlternativeCertificate cert;
    cert.u.resize(A_.rows());
    for (std::size_t j = 0; j < A_.rows(); ++j) cert.u[j] = scale * Rat(nf_.U(i, j));
    return cert;
  }

  IntMat A_;
  NormalForm nf_;
};

inline std::optional<IntegerSolutionSet> integer_solutions(const IntMat& A, std::span<const Int> b) {
  if (A.rows() != b.size()) throw UsageError("solve_integer: dimension mismatch");
  return LatticeSolver(A).integer_solutions(b);
}

inline std::optional<IntVec> solve_integer(const IntMat& A, std::span<const Int> b) {
  if (A.rows() != b.size()) throw UsageError("solve_integer: dimension mismatch");
  return LatticeSolver(A).solve_integer(b);
}

inline std::optional<IntVec> solve_integer(const IntMat& A, const IntVec& b) {
  return solve_integer(A, std::span<const Int>(b));
}

inline std::variant<RatVec, AlternativeCertificate> solve_in_L_certified(const IntMat& A,
                                                                        std::span<const Int> b,
                                                                        const LSpec& L) {
  if (A.rows() != b.size()) throw UsageError("solve_in_L: dimension mismatch");
  return LatticeSolver(A).solve_in_L(b, L);
}

inline std::optional<RatVec> solve_in_L(const IntMat& A, std::span<const Int> b, const LSpec& L) {
  auto r = solve_in_L_certified(A, b, L);
  if (auto* x = std::get_if<RatVec>(&r)) return *x;
  return std::nullopt;
}

inline std::optional<RatVec> solve_in_L(const IntMat& A, const IntVec& b, const LSpec& L) {
  return solve_in_L(A, std::span<const Int>(b), L);
}

// Checks a certificate independently of how it was produced.
inline bool verify_alternative(const IntMat& A, std::span<const Int> b, const LSpec& L,
                               const AlternativeCertificate& cert) {
  if (cert.u.size() != A.rows()) return false;
  const RatVec atu = multiply(A.transpose(), std::span<const Rat>(cert.u));
  for (const Rat& x : atu)
    if (!is_integer(x)) return false;
  return !L.contains(dot(b, std::span<const Rat>(cert.u)));
}

struct SingleEqResult {
  bool solvable = false;
  RatVec witness;  // a . witness == c when solvable
};

// a . u = c over L: solvable iff c / gcd(a) lies in L.
inline SingleEqResult single_eq_solvable_in_L(std::span<const Int> a, const Int& c, const LSpec& L) {
  const BezoutResult bz = gcd_bezout(a);
  SingleEqResult r;
  if (bz.g == 0) {
    r.solvable = (c == 0);
    if (r.solvable) r.witness.assign(a.size(), Rat(0));
    return r;
  }
  const Rat q = make_rat(c, bz.g);
  if (!L.contains(q)) return r;
  r.solvable = true;
  for (const Int& k : bz.coeffs) r.witness.push_back(q * Rat(k));
  return r;
}

inline SingleEqResult single_eq_solvable_in_L(const IntVec& a, const Int& c, const LSpec& L) {
  return single_eq_solvable_in_L(std::span<const Int>(a), c, L);
}

enum class Orientation { Rows, Columns };

// The chosen vectors generate span ∩ Z^n as a lattice iff every nonzero
// elementary divisor is one.
inline bool is_Z_GSS(const IntMat& A, Orientation o) {
  const NormalForm nf = smith(o == Orientation::Rows ? A.transpose() : A);
  for (std::size_t i = 0; i < nf.rank; ++i)
    if (nf.D(i, i) != 1) return false;
  return true;
}

}  // namespace dualint
