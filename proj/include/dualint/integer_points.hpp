#pragma once

#include <functional>
#include <optional>

#include "dualint/lattice.hpp"
#include "dualint/lp.hpp"

namespace dualint {

// Integer points of {x : A x <= b, E x = f}, optionally inside |x_j| <= box.
struct IntegerPointQuery {
  RatMat A;
  RatVec b;
  IntMat E;
  IntVec f;
  std::optional<Int> box;
};

// Visits integer points in lexicographic order of the lattice coordinates until
// the visitor returns false. The equalities are solved over Z first
// (x = x0 + K z) and each coordinate of z is bounded by LP with the earlier
// ones fixed. Throws when some coordinate is unbounded and no box was given.
class IntegerPointEnumerator {
 public:
  explicit IntegerPointEnumerator(IntegerPointQuery q) : q_(std::move(q)) {
    n_ = q_.A.cols() ? q_.A.cols() : q_.E.cols();
    if (q_.E.rows() > 0) {
      auto sol = integer_solutions(q_.E, q_.f);
      if (!sol) {
        empty_ = true;
        return;
      }
      x0_ = sol->particular;
      K_ = sol->kernel;
    } else {
      x0_.assign(n_, 0);
      for (std::size_t j = 0; j < n_; ++j) {
        IntVec e(n_, 0);
        e[j] = 1;
        K_.push_back(e);
      }
    }
    // rows in z-space: (A K) z <= b - A x0, plus the box
    auto add = [&](const RatVec& a, const Rat& rhs) {
      RatVec row(K_.size());
      Rat shift = 0;
      for (std::size_t k = 0; k < K_.size(); ++k)
        for (std::size_t j = 0; j < n_; ++j) row[k] += a[j] * K_[k][j];
      for (std::size_t j = 0; j < n_; ++j) shift += a[j] * x0_[j];
      rows_.push_back(std::move(row));
      rhs_.push_back(rhs - shift);
    };
    for (std::size_t i = 0; i < q_.A.rows(); ++i) add(q_.A.row_vec(i), q_.b[i]);
    if (q_.box) {
      for (std::size_t j = 0; j < n_; ++j)
        for (int s : {1, -1}) {
          RatVec a(n_, 0);
          a[j] = s;
          add(a, Rat(*q_.box));
        }
    }
  }

  // Returns false if the visitor stopped the enumeration early.
  bool run(const std::function<bool(const IntVec&)>& visit) {
    if (empty_) return true;
    IntVec z;
    return rec(z, visit);
  }

  std::optional<IntVec> first() {
    std::optional<IntVec> out;
    run([&](const IntVec& x) {
      out = x;
      return false;
    });
    return out;
  }

 private:
  IntVec to_x(const IntVec& z) const {
    IntVec x = x0_;
    for (std::size_t k = 0; k < z.size(); ++k)
      for (std::size_t j = 0; j < n_; ++j) x[j] += z[k] * K_[k][j];
    return x;
  }

  bool feasible(const IntVec& z) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rat s = 0;
      for (std::size_t k = 0; k < z.size(); ++k) s += rows_[i][k] * z[k];
      if (s > rhs_[i]) return false;
    }
    return true;
  }

  // Range of z_j over the relaxation with z_0..z_{j-1} fixed; nullopt if empty.
  std::optional<std::pair<Int, Int>> range(const IntVec& z) const {
    const std::size_t j = z.size(), rest = K_.size() - j;
    LpProblem p;
    p.A = RatMat(rows_.size(), rest);
    p.b.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rat fixed = 0;
      for (std::size_t k = 0; k < j; ++k) fixed += rows_[i][k] * z[k];
      for (std::size_t k = 0; k < rest; ++k) p.A(i, k) = rows_[i][j + k];
      p.b[i] = rhs_[i] - fixed;
    }
    Int bounds[2];
    for (int side = 0; side < 2; ++side) {
      p.c.assign(rest, 0);
      p.c[0] = side == 0 ? -1 : 1;
      const LpOutcome out = solve_lp(p);
      if (out.status == LpStatus::Infeasible) return std::nullopt;
      if (out.status == LpStatus::Unbounded)
        throw UsageError("integer point enumeration over an unbounded set needs a box");
      bounds[side] = side == 0 ? ceil_div(-out.optimal_value) : floor_div(out.optimal_value);
    }
    if (bounds[0] > bounds[1]) return std::nullopt;
    return std::make_pair(bounds[0], bounds[1]);
  }

  bool rec(IntVec& z, const std::function<bool(const IntVec&)>& visit) {
    if (z.size() == K_.size()) {
      if (!feasible(z)) return true;
      return visit(to_x(z));
    }
    const auto r = range(z);
    if (!r) return true;
    for (Int v = r->first; v <= r->second; ++v) {
      z.push_back(v);
      const bool go = rec(z, visit);
      z.pop_back();
      if (!go) return false;
    }
    return true;
  }

  IntegerPointQuery q_;
  std::size_t n_ = 0;
  bool empty_ = false;
  IntVec x0_;
  std::vector<IntVec> K_;
  std::vector<RatVec> rows_;
  RatVec rhs_;
};

inline std::optional<IntVec> find_integer_point(IntegerPointQuery q) {
  return IntegerPointEnumerator(std::move(q)).first();
}

}  // namespace dualint
