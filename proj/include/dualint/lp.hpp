#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "dualint/linear_system.hpp"

namespace dualint {

enum class LpStatus { Optimal, Unbounded, Infeasible };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::Infeasible: return "infeasible";
  }
  return "?";
}

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rat optimal_value;
  RatVec primal_point;
  RatVec dual_point;  // one entry per row; >= 0 on inequality rows
  RatVec ray;         // improving direction when Unbounded
  std::size_t pivots = 0;
};

// max c^T x  s.t.  A_i x <= b_i (or == b_i when equality[i]),  x_j >= 0 when nonneg[j].
// Empty equality / nonneg vectors mean "none".
struct LpProblem {
  RatMat A;
  RatVec b;
  RatVec c;
  std::vector<char> equality;
  std::vector<char> nonneg;
};

namespace detail {

// Dense two-phase primal simplex over exact rationals with Bland's rule.
class Simplex {
 public:
  explicit Simplex(const LpProblem& p) : P_(p), m_(p.A.rows()), n_(p.A.cols()) {
    if (P_.b.size() != m_) throw UsageError("LP: b length does not match rows");
    if (P_.c.size() != n_) throw UsageError("LP: c length does not match columns");
    if (!P_.equality.empty() && P_.equality.size() != m_) throw UsageError("LP: equality flags");
    if (!P_.nonneg.empty() && P_.nonneg.size() != n_) throw UsageError("LP: nonneg flags");
    build();
  }

  LpOutcome run() {
    LpOutcome out;
    if (!artificial_.empty()) {
      RatVec cost(N_, 0);
      for (std::size_t a : artificial_) cost[a] = -1;
      const std::optional<std::size_t> r = optimize(cost, /*allow_artificial=*/true);
      if (r) throw InternalError("LP phase one reported unbounded");
      Rat infeas = 0;
      for (std::size_t k = 0; k < m_; ++k)
        if (is_artificial_[basis_[k]]) infeas += rhs(k);
      if (infeas != 0) {
        out.status = LpStatus::Infeasible;
        out.pivots = pivots_;
        return out;
      }
      drive_out_artificials();
    }
    RatVec cost(N_, 0);
    for (std::size_t j = 0; j < n_; ++j) {
      cost[plus_[j]] = P_.c[j];
      if (minus_[j] != npos) cost[minus_[j]] = -P_.c[j];
    }
    const std::optional<std::size_t> enter = optimize(cost, false);
    out.pivots = pivots_;
    if (enter) {
      out.status = LpStatus::Unbounded;
      RatVec z(N_, 0);
      z[*enter] = 1;
      for (std::size_t k = 0; k < m_; ++k) z[basis_[k]] = -at(k, *enter);
      out.ray = to_x(z);
      out.primal_point = to_x(values());
      return out;
    }
    out.status = LpStatus::Optimal;
    out.primal_point = to_x(values());
    out.optimal_value = dot(std::span<const Rat>(P_.c), std::span<const Rat>(out.primal_point));
    out.dual_point.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      Rat y = 0;
      for (std::size_t k = 0; k < m_; ++k) {
        const Rat& cb = cost[basis_[k]];
        if (cb != 0) y += cb * at(k, unit_[i]);
      }
      out.dual_point[i] = unit_is_slack_[i] ? y : Rat(sign_[i] * y);
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Rat& at(std::size_t k, std::size_t j) { return T_[k * (N_ + 1) + j]; }
  const Rat& at(std::size_t k, std::size_t j) const { return T_[k * (N_ + 1) + j]; }
  Rat& rhs(std::size_t k) { return T_[k * (N_ + 1) + N_]; }

  bool is_eq(std::size_t i) const { return !P_.equality.empty() && P_.equality[i]; }
  bool is_nonneg(std::size_t j) const { return !P_.nonneg.empty() && P_.nonneg[j]; }

  void build() {
    plus_.assign(n_, npos);
    minus_.assign(n_, npos);
    std::size_t col = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      plus_[j] = col++;
      if (!is_nonneg(j)) minus_[j] = col++;
    }
    std::vector<std::size_t> slack(m_, npos), art(m_, npos);
    sign_.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i)
      if (!is_eq(i)) slack[i] = col++;
    for (std::size_t i = 0; i < m_; ++i) {
      if (P_.b[i] < 0) sign_[i] = -1;
      if (is_eq(i) || P_.b[i] < 0) {
        art[i] = col++;
        artificial_.push_back(art[i]);
      }
    }
    N_ = col;
    is_artificial_.assign(N_, false);
    for (std::size_t a : artificial_) is_artificial_[a] = true;
    T_.assign(m_ * (N_ + 1), Rat(0));
    basis_.assign(m_, npos);
    unit_.assign(m_, npos);
    unit_is_slack_.assign(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rat s = sign_[i];
      for (std::size_t j = 0; j < n_; ++j) {
        at(i, plus_[j]) = s * P_.A(i, j);
        if (minus_[j] != npos) at(i, minus_[j]) = -s * P_.A(i, j);
      }
      if (slack[i] != npos) {
        at(i, slack[i]) = s;
        unit_[i] = slack[i];
        unit_is_slack_[i] = true;
      } else {
        unit_[i] = art[i];
      }
      if (art[i] != npos) at(i, art[i]) = 1;
      rhs(i) = s * P_.b[i];
      basis_[i] = art[i] != npos ? art[i] : slack[i];
    }
    // 2^(rows + columns), saturated
    const std::size_t e = m_ + N_;
    pivot_cap_ = e >= 62 ? (std::size_t(1) << 62) : (std::size_t(1) << e);
  }

  void pivot(std::size_t r, std::size_t e) {
    if (++pivots_ > pivot_cap_) throw InternalError("simplex exceeded its pivot bound");
    const Rat inv = 1 / at(r, e);
    for (std::size_t j = 0; j <= N_; ++j)
      if (at(r, j) != 0) at(r, j) *= inv;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == r || at(k, e) == 0) continue;
      const Rat f = at(k, e);
      for (std::size_t j = 0; j <= N_; ++j)
        if (at(r, j) != 0) at(k, j) -= f * at(r, j);
    }
    basis_[r] = e;
  }

  // Maximizes cost; returns the entering column of an unbounded direction, if any.
  std::optional<std::size_t> optimize(const RatVec& cost, bool allow_artificial) {
    std::vector<char> basic(N_, 0);
    for (;;) {
      std::fill(basic.begin(), basic.end(), 0);
      for (std::size_t k = 0; k < m_; ++k) basic[basis_[k]] = 1;
      std::size_t enter = npos;
      for (std::size_t j = 0; j < N_ && enter == npos; ++j) {
        if (basic[j] || (!allow_artificial && is_artificial_[j])) continue;
        Rat d = cost[j];
        for (std::size_t k = 0; k < m_; ++k) {
          const Rat& cb = cost[basis_[k]];
          if (cb != 0 && at(k, j) != 0) d -= cb * at(k, j);
        }
        if (d > 0) enter = j;
      }
      if (enter == npos) return std::nullopt;
      std::size_t leave = npos;
      Rat best;
      for (std::size_t k = 0; k < m_; ++k) {
        if (at(k, enter) <= 0) continue;
        Rat ratio = rhs(k) / at(k, enter);
        if (leave == npos || ratio < best || (ratio == best && basis_[k] < basis_[leave])) {
          leave = k;
          best = ratio;
        }
      }
      if (leave == npos) return enter;
      pivot(leave, enter);
    }
  }

  // Slack columns give the constraint matrix full row rank, so a basic
  // artificial can always be swapped out unless its row is an equality row
  // that is a combination of the others; such an artificial stays at zero.
  void drive_out_artificials() {
    for (std::size_t k = 0; k < m_; ++k) {
      if (!is_artificial_[basis_[k]]) continue;
      for (std::size_t j = 0; j < N_; ++j) {
        if (is_artificial_[j] || at(k, j) == 0) continue;
        pivot(k, j);
        break;
      }
    }
  }

  RatVec values() const {
    RatVec z(N_, 0);
    for (std::size_t k = 0; k < m_; ++k) z[basis_[k]] = T_[k * (N_ + 1) + N_];
    return z;
  }

  RatVec to_x(const RatVec& z) const {
    RatVec x(n_, 0);
    for (std::size_t j = 0; j < n_; ++j) {
      x[j] = z[plus_[j]];
      if (minus_[j] != npos) x[j] -= z[minus_[j]];
    }
    return x;
  }

  const LpProblem& P_;
  std::size_t m_, n_, N_ = 0;
  std::vector<std::size_t> plus_, minus_, basis_, artificial_, unit_;
  std::vector<char> is_artificial_, unit_is_slack_;
  std::vector<int> sign_;
  std::vector<Rat> T_;
  std::size_t pivots_ = 0, pivot_cap_ = 0;
};

}  // namespace detail

inline LpOutcome solve_lp(const LpProblem& p) { return detail::Simplex(p).run(); }

// max { w^T x : Mx <= b }; the dual point solves min { b^T y : M^T y = w, y >= 0 }.
inline LpOutcome solve(const LinearSystem& sys, const RatVec& w) {
  if (w.size() != sys.n()) throw UsageError("weight length does not match the number of columns");
  LpProblem p{to_rat(sys.M), to_rat(std::span<const Int>(sys.b)), w, {}, {}};
  return solve_lp(p);
}

inline LpOutcome solve(const LinearSystem& sys, const IntVec& w) {
  return solve(sys, to_rat(std::span<const Int>(w)));
}

inline bool is_admissible(const LinearSystem& sys, const RatVec& w) {
  return solve(sys, w).status == LpStatus::Optimal;
}

inline bool is_admissible(const LinearSystem& sys, const IntVec& w) {
  return is_admissible(sys, to_rat(std::span<const Int>(w)));
}

}  // namespace dualint
