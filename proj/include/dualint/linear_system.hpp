#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "dualint/matrix.hpp"

namespace dualint {

using IndexSet = std::vector<std::size_t>;  // sorted, duplicate free, 0-based

// Mx <= b with integer data.
struct LinearSystem {
  IntMat M;
  IntVec b;

  LinearSystem() = default;
  LinearSystem(IntMat M_, IntVec b_) : M(std::move(M_)), b(std::move(b_)) {
    if (M.rows() == 0 || M.cols() == 0) throw UsageError("linear system needs m >= 1 and n >= 1");
    if (M.rows() != b.size()) throw UsageError("b has " + std::to_string(b.size()) +
                                               " entries but M has " +
                                               std::to_string(M.rows()) + " rows");
  }

  std::size_t m() const { return M.rows(); }
  std::size_t n() const { return M.cols(); }
  std::span<const Int> row(std::size_t i) const { return M.row(i); }

  friend bool operator==(const LinearSystem&, const LinearSystem&) = default;
};

inline IndexSet all_rows(std::size_t m) {
  IndexSet s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = i;
  return s;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// 1-based rendering, matching how constraint rows are numbered for users.
inline std::string index_set_string(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(s[k] + 1);
  }
  return out + "}";
}

}  // namespace dualint
