#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualint/rational.hpp"

namespace dualint {

// Dense row-major matrix. Entries satisfy rows()*cols() == data().size().
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw UsageError("matrix data size does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw UsageError("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix A(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw UsageError("row length does not match column count");
      std::copy(rows[i].begin(), rows[i].end(), A.row_begin(i));
    }
    return A;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> row_vec(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  std::vector<T> col_vec(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Rows picked in the given order.
  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix s(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::copy(row(idx[k]).begin(), row(idx[k]).end(), s.row_begin(k));
    }
    return s;
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw UsageError("appended row has wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_begin(a), row_begin(a) + cols_, row_begin(b));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  typename std::vector<T>::iterator row_begin(std::size_t i) {
    return data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

template <class A, class B>
auto multiply(const Matrix<A>& x, const Matrix<B>& y) {
  using R = std::conditional_t<std::is_same_v<A, Rat> || std::is_same_v<B, Rat>, Rat, Int>;
  if (x.cols() != y.rows()) throw UsageError("matrix product with incompatible shapes");
  Matrix<R> out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += R(x(i, k)) * R(y(k, j));
    }
  return out;
}

template <class A, class B>
auto multiply(const Matrix<A>& x, std::span<const B> v) {
  using R = std::conditional_t<std::is_same_v<A, Rat> || std::is_same_v<B, Rat>, Rat, Int>;
  if (x.cols() != v.size()) throw UsageError("matrix-vector product with incompatible shapes");
  std::vector<R> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out[i] += R(x(i, j)) * R(v[j]);
  return out;
}

template <class A, class B>
auto multiply(const Matrix<A>& x, const std::vector<B>& v) {
  return multiply(x, std::span<const B>(v));
}

inline RatMat to_rat(const IntMat& A) {
  RatMat R(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) R(i, j) = A(i, j);
  return R;
}

// Reduced row echelon form over Q.
struct Echelon {
  RatMat R;                         // reduced rows; rows beyond rank are zero
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

template <class T>
Echelon rref(const Matrix<T>& A) {
  Echelon e;
  e.R = RatMat(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) e.R(i, j) = A(i, j);
  RatMat& R = e.R;
  std::size_t r = 0;
  for (std::size_t c = 0; c < R.cols() && r < R.rows(); ++c) {
    std::size_t p = r;
    while (p < R.rows() && R(p, c) == 0) ++p;
    if (p == R.rows()) continue;
    R.swap_rows(r, p);
    const Rat inv = 1 / R(r, c);
    for (std::size_t j = c; j < R.cols(); ++j) R(r, j) *= inv;
    for (std::size_t i = 0; i < R.rows(); ++i) {
      if (i == r || R(i, c) == 0) continue;
      const Rat f = R(i, c);
      for (std::size_t j = c; j < R.cols(); ++j) R(i, j) -= f * R(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

template <class T>
std::size_t rank(const Matrix<T>& A) {
  return rref(A).rank();
}

// Some rational solution of Ax = b, free variables set to zero.
template <class T, class U>
std::optional<RatVec> solve_rational(const Matrix<T>& A, std::span<const U> b) {
  if (A.rows() != b.size()) throw UsageError("solve_rational: dimension mismatch");
  RatMat aug(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  Echelon e = rref(aug);
  RatVec x(A.cols());
  for (std::size_t k = 0; k < e.rank(); ++k) {
    if (e.pivots[k] == A.cols()) return std::nullopt;
    x[e.pivots[k]] = e.R(k, A.cols());
  }
  return x;
}

template <class T, class U>
std::optional<RatVec> solve_rational(const Matrix<T>& A, const std::vector<U>& b) {
  return solve_rational(A, std::span<const U>(b));
}

// Basis of {x : Ax = 0} over Q, one vector per free column.
template <class T>
std::vector<RatVec> kernel_basis(const Matrix<T>& A) {
  Echelon e = rref(A);
  std::vector<bool> is_pivot(A.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < A.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(A.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.rank(); ++k) v[e.pivots[k]] = -e.R(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// True iff v lies in the row space of A.
template <class T, class U>
bool in_row_span(const Matrix<T>& A, std::span<const U> v) {
  Matrix<Rat> B(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) B(i, j) = A(i, j);
  const std::size_t r = rank(B);
  RatVec rv(v.begin(), v.end());
  B.append_row(std::span<const Rat>(rv));
  return rank(B) == r;
}

template <class T>
std::string to_string(const Matrix<T>& A) {
  std::string s = "[";
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i) s += ", ";
    s += to_string(A.row(i));
  }
  return s + "]";
}

}  // namespace dualint
