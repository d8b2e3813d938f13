#pragma once
#ifndef CUBICLAB_MATRIX_HPP
#define CUBICLAB_MATRIX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cubiclab/scalar.hpp"

namespace cubiclab {

template <Scalar S>
using Vector = std::vector<S>;

/// Small dense row-major matrix over either backend. Sizes in this project are
/// at most a few hundred entries, so no expression templates.
template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionMismatch("matrix data size");
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  static Matrix diagonal(std::span<const S> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<S>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector<S> column(std::size_t j) const {
    Vector<S> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  /// Max-abs entry.
  S sup_norm() const {
    S m(0);
    for (const auto& v : data_) {
      S a = abs_value(v);
      if (a > m) m = a;
    }
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& v) { return cubiclab::is_zero(v); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const S& ail = a(i, l);
        if (cubiclab::is_zero(ail)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference");
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum");
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
    return c;
  }
  friend Matrix operator*(const S& s, const Matrix& a) {
    Matrix c = a;
    for (auto& v : c.data_) v *= s;
    return c;
  }

  Vector<S> apply(std::span<const S> x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector product");
    Vector<S> y(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  /// Submatrix on the given row and column index lists (0-based).
  Matrix select(std::span<const int> rws, std::span<const int> cls) const {
    Matrix m(rws.size(), cls.size());
    for (std::size_t i = 0; i < rws.size(); ++i)
      for (std::size_t j = 0; j < cls.size(); ++j) m(i, j) = (*this)(rws[i], cls[j]);
    return m;
  }

  template <Scalar T>
  Matrix<T> cast() const {
    std::vector<T> d;
    d.reserve(data_.size());
    for (const auto& v : data_) {
      if constexpr (std::is_same_v<T, double>) d.push_back(to_double(v));
      else d.push_back(T(v));
    }
    return Matrix<T>(rows_, cols_, std::move(d));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

/// Determinant by Gaussian elimination: exact over rationals, partial pivoting
/// over doubles. The empty matrix has determinant 1.
template <Scalar S>
S determinant(Matrix<S> a) {
  if (!a.square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  S det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    if constexpr (is_exact_v<S>) {
      while (piv < n && is_zero(a(piv, col))) ++piv;
      if (piv == n) return S(0);
    } else {
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
      if (a(piv, col) == 0.0) return 0.0;
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    const S p = a(col, col);
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      const S f = a(r, col) / p;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Exact null space basis of a rational matrix via reduced row echelon form.
inline std::vector<Vector<Rational>> kernel_basis(Matrix<Rational> a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && sgn(a(piv, col)) == 0) ++piv;
    if (piv == m) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
    const Rational p = a(row, col);
    for (std::size_t j = 0; j < n; ++j) a(row, j) /= p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(row, j);
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rank over the rationals.
inline std::size_t rank(const Matrix<Rational>& a) { return a.cols() - kernel_basis(a).size(); }

/// Inverse by Gauss-Jordan; throws RankDeficient on singular input.
template <Scalar S>
Matrix<S> inverse(Matrix<S> a) {
  if (!a.square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<S> inv = Matrix<S>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    if constexpr (is_exact_v<S>) {
      while (piv < n && is_zero(a(piv, col))) ++piv;
      if (piv == n) throw RankDeficient("singular matrix");
    } else {
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
      if (a(piv, col) == 0.0) throw RankDeficient("singular matrix");
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(col, j));
      std::swap(inv(piv, j), inv(col, j));
    }
    const S p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      const S f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <Scalar S>
Eigen::MatrixXd to_eigen(const Matrix<S>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = to_double(m(i, j));
  return e;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

template <Scalar S>
S sup_norm(std::span<const S> v) {
  S m(0);
  for (const auto& x : v) {
    S a = abs_value(x);
    if (a > m) m = a;
  }
  return m;
}

template <Scalar S>
Vector<double> to_double_vec(std::span<const S> v) {
  Vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

}  // namespace cubiclab

#endif  // CUBICLAB_MATRIX_HPP
