#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dahakz/scalar.hpp"

namespace dahakz {

// Dense matrix over an exact field (Rational or Cyclotomic).
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c, F(0)) {}
  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  F& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const F& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::logic_error("matrix dimension mismatch");
    Matrix m(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        const F& x = (*this)(i, k);
        if (is_zero(x)) continue;
        for (size_t j = 0; j < o.c_; ++j)
          if (!is_zero(o(k, j))) m(i, j) += x * o(k, j);
      }
    return m;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
  }
  Matrix scaled(const F& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
  }
  std::vector<F> apply(const std::vector<F>& v) const {
    std::vector<F> out(r_, F(0));
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  bool is_zero_matrix() const {
    for (auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && (*this - o).is_zero_matrix(); }
  Matrix transpose() const {
    Matrix m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  F trace() const {
    F t(0);
    for (size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<F> a_;
};

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<size_t> rref(Matrix<F>& m) {
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    size_t p = row;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    F inv = F(1) / m(row, c);
    for (size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, c))) continue;
      F f = m(r, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(r, j) -= f * m(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

template <class F>
size_t rank(Matrix<F> m) {
  return rref(m).size();
}

// Basis of the right null space, as columns of the returned matrix.
template <class F>
Matrix<F> nullspace(Matrix<F> m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<size_t> free;
  for (size_t j = 0; j < m.cols(); ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix<F> ns(m.cols(), free.size());
  for (size_t k = 0; k < free.size(); ++k) {
    ns(free[k], k) = F(1);
    for (size_t r = 0; r < piv.size(); ++r) ns(piv[r], k) = -m(r, free[k]);
  }
  return ns;
}

// Inverse of a square matrix; throws if singular.
template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  size_t n = m.rows();
  if (n != m.cols()) throw std::logic_error("inverse of non-square matrix");
  Matrix<F> aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw std::domain_error("singular matrix");
  Matrix<F> inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
F determinant(Matrix<F> m) {
  size_t n = m.rows();
  F det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return F(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    F inv = F(1) / m(c, c);
    for (size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      F f = m(r, c) * inv;
      for (size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

// Stack matrices vertically (same column count).
template <class F>
Matrix<F> vstack(const std::vector<Matrix<F>>& ms) {
  size_t rows = 0, cols = ms.empty() ? 0 : ms[0].cols();
  for (auto& m : ms) rows += m.rows();
  Matrix<F> out(rows, cols);
  size_t off = 0;
  for (auto& m : ms) {
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < cols; ++j) out(off + i, j) = m(i, j);
    off += m.rows();
  }
  return out;
}

template <class F>
Matrix<F> block_diagonal(const std::vector<Matrix<F>>& ms) {
  size_t n = 0;
  for (auto& m : ms) n += m.rows();
  Matrix<F> out(n, n);
  size_t off = 0;
  for (auto& m : ms) {
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) out(off + i, off + j) = m(i, j);
    off += m.rows();
  }
  return out;
}

using QMatrix = Matrix<Rational>;
using CycMatrix = Matrix<Cyclotomic>;

inline CycMatrix to_cyclotomic(const QMatrix& m) {
  CycMatrix c(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) c(i, j) = Cyclotomic(m(i, j));
  return c;
}

}  // namespace dahakz
