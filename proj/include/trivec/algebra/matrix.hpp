#pragma once

#include <vector>

#include "trivec/algebra/field.hpp"

namespace trivec {

// Row-major dense matrix over a field; the field handle travels with the data.
template <Field F>
class Matrix {
 public:
  using E = typename F::Element;

  Matrix() = default;
  Matrix(F f, size_t r, size_t c) : f_(std::move(f)), r_(r), c_(c), a_(r * c, f_.zero()) {}
  Matrix(F f, size_t r, size_t c, std::vector<E> data) : f_(std::move(f)), r_(r), c_(c), a_(std::move(data)) {
    if (a_.size() != r * c) fail(Errc::invalid_input, "matrix data size mismatch");
  }
  static Matrix identity(const F& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }
  static Matrix from_rows(const F& f, const std::vector<std::vector<E>>& rows, size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  const F& field() const { return f_; }
  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  E& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const E& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
  E* row(size_t i) { return a_.data() + i * c_; }
  const E* row(size_t i) const { return a_.data() + i * c_; }
  std::vector<E> row_vector(size_t i) const { return {row(i), row(i) + c_}; }
  const std::vector<E>& data() const { return a_; }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) fail(Errc::invalid_input, "matrix shape mismatch in product");
    Matrix m(f_, r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        const E& x = (*this)(i, k);
        if (f_.is_zero(x)) continue;
        for (size_t j = 0; j < o.c_; ++j) m(i, j) = f_.fma(m(i, j), x, o(k, j));
      }
    return m;
  }
  std::vector<E> apply(const std::vector<E>& v) const {
    std::vector<E> out(r_, f_.zero());
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) out[i] = f_.fma(out[i], (*this)(i, j), v[j]);
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.add(a_[i], o.a_[i]);
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.sub(a_[i], o.a_[i]);
    return m;
  }
  Matrix scale(const E& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x = f_.mul(x, s);
    return m;
  }
  Matrix transpose() const {
    Matrix m(f_, c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!f_.equal(a_[i], o.a_[i])) return false;
    return true;
  }
  bool is_zero() const {
    for (auto& x : a_)
      if (!f_.is_zero(x)) return false;
    return true;
  }

 private:
  F f_{};
  size_t r_ = 0, c_ = 0;
  std::vector<E> a_;
};

}  // namespace trivec
