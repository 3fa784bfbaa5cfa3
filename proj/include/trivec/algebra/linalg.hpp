#pragma once

#include <optional>
#include <vector>

#include "trivec/algebra/field.hpp"
#include "trivec/algebra/matrix.hpp"
#include "trivec/algebra/poly.hpp"
#include "trivec/kernels/kernels.hpp"

namespace trivec {

namespace detail {

// dst += f * src over n entries
template <Field F>
inline void row_axpy(const F& fld, typename F::Element* dst, const typename F::Element* src,
                     const typename F::Element& f, size_t n) {
  if constexpr (is_finite_field_v<F>) {
    if (fld.is_prime_field() && fld.characteristic() < (1u << 16) && n >= 8) {
      kernels::axpy_mod(dst, src, f, fld.characteristic(), n);
      return;
    }
  }
  for (size_t j = 0; j < n; ++j)
    if (!fld.is_zero(src[j])) dst[j] = fld.fma(dst[j], f, src[j]);
}

}  // namespace detail

// In-place reduced row echelon form; returns pivot columns.
template <Field F>
std::vector<size_t> rref_in_place(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t piv = m.rows();
    for (size_t i = r; i < m.rows(); ++i)
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == m.rows()) continue;
    if (piv != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto fac = f.neg(m(i, c));
      detail::row_axpy(f, m.row(i) + c, m.row(r) + c, fac, m.cols() - c);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Field F>
Matrix<F> rref(Matrix<F> m, std::vector<size_t>* pivots = nullptr) {
  auto p = rref_in_place(m);
  if (pivots) *pivots = std::move(p);
  return m;
}

template <Field F>
size_t rank(Matrix<F> m) {
  return rref_in_place(m).size();
}

template <Field F>
struct RankKernel {
  size_t rank = 0;
  std::vector<std::vector<typename F::Element>> kernel;  // rows in reduced echelon form
};

template <Field F>
RankKernel<F> rank_and_kernel(const Matrix<F>& m) {
  const F& f = m.field();
  std::vector<size_t> piv;
  Matrix<F> r = rref(m, &piv);
  RankKernel<F> out;
  out.rank = piv.size();
  std::vector<char> is_piv(m.cols(), 0);
  for (auto c : piv) is_piv[c] = 1;
  Matrix<F> k(f, m.cols() - piv.size(), m.cols());
  size_t row = 0;
  for (size_t j = 0; j < m.cols(); ++j) {
    if (is_piv[j]) continue;
    k(row, j) = f.one();
    for (size_t i = 0; i < piv.size(); ++i) k(row, piv[i]) = f.neg(r(i, j));
    ++row;
  }
  rref_in_place(k);
  for (size_t i = 0; i < k.rows(); ++i) out.kernel.push_back(k.row_vector(i));
  return out;
}

// Basis (rows) of {v : m v = 0}
template <Field F>
Matrix<F> kernel_matrix(const Matrix<F>& m) {
  auto rk = rank_and_kernel(m);
  return Matrix<F>::from_rows(m.field(), rk.kernel, m.cols());
}

// Nonzero rows of the RREF: a canonical basis of the row space.
template <Field F>
Matrix<F> row_basis(const Matrix<F>& m) {
  std::vector<size_t> piv;
  Matrix<F> r = rref(m, &piv);
  Matrix<F> out(m.field(), piv.size(), m.cols());
  for (size_t i = 0; i < piv.size(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = r(i, j);
  return out;
}

template <Field F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

// rows of `basis` (independent) completed to a basis of the whole space with
// standard unit vectors; the given rows come first
template <Field F>
Matrix<F> complete_basis(const Matrix<F>& basis) {
  const F& f = basis.field();
  const size_t n = basis.cols();
  Matrix<F> cur = basis;
  size_t rk = rank(cur);
  if (rk != basis.rows()) fail(Errc::invalid_input, "complete_basis: rows are dependent");
  for (size_t j = 0; j < n && rk < n; ++j) {
    Matrix<F> e(f, 1, n);
    e(0, j) = f.one();
    Matrix<F> trial = vstack(cur, e);
    if (rank(trial) > rk) {
      cur = std::move(trial);
      ++rk;
    }
  }
  return cur;
}

// intersection of the row spaces of a and b
template <Field F>
Matrix<F> intersect_rows(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  const size_t n = a.cols();
  // solve x a = y b: kernel of [a; -b]^T
  Matrix<F> st(f, n, a.rows() + b.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < n; ++j) st(j, i) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < n; ++j) st(j, a.rows() + i) = f.neg(b(i, j));
  auto rk = rank_and_kernel(st);
  Matrix<F> out(f, rk.kernel.size(), n);
  for (size_t k = 0; k < rk.kernel.size(); ++k)
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < n; ++j) out(k, j) = f.fma(out(k, j), rk.kernel[k][i], a(i, j));
  return row_basis(out);
}

template <Field F>
typename F::Element det(Matrix<F> m) {
  const F& f = m.field();
  if (m.rows() != m.cols()) fail(Errc::invalid_input, "determinant of a non-square matrix");
  const size_t n = m.rows();
  auto d = f.one();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t i = c; i < n; ++i)
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return f.zero();
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, m(c, c));
    auto inv = f.inv(m(c, c));
    for (size_t i = c + 1; i < n; ++i) {
      if (f.is_zero(m(i, c))) continue;
      auto fac = f.neg(f.mul(m(i, c), inv));
      detail::row_axpy(f, m.row(i) + c, m.row(c) + c, fac, n - c);
    }
  }
  return d;
}

// Laplace expansion along the first row; exponential, for small oracles.
template <Field F>
typename F::Element det_cofactor(const Matrix<F>& m) {
  const F& f = m.field();
  const size_t n = m.rows();
  if (n == 0) return f.one();
  if (n == 1) return m(0, 0);
  auto s = f.zero();
  for (size_t j = 0; j < n; ++j) {
    if (f.is_zero(m(0, j))) continue;
    Matrix<F> minor(f, n - 1, n - 1);
    for (size_t i = 1; i < n; ++i)
      for (size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) minor(i - 1, kk++) = m(i, k);
    auto t = f.mul(m(0, j), det_cofactor(minor));
    s = j % 2 ? f.sub(s, t) : f.add(s, t);
  }
  return s;
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const F& f = m.field();
  const size_t n = m.rows();
  if (n != m.cols()) fail(Errc::invalid_input, "inverse of a non-square matrix");
  Matrix<F> aug(f, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto piv = rref_in_place(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<F> out(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

template <Field F>
Matrix<F> inverse_or_throw(const Matrix<F>& m) {
  auto inv = inverse(m);
  if (!inv) fail(Errc::singular, "matrix is not invertible");
  return *inv;
}

// one solution of m x = b, if any
template <Field F>
std::optional<std::vector<typename F::Element>> solve(const Matrix<F>& m, const std::vector<typename F::Element>& b) {
  const F& f = m.field();
  Matrix<F> aug(f, m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref_in_place(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<typename F::Element> x(m.cols(), f.zero());
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
  return x;
}

template <Field F>
bool is_skew(const Matrix<F>& m) {
  const F& f = m.field();
  if (m.rows() != m.cols()) return false;
  for (size_t i = 0; i < m.rows(); ++i) {
    if (!f.is_zero(m(i, i))) return false;
    for (size_t j = i + 1; j < m.cols(); ++j)
      if (!f.is_zero(f.add(m(i, j), m(j, i)))) return false;
  }
  return true;
}

namespace detail {

template <Field F>
typename F::Element pfaffian_rec(const Matrix<F>& m, std::vector<size_t>& idx) {
  const F& f = m.field();
  if (idx.empty()) return f.one();
  const size_t i0 = idx[0];
  auto s = f.zero();
  for (size_t t = 1; t < idx.size(); ++t) {
    const auto& a = m(i0, idx[t]);
    if (f.is_zero(a)) continue;
    std::vector<size_t> rest;
    rest.reserve(idx.size() - 2);
    for (size_t u = 1; u < idx.size(); ++u)
      if (u != t) rest.push_back(idx[u]);
    auto term = f.mul(a, pfaffian_rec(m, rest));
    s = (t % 2 == 1) ? f.add(s, term) : f.sub(s, term);
  }
  return s;
}

}  // namespace detail

// Expansion along the first row; pf([[0,a],[-a,0]]) = a.
template <Field F>
typename F::Element pfaffian(const Matrix<F>& m) {
  if (m.rows() != m.cols() || !is_skew(m)) fail(Errc::not_skew, "pfaffian needs an alternating matrix");
  if (m.rows() % 2) fail(Errc::odd_size, "pfaffian of odd size " + std::to_string(m.rows()));
  std::vector<size_t> idx(m.rows());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return detail::pfaffian_rec(m, idx);
}

// Minimal polynomial via linear dependence among I, M, M^2, ...
template <Field F>
UPoly<F> minimal_polynomial(const Matrix<F>& m) {
  const F& f = m.field();
  const size_t n = m.rows();
  if (n != m.cols()) fail(Errc::invalid_input, "minimal polynomial of a non-square matrix");
  using E = typename F::Element;
  const size_t N = n * n;
  // echelon rows: vector part (N) plus coefficient part (n+1) tracking powers
  std::vector<std::vector<E>> basis;
  std::vector<size_t> lead;
  Matrix<F> power = Matrix<F>::identity(f, n);
  for (size_t k = 0; k <= n; ++k) {
    std::vector<E> v(N + n + 1, f.zero());
    for (size_t i = 0; i < N; ++i) v[i] = power.data()[i];
    v[N + k] = f.one();
    for (size_t b = 0; b < basis.size(); ++b) {
      const E& c = v[lead[b]];
      if (f.is_zero(c)) continue;
      auto fac = f.neg(c);
      for (size_t j = 0; j < v.size(); ++j) v[j] = f.fma(v[j], fac, basis[b][j]);
    }
    size_t l = N;
    for (size_t i = 0; i < N; ++i)
      if (!f.is_zero(v[i])) {
        l = i;
        break;
      }
    if (l == N) {
      std::vector<E> coeffs(v.begin() + N, v.begin() + N + k + 1);
      return UPoly<F>(f, std::move(coeffs)).monic();
    }
    auto inv = f.inv(v[l]);
    for (auto& x : v) x = f.mul(x, inv);
    basis.push_back(std::move(v));
    lead.push_back(l);
    power = power * m;
  }
  fail(Errc::invalid_input, "minimal polynomial degree exceeds size");
}

template <Field F>
bool is_semisimple(const Matrix<F>& m) {
  return is_squarefree(minimal_polynomial(m));
}

}  // namespace trivec
