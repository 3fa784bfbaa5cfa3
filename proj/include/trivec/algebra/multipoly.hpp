#pragma once

// Sparse multivariate polynomials: exponent vector -> nonzero coefficient.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "trivec/algebra/field.hpp"
#include "trivec/algebra/poly.hpp"

namespace trivec {

using Exponent = std::vector<std::uint16_t>;

template <Field F>
class MultiPoly {
 public:
  using E = typename F::Element;
  using Terms = std::map<Exponent, E>;

  MultiPoly() = default;
  MultiPoly(F f, unsigned nvars) : f_(std::move(f)), n_(nvars) {}

  static MultiPoly constant(const F& f, unsigned n, const E& a) {
    MultiPoly r(f, n);
    r.add_term(Exponent(n, 0), a);
    return r;
  }
  static MultiPoly var(const F& f, unsigned n, unsigned i) {
    MultiPoly r(f, n);
    Exponent e(n, 0);
    e[i] = 1;
    r.add_term(e, f.one());
    return r;
  }

  const F& field() const { return f_; }
  unsigned nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  bool is_constant() const { return t_.empty() || (t_.size() == 1 && total(t_.begin()->first) == 0); }
  E constant_term() const {
    auto it = t_.find(Exponent(n_, 0));
    return it == t_.end() ? f_.zero() : it->second;
  }

  void add_term(const Exponent& e, const E& c) {
    if (e.size() != n_) fail(Errc::invalid_input, "exponent length mismatch");
    if (f_.is_zero(c)) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
      it->second = f_.add(it->second, c);
      if (f_.is_zero(it->second)) t_.erase(it);
    }
  }
  E coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? f_.zero() : it->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& [e, c] : t_) d = std::max(d, total(e));
    return d;
  }
  unsigned degree_in(unsigned v) const {
    unsigned d = 0;
    for (auto& [e, c] : t_) d = std::max<unsigned>(d, e[v]);
    return d;
  }
  bool involves(unsigned v) const {
    for (auto& [e, c] : t_)
      if (e[v]) return true;
    return false;
  }

  MultiPoly operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r(f_, n_);
    for (auto& [e, c] : t_) r.t_.emplace(e, f_.neg(c));
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }
  MultiPoly operator*(const MultiPoly& o) const {
    MultiPoly r(f_, n_);
    Exponent e(n_);
    for (auto& [ea, ca] : t_)
      for (auto& [eb, cb] : o.t_) {
        for (unsigned i = 0; i < n_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        r.add_term(e, f_.mul(ca, cb));
      }
    return r;
  }
  MultiPoly scale(const E& a) const {
    MultiPoly r(f_, n_);
    if (f_.is_zero(a)) return r;
    for (auto& [e, c] : t_) r.add_term(e, f_.mul(c, a));
    return r;
  }
  MultiPoly pow(unsigned k) const {
    MultiPoly r = constant(f_, n_, f_.one());
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  bool operator==(const MultiPoly& o) const {
    if (n_ != o.n_ || t_.size() != o.t_.size()) return false;
    auto a = t_.begin();
    for (auto b = o.t_.begin(); b != o.t_.end(); ++a, ++b)
      if (a->first != b->first || !f_.equal(a->second, b->second)) return false;
    return true;
  }

  E eval(const std::vector<E>& x) const {
    E s = f_.zero();
    for (auto& [e, c] : t_) {
      E m = c;
      for (unsigned i = 0; i < n_; ++i)
        if (e[i]) m = f_.mul(m, f_.pow(x[i], e[i]));
      s = f_.add(s, m);
    }
    return s;
  }

  MultiPoly derivative(unsigned v) const {
    MultiPoly r(f_, n_);
    for (auto& [e, c] : t_) {
      if (!e[v]) continue;
      Exponent ne = e;
      --ne[v];
      r.add_term(ne, f_.mul(c, f_.from_int(e[v])));
    }
    return r;
  }

  // substitute x_v := a, keeping nvars (x_v no longer occurs)
  MultiPoly specialize(unsigned v, const E& a) const {
    MultiPoly r(f_, n_);
    for (auto& [e, c] : t_) {
      Exponent ne = e;
      ne[v] = 0;
      r.add_term(ne, f_.mul(c, f_.pow(a, e[v])));
    }
    return r;
  }

  // coefficients of x_v^i as polynomials not involving x_v
  std::vector<MultiPoly> coefficients_in(unsigned v) const {
    std::vector<MultiPoly> out(degree_in(v) + 1, MultiPoly(f_, n_));
    for (auto& [e, c] : t_) {
      Exponent ne = e;
      ne[v] = 0;
      out[e[v]].add_term(ne, c);
    }
    return out;
  }

  // univariate view when only x_v can occur
  UPoly<F> to_univariate(unsigned v) const {
    std::vector<E> c(degree_in(v) + 1, f_.zero());
    for (auto& [e, a] : t_) {
      for (unsigned i = 0; i < n_; ++i)
        if (i != v && e[i]) fail(Errc::invalid_input, "polynomial is not univariate");
      c[e[v]] = a;
    }
    return UPoly<F>(f_, std::move(c));
  }

  template <class G, class Map>
  MultiPoly<G> map_coefficients(const G& g, Map&& m) const {
    MultiPoly<G> r(g, n_);
    for (auto& [e, c] : t_) r.add_term(e, m(c));
    return r;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + f_.to_string(it->second) + ")";
      for (unsigned i = 0; i < n_; ++i)
        if (it->first[i]) s += "*x" + std::to_string(i + 1) + (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
    }
    return s;
  }

 private:
  static unsigned total(const Exponent& e) {
    unsigned d = 0;
    for (auto v : e) d += v;
    return d;
  }

  F f_{};
  unsigned n_ = 0;
  Terms t_;
};

// Division-free determinant (Berkowitz) over the polynomial ring.
template <Field F>
MultiPoly<F> berkowitz_det(const std::vector<std::vector<MultiPoly<F>>>& a, const F& f, unsigned nvars) {
  const size_t n = a.size();
  using MP = MultiPoly<F>;
  if (n == 0) return MP::constant(f, nvars, f.one());
  // characteristic polynomial coefficients of leading principal submatrices
  std::vector<MP> c{MP::constant(f, nvars, f.one()), -a[0][0]};
  for (size_t r = 1; r < n; ++r) {
    // column R = a[0..r-1][r], row S = a[r][0..r-1], submatrix A_r = a[0..r-1][0..r-1]
    std::vector<MP> t(r + 2, MP(f, nvars));
    t[0] = MP::constant(f, nvars, f.one());
    t[1] = -a[r][r];
    std::vector<MP> v(r);
    for (size_t i = 0; i < r; ++i) v[i] = a[i][r];
    for (size_t k = 2; k <= r + 1; ++k) {
      MP s(f, nvars);
      for (size_t i = 0; i < r; ++i) s = s + a[r][i] * v[i];
      t[k] = -s;
      std::vector<MP> nv(r, MP(f, nvars));
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
          if (!a[i][j].is_zero() && !v[j].is_zero()) nv[i] = nv[i] + a[i][j] * v[j];
      v = std::move(nv);
    }
    // new coefficients: Toeplitz(t) * c
    std::vector<MP> nc(r + 2, MP(f, nvars));
    for (size_t i = 0; i < r + 2; ++i)
      for (size_t j = 0; j <= i && j < c.size(); ++j)
        if (!t[i - j].is_zero() && !c[j].is_zero()) nc[i] = nc[i] + t[i - j] * c[j];
    c = std::move(nc);
  }
  MP d = c[n];
  return n % 2 ? -d : d;
}

// Resultant with respect to x_v via the Sylvester matrix.
template <Field F>
MultiPoly<F> resultant(const MultiPoly<F>& p, const MultiPoly<F>& q, unsigned v) {
  const F& f = p.field();
  const unsigned n = p.nvars();
  auto a = p.coefficients_in(v);
  auto b = q.coefficients_in(v);
  const size_t m = a.size() - 1, k = b.size() - 1;
  if (m == 0 && k == 0) return MultiPoly<F>::constant(f, n, f.one());
  if (m == 0) return a[0].pow(static_cast<unsigned>(k));
  if (k == 0) return b[0].pow(static_cast<unsigned>(m));
  const size_t N = m + k;
  std::vector<std::vector<MultiPoly<F>>> s(N, std::vector<MultiPoly<F>>(N, MultiPoly<F>(f, n)));
  for (size_t r = 0; r < k; ++r)
    for (size_t i = 0; i <= m; ++i) s[r][r + i] = a[m - i];
  for (size_t r = 0; r < m; ++r)
    for (size_t i = 0; i <= k; ++i) s[k + r][r + i] = b[k - i];
  return berkowitz_det(s, f, n);
}

}  // namespace trivec
