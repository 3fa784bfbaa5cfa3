#pragma once

// Dense univariate polynomials over a field, low coefficient first.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "trivec/algebra/field.hpp"

namespace trivec {

template <Field F>
class UPoly {
 public:
  using E = typename F::Element;

  UPoly() = default;
  explicit UPoly(F f) : f_(std::move(f)) {}
  UPoly(F f, std::vector<E> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

  static UPoly constant(const F& f, E a) { return UPoly(f, {a}); }
  static UPoly x(const F& f) { return UPoly(f, {f.zero(), f.one()}); }
  static UPoly monomial(const F& f, E a, size_t d) {
    std::vector<E> c(d + 1, f.zero());
    c[d] = a;
    return UPoly(f, std::move(c));
  }

  const F& field() const { return f_; }
  const std::vector<E>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  E coeff(size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
  E lead() const { return c_.empty() ? f_.zero() : c_.back(); }

  E eval(const E& a) const {
    E r = f_.zero();
    for (size_t i = c_.size(); i-- > 0;) r = f_.add(f_.mul(r, a), c_[i]);
    return r;
  }

  UPoly operator+(const UPoly& o) const {
    std::vector<E> r(std::max(c_.size(), o.c_.size()), f_.zero());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = f_.add(r[i], o.c_[i]);
    return UPoly(f_, std::move(r));
  }
  UPoly operator-() const {
    std::vector<E> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = f_.neg(c_[i]);
    return UPoly(f_, std::move(r));
  }
  UPoly operator-(const UPoly& o) const { return *this + (-o); }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly(f_);
    std::vector<E> r(c_.size() + o.c_.size() - 1, f_.zero());
    for (size_t i = 0; i < c_.size(); ++i) {
      if (f_.is_zero(c_[i])) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_.fma(r[i + j], c_[i], o.c_[j]);
    }
    return UPoly(f_, std::move(r));
  }
  UPoly scale(const E& a) const {
    std::vector<E> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = f_.mul(c_[i], a);
    return UPoly(f_, std::move(r));
  }
  bool operator==(const UPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!f_.equal(c_[i], o.c_[i])) return false;
    return true;
  }

  // (quotient, remainder)
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) fail(Errc::not_invertible, "polynomial division by zero");
    std::vector<E> r = c_;
    if (r.size() < d.c_.size()) return {UPoly(f_), *this};
    std::vector<E> q(r.size() - d.c_.size() + 1, f_.zero());
    E li = f_.inv(d.lead());
    for (size_t i = q.size(); i-- > 0;) {
      E c = f_.mul(r[i + d.c_.size() - 1], li);
      q[i] = c;
      if (f_.is_zero(c)) continue;
      for (size_t j = 0; j < d.c_.size(); ++j) r[i + j] = f_.sub(r[i + j], f_.mul(c, d.c_[j]));
    }
    r.resize(d.c_.size() - 1);
    return {UPoly(f_, std::move(q)), UPoly(f_, std::move(r))};
  }
  UPoly operator%(const UPoly& d) const { return divmod(d).second; }
  UPoly operator/(const UPoly& d) const { return divmod(d).first; }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scale(f_.inv(lead()));
  }
  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly(f_);
    std::vector<E> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_.mul(c_[i], f_.from_int(static_cast<i64>(i)));
    return UPoly(f_, std::move(r));
  }

  UPoly powmod(u64 e, const UPoly& m) const {
    UPoly r = constant(f_, f_.one()) % m, b = *this % m;
    while (e) {
      if (e & 1) r = (r * b) % m;
      e >>= 1;
      if (e) b = (b * b) % m;
    }
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
      if (f_.is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + f_.to_string(c_[i]) + ")";
      if (i) s += "*x^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void trim() {
    while (!c_.empty() && f_.is_zero(c_.back())) c_.pop_back();
  }

  F f_{};
  std::vector<E> c_;
};

template <Field F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    UPoly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// squarefree over a perfect field: gcd(f, f') = 1
template <Field F>
bool is_squarefree(const UPoly<F>& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

// x^(q^j) mod m over a finite field, by repeated q-th powers
inline UPoly<FiniteField> frobenius_x(const UPoly<FiniteField>& m, u64 q, unsigned j) {
  UPoly<FiniteField> r = UPoly<FiniteField>::x(m.field()) % m;
  for (unsigned i = 0; i < j; ++i) r = r.powmod(q, m);
  return r;
}

// Distinct roots of f in the field F_Q (Q = field order), sorted by code.
std::vector<u64> roots(const UPoly<FiniteField>& f, std::mt19937_64& rng);
std::vector<u64> roots(const UPoly<FiniteField>& f);

}  // namespace trivec
