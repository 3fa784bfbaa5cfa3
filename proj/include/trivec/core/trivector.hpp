#pragma once

// Trivectors in the third exterior power of a 9-dimensional space, the
// normal-form family gamma_c, the induced GL_9 action and the skew pencil.
//
// Indices: the public accessors taking (i,j,k) use the bracket labels 1..9;
// everything else (lex slot numbers, matrix rows) is 0-based.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trivec/algebra/field.hpp"
#include "trivec/algebra/linalg.hpp"
#include "trivec/algebra/matrix.hpp"
#include "trivec/algebra/multipoly.hpp"

namespace trivec {

inline constexpr int kDim = 9;
inline constexpr int kTriples = 84;

struct Triple {
  std::uint8_t i, j, k;  // 0-based, i < j < k
};

// lex order of sorted triples
const std::array<Triple, kTriples>& triples();
// slot of a sorted 0-based triple, -1 if not strictly increasing
int triple_slot(int i, int j, int k);

// sign and slot of an arbitrary 0-based triple; sign 0 when an index repeats
struct SignedSlot {
  int sign;
  int slot;
};
SignedSlot signed_slot(int a, int b, int c);

// Entry (a,b) of the contraction, as a list of (m, sign, slot) with
// Phi(x)_{ab} = sum sign * t[slot] * x_m. 7 terms per off-diagonal entry.
struct ContractionTerm {
  std::uint8_t m;
  std::int8_t sign;
  std::uint8_t slot;
};
const std::array<std::array<std::array<ContractionTerm, 7>, kDim>, kDim>& contraction_table();

template <Field F>
class Trivector {
 public:
  using E = typename F::Element;

  Trivector() = default;
  explicit Trivector(F f) : f_(std::move(f)), c_(kTriples, f_.zero()) {}

  const F& field() const { return f_; }
  const E& operator[](int slot) const { return c_[slot]; }
  E& operator[](int slot) { return c_[slot]; }

  // bracket labels 1..9; indices need not be sorted, the sign is applied
  E coeff(int i, int j, int k) const {
    auto s = signed_slot(i - 1, j - 1, k - 1);
    if (s.sign == 0) return f_.zero();
    return s.sign > 0 ? c_[s.slot] : f_.neg(c_[s.slot]);
  }
  // adds v * e_i ^ e_j ^ e_k (labels 1..9)
  void add_term(int i, int j, int k, const E& v) {
    auto s = signed_slot(i - 1, j - 1, k - 1);
    if (s.sign == 0) fail(Errc::invalid_input, "repeated index in trivector monomial");
    c_[s.slot] = s.sign > 0 ? f_.add(c_[s.slot], v) : f_.sub(c_[s.slot], v);
  }

  size_t support_size() const {
    size_t n = 0;
    for (auto& x : c_) n += !f_.is_zero(x);
    return n;
  }
  bool is_zero() const { return support_size() == 0; }

  Trivector operator+(const Trivector& o) const {
    Trivector r = *this;
    for (int s = 0; s < kTriples; ++s) r.c_[s] = f_.add(c_[s], o.c_[s]);
    return r;
  }
  Trivector operator-(const Trivector& o) const {
    Trivector r = *this;
    for (int s = 0; s < kTriples; ++s) r.c_[s] = f_.sub(c_[s], o.c_[s]);
    return r;
  }
  Trivector scale(const E& a) const {
    Trivector r = *this;
    for (auto& x : r.c_) x = f_.mul(x, a);
    return r;
  }
  bool operator==(const Trivector& o) const {
    for (int s = 0; s < kTriples; ++s)
      if (!f_.equal(c_[s], o.c_[s])) return false;
    return true;
  }

  const std::vector<E>& coefficients() const { return c_; }

  // "+[267] - 2[257] ..." with labels 1..9
  std::string to_string() const {
    std::string out;
    for (int s = 0; s < kTriples; ++s) {
      if (f_.is_zero(c_[s])) continue;
      const auto& t = triples()[s];
      if (!out.empty()) out += " + ";
      if (!f_.is_one(c_[s])) out += "(" + f_.to_string(c_[s]) + ")";
      out += "[" + std::to_string(t.i + 1) + std::to_string(t.j + 1) + std::to_string(t.k + 1) + "]";
    }
    return out.empty() ? "0" : out;
  }

 private:
  F f_;
  std::vector<E> c_;
};

// Weierstrass coefficients c3, c6, c9, c12, c15, c18, c24, c30.
inline constexpr std::array<int, 8> kCurveWeights{3, 6, 9, 12, 15, 18, 24, 30};

template <Field F>
struct CurveCoeffs {
  using E = typename F::Element;
  F field;
  std::array<E, 8> c;

  explicit CurveCoeffs(F f) : field(std::move(f)) { c.fill(field.zero()); }

  static int position(int weight) {
    for (int i = 0; i < 8; ++i)
      if (kCurveWeights[i] == weight) return i;
    fail(Errc::invalid_input, "no curve coefficient of weight " + std::to_string(weight));
  }
  E& operator()(int weight) { return c[position(weight)]; }
  const E& operator()(int weight) const { return c[position(weight)]; }
  bool operator==(const CurveCoeffs& o) const { return c == o.c; }

  static CurveCoeffs random(const F& f, std::mt19937_64& rng) {
    CurveCoeffs r(f);
    for (auto& x : r.c) x = f.random(rng);
    return r;
  }
};

template <Field F>
Trivector<F> build_gamma_c(const CurveCoeffs<F>& c) {
  const F& f = c.field;
  Trivector<F> t(f);
  for (auto [i, j, k] : {std::array{2, 6, 7}, {2, 5, 8}, {3, 4, 8}, {1, 6, 9}, {3, 5, 7}, {2, 4, 9}, {1, 7, 8}, {4, 5, 6}})
    t.add_term(i, j, k, f.one());
  t.add_term(2, 5, 7, f.neg(c(3)));
  t.add_term(2, 4, 7, f.neg(c(6)));
  t.add_term(1, 4, 8, c(9));
  t.add_term(1, 4, 7, f.neg(c(12)));
  t.add_term(2, 3, 5, c(15));
  t.add_term(1, 4, 5, c(18));
  t.add_term(1, 3, 4, c(24));
  t.add_term(1, 2, 3, c(30));
  return t;
}

// The induced 84x84 matrix on the third exterior power: column s holds the
// image of the basis monomial s, whose entries are 3x3 minors of g.
template <Field F>
Matrix<F> wedge3(const Matrix<F>& g) {
  const F& f = g.field();
  Matrix<F> w(f, kTriples, kTriples);
  const auto& T = triples();
  for (int col = 0; col < kTriples; ++col) {
    const int a = T[col].i, b = T[col].j, c = T[col].k;
    for (int row = 0; row < kTriples; ++row) {
      const int i = T[row].i, j = T[row].j, k = T[row].k;
      auto m = [&](int r, int s) { return g(r, s); };
      // det of rows (i,j,k), columns (a,b,c)
      auto t1 = f.mul(m(i, a), f.sub(f.mul(m(j, b), m(k, c)), f.mul(m(j, c), m(k, b))));
      auto t2 = f.mul(m(i, b), f.sub(f.mul(m(j, a), m(k, c)), f.mul(m(j, c), m(k, a))));
      auto t3 = f.mul(m(i, c), f.sub(f.mul(m(j, a), m(k, b)), f.mul(m(j, b), m(k, a))));
      w(row, col) = f.add(f.sub(t1, t2), t3);
    }
  }
  return w;
}

template <Field F>
Trivector<F> apply_wedge3(const Matrix<F>& w3, const Trivector<F>& t) {
  Trivector<F> r(t.field());
  auto v = w3.apply(t.coefficients());
  for (int s = 0; s < kTriples; ++s) r[s] = v[s];
  return r;
}

// e_i -> sum_j g_{ji} e_j, extended to the exterior cube
template <Field F>
Trivector<F> gl_act(const Matrix<F>& g, const Trivector<F>& t) {
  if (g.rows() != kDim || g.cols() != kDim) fail(Errc::invalid_input, "gl_act needs a 9x9 matrix");
  if (g.field() != t.field()) fail(Errc::field_mismatch, "matrix and trivector over different fields");
  if (g.field().is_zero(det(g))) fail(Errc::singular, "gl_act: matrix is not invertible");
  return apply_wedge3(wedge3(g), t);
}

// one-line permutation (labels 1..9) -> matrix sending e_i to e_{perm[i]}
template <Field F>
Matrix<F> permutation_matrix(const F& f, const std::vector<int>& perm) {
  Matrix<F> m(f, kDim, kDim);
  for (int i = 0; i < kDim; ++i) m(perm[i] - 1, i) = f.one();
  return m;
}

template <Field F>
Matrix<F> diagonal_matrix(const F& f, const std::vector<typename F::Element>& d) {
  Matrix<F> m(f, d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// Basis relabeling under which gamma_c meets the standard flag; one-line,
// labels 1..9. The one-line string 974852631 read as i -> 10 - sigma(i).
std::vector<int> flag_relabeling();

template <Field F>
struct TorusCertificate {
  Trivector<F> acted;     // diag(s^15, ..., s^-12) . gamma_c
  Trivector<F> expected;  // gamma_{s.c}
  bool ok = false;
};

template <Field F>
TorusCertificate<F> weighted_torus_act(const typename F::Element& s, const CurveCoeffs<F>& c) {
  const F& f = c.field;
  if (f.is_zero(s)) fail(Errc::not_invertible, "torus parameter must be nonzero");
  static constexpr int w[kDim] = {15, 9, 6, 3, 0, -3, -6, -9, -12};
  auto sinv = f.inv(s);
  std::vector<typename F::Element> d(kDim);
  for (int i = 0; i < kDim; ++i) d[i] = w[i] >= 0 ? f.pow(s, w[i]) : f.pow(sinv, -w[i]);
  CurveCoeffs<F> sc = c;
  for (int i = 0; i < 8; ++i) sc.c[i] = f.mul(f.pow(s, kCurveWeights[i]), c.c[i]);
  TorusCertificate<F> out{gl_act(diagonal_matrix(f, d), build_gamma_c(c)), build_gamma_c(sc), false};
  out.ok = out.acted == out.expected;
  return out;
}

// Phi(x) = contraction of t with the covector x; skew with zero diagonal.
template <Field F>
Matrix<F> phi_at(const Trivector<F>& t, const std::vector<typename F::Element>& x) {
  const F& f = t.field();
  if (x.size() != kDim) fail(Errc::invalid_input, "phi_at needs 9 coordinates");
  const auto& tab = contraction_table();
  Matrix<F> m(f, kDim, kDim);
  for (int a = 0; a < kDim; ++a)
    for (int b = a + 1; b < kDim; ++b) {
      auto v = f.zero();
      for (const auto& term : tab[a][b]) {
        const auto& c = t[term.slot];
        if (f.is_zero(c) || f.is_zero(x[term.m])) continue;
        auto p = f.mul(c, x[term.m]);
        v = term.sign > 0 ? f.add(v, p) : f.sub(v, p);
      }
      m(a, b) = v;
      m(b, a) = f.neg(v);
    }
  return m;
}

// Linear-form matrix: coef[a][b][m] = coefficient of x_m in Phi_{ab}.
template <Field F>
struct SkewPencil {
  using E = typename F::Element;
  F field;
  std::vector<E> coef;  // 9*9*9

  explicit SkewPencil(F f) : field(std::move(f)), coef(kDim * kDim * kDim, field.zero()) {}
  E& at(int a, int b, int m) { return coef[(a * kDim + b) * kDim + m]; }
  const E& at(int a, int b, int m) const { return coef[(a * kDim + b) * kDim + m]; }

  Matrix<F> evaluate(const std::vector<E>& x) const {
    Matrix<F> r(field, kDim, kDim);
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) {
        auto v = field.zero();
        for (int m = 0; m < kDim; ++m) v = field.fma(v, at(a, b, m), x[m]);
        r(a, b) = v;
      }
    return r;
  }
  MultiPoly<F> entry(int a, int b) const {
    MultiPoly<F> p(field, kDim);
    for (int m = 0; m < kDim; ++m) {
      Exponent e(kDim, 0);
      e[m] = 1;
      p.add_term(e, at(a, b, m));
    }
    return p;
  }
  bool is_skew() const {
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        for (int m = 0; m < kDim; ++m)
          if (!field.is_zero(field.add(at(a, b, m), at(b, a, m)))) return false;
    for (int a = 0; a < kDim; ++a)
      for (int m = 0; m < kDim; ++m)
        if (!field.is_zero(at(a, a, m))) return false;
    return true;
  }
};

template <Field F>
SkewPencil<F> phi_pencil(const Trivector<F>& t) {
  SkewPencil<F> p(t.field());
  const F& f = t.field();
  const auto& tab = contraction_table();
  for (int a = 0; a < kDim; ++a)
    for (int b = a + 1; b < kDim; ++b)
      for (const auto& term : tab[a][b]) {
        auto v = term.sign > 0 ? t[term.slot] : f.neg(t[term.slot]);
        p.at(a, b, term.m) = v;
        p.at(b, a, term.m) = f.neg(v);
      }
  return p;
}

// Projective point with the first nonzero coordinate scaled to 1.
template <Field F>
struct ProjPoint {
  using E = typename F::Element;
  std::vector<E> coords;

  ProjPoint() = default;
  ProjPoint(const F& f, std::vector<E> v) : coords(std::move(v)) {
    size_t i = 0;
    while (i < coords.size() && f.is_zero(coords[i])) ++i;
    if (i == coords.size()) fail(Errc::invalid_input, "projective point with all coordinates zero");
    if (!f.is_one(coords[i])) {
      auto inv = f.inv(coords[i]);
      for (auto& x : coords) x = f.mul(x, inv);
    }
  }
  bool operator==(const ProjPoint& o) const { return coords == o.coords; }
  bool operator<(const ProjPoint& o) const { return coords < o.coords; }
};

template <Field F>
Trivector<F> standard_cartan_element(const F& f, const typename F::Element& a1, const typename F::Element& a2,
                                     const typename F::Element& a3, const typename F::Element& a4) {
  Trivector<F> t(f);
  const typename F::Element* a[4] = {&a1, &a2, &a3, &a4};
  static constexpr int lines[4][3][3] = {{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}},
                                         {{1, 4, 7}, {2, 5, 8}, {3, 6, 9}},
                                         {{1, 5, 9}, {2, 6, 7}, {3, 4, 8}},
                                         {{1, 6, 8}, {2, 4, 9}, {3, 5, 7}}};
  for (int d = 0; d < 4; ++d)
    for (auto& l : lines[d])
      if (!f.is_zero(*a[d])) t.add_term(l[0], l[1], l[2], *a[d]);
  return t;
}

// Fixed space of the Heisenberg group on the exterior cube; rows of `basis`
// are trivector coefficient vectors (RREF).
template <Field F>
struct HeisenbergInvariants {
  size_t dimension = 0;
  Matrix<F> basis;
  typename F::Element zeta{};
};

// Generators of the Heisenberg group on V_9 = V_3 (x) V_3 over a field with a
// primitive cube root zeta, grid index 3r+c: cyclic shift of rows, row r
// scaled by zeta^r, cyclic shift of columns, column c scaled by zeta^c.
template <Field F>
std::array<Matrix<F>, 4> heisenberg_generators(const F& f, const typename F::Element& zeta) {
  std::array<Matrix<F>, 4> g;
  for (auto& m : g) m = Matrix<F>(f, kDim, kDim);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const int i = 3 * r + c;
      g[0](3 * ((r + 1) % 3) + c, i) = f.one();
      g[1](i, i) = f.pow(zeta, static_cast<u64>(r));
      g[2](3 * r + (c + 1) % 3, i) = f.one();
      g[3](i, i) = f.pow(zeta, static_cast<u64>(c));
    }
  return g;
}

HeisenbergInvariants<FiniteField> heisenberg_invariants(const FiniteField& f);
HeisenbergInvariants<Rationals> heisenberg_invariants(const Rationals& f);

// Is v in the row span of `basis`?
template <Field F>
bool in_row_span(const Matrix<F>& basis, const std::vector<typename F::Element>& v) {
  Matrix<F> one = Matrix<F>::from_rows(basis.field(), {v}, v.size());
  return rank(vstack(basis, one)) == rank(basis);
}

}  // namespace trivec
