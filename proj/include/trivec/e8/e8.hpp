#pragma once

// The Z/3-graded model g0 + /\^3 V + /\^6 V of E8.
//
// Degree 0 is stored as a pair (B, s) with tr B + 3 s = 0, modulo (I, -3).
// Over a field where 3 is invertible (B, s) stands for the traceless matrix
// B + (s/3) I; in characteristic 3 the scalar s survives as the grading
// element. The canonical representative has B(9,9) = 0.
//
// Degree 2 is stored by complementary triple: d2[slot(T)] is the coefficient
// of e_S, S = complement of T in increasing order.

#include <array>
#include <optional>
#include <vector>

#include "trivec/algebra/linalg.hpp"
#include "trivec/core/trivector.hpp"

namespace trivec {

// Structure constants of the three cross-degree brackets.
struct E8Normalization {
  int alpha = 1;  // [deg1, deg1]
  int beta = 1;   // [deg2, deg2]
  int gamma = -1;  // [deg1, deg2]; Jacobi forces gamma = -alpha * beta
};

template <Field F>
struct GradedE8Element {
  using E = typename F::Element;
  Matrix<F> B;
  E s;
  Trivector<F> d1;
  std::vector<E> d2;

  explicit GradedE8Element(const F& f) : B(f, 9, 9), s(f.zero()), d1(f), d2(kTriples, f.zero()) {}

  const F& field() const { return d1.field(); }

  void canonicalize() {
    const F& f = field();
    const E b = B(8, 8);
    if (f.is_zero(b)) return;
    for (int i = 0; i < 9; ++i) B(i, i) = f.sub(B(i, i), b);
    s = f.add(s, f.mul(f.from_int(3), b));
  }
  bool is_zero() const {
    GradedE8Element c = *this;
    c.canonicalize();
    if (!c.B.is_zero() || !f_is_zero(c.s) || !c.d1.is_zero()) return false;
    for (auto& v : c.d2)
      if (!f_is_zero(v)) return false;
    return true;
  }
  GradedE8Element operator+(const GradedE8Element& o) const {
    const F& f = field();
    GradedE8Element r = *this;
    r.B = B + o.B;
    r.s = f.add(s, o.s);
    r.d1 = d1 + o.d1;
    for (int i = 0; i < kTriples; ++i) r.d2[i] = f.add(d2[i], o.d2[i]);
    return r;
  }
  GradedE8Element scale(const E& c) const {
    const F& f = field();
    GradedE8Element r = *this;
    r.B = B.scale(c);
    r.s = f.mul(s, c);
    r.d1 = d1.scale(c);
    for (auto& v : r.d2) v = f.mul(v, c);
    return r;
  }
  bool operator==(const GradedE8Element& o) const {
    return (*this + o.scale(field().neg(field().one()))).is_zero();
  }

  // 248 coordinates: the 80 entries of canonical B other than (9,9), then
  // d1, then d2. In characteristic 3 tr B = 0 makes B(8,8) redundant and its
  // slot carries s instead; elsewhere s = -tr(B)/3 is implied.
  std::vector<E> coordinates() const {
    GradedE8Element c = *this;
    c.canonicalize();
    const bool three = field().characteristic() == 3;
    std::vector<E> v;
    v.reserve(248);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        if (i == 8 && j == 8) continue;
        v.push_back(three && i == 7 && j == 7 ? c.s : c.B(i, j));
      }
    for (int i = 0; i < kTriples; ++i) v.push_back(c.d1[i]);
    for (int i = 0; i < kTriples; ++i) v.push_back(c.d2[i]);
    return v;
  }

 private:
  bool f_is_zero(const E& e) const { return field().is_zero(e); }
};

namespace e8detail {

// sign of sorting a sequence of distinct indices, 0 on repetition
inline int perm_sign(const int* a, int n) {
  int s = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (a[i] == a[j]) return 0;
      if (a[i] > a[j]) s = -s;
    }
  return s;
}

// sign(T, complement(T)) for each slot
const std::array<int, kTriples>& complement_sign();
// for disjoint slots a, b: the third slot c and sign of (T_a T_b T_c) -> sorted; c = -1 if not disjoint
struct DisjointPair {
  int third;
  int sign;
};
const std::vector<std::array<DisjointPair, kTriples>>& disjoint_table();

template <Field F>
typename F::Element signed_coeff(const F& f, const Trivector<F>& x, int a, int b, int c) {
  auto ss = signed_slot(a, b, c);
  if (ss.sign == 0) return f.zero();
  return ss.sign > 0 ? x[ss.slot] : f.neg(x[ss.slot]);
}

// D_A on /\^3 V for an arbitrary matrix A (e_m -> sum_i A(i,m) e_i)
template <Field F>
Trivector<F> derive3(const Matrix<F>& A, const Trivector<F>& x) {
  const F& f = x.field();
  Trivector<F> out(f);
  for (int s = 0; s < kTriples; ++s) {
    const auto& t = triples()[s];
    const int idx[3] = {t.i, t.j, t.k};
    auto acc = f.zero();
    for (int p = 0; p < 3; ++p)
      for (int m = 0; m < 9; ++m) {
        if (f.is_zero(A(idx[p], m))) continue;
        int r[3] = {idx[0], idx[1], idx[2]};
        r[p] = m;
        auto v = signed_coeff(f, x, r[0], r[1], r[2]);
        if (!f.is_zero(v)) acc = f.add(acc, f.mul(A(idx[p], m), v));
      }
    out[s] = acc;
  }
  return out;
}

// degree 2 to the dual triple coordinates: <y ^ xi> = sum_T y_T xi*_T
template <Field F>
Trivector<F> to_dual(const F& f, const std::vector<typename F::Element>& d2) {
  Trivector<F> r(f);
  const auto& cs = complement_sign();
  for (int s = 0; s < kTriples; ++s) r[s] = cs[s] > 0 ? d2[s] : f.neg(d2[s]);
  return r;
}
template <Field F>
std::vector<typename F::Element> from_dual(const Trivector<F>& d) {
  const F& f = d.field();
  std::vector<typename F::Element> r(kTriples);
  const auto& cs = complement_sign();
  for (int s = 0; s < kTriples; ++s) r[s] = cs[s] > 0 ? d[s] : f.neg(d[s]);
  return r;
}

// D_A on /\^6 V, through /\^6 V = /\^3 V^* (x) det: -D_{A^T} + tr A
template <Field F>
std::vector<typename F::Element> derive6(const Matrix<F>& A, const std::vector<typename F::Element>& d2) {
  const F& f = A.field();
  auto xi = to_dual(f, d2);
  auto r = derive3(A.transpose(), xi).scale(f.neg(f.one()));
  auto tr = f.zero();
  for (int i = 0; i < 9; ++i) tr = f.add(tr, A(i, i));
  r = r + xi.scale(tr);
  return from_dual(r);
}

template <Field F>
std::vector<typename F::Element> wedge33(const Trivector<F>& x, const Trivector<F>& y) {
  const F& f = x.field();
  std::vector<typename F::Element> out(kTriples, f.zero());
  const auto& dt = disjoint_table();
  for (int a = 0; a < kTriples; ++a) {
    if (f.is_zero(x[a])) continue;
    for (int b = 0; b < kTriples; ++b) {
      const auto& d = dt[a][b];
      if (d.third < 0 || f.is_zero(y[b])) continue;
      // e_Ta ^ e_Tb = sign(Ta Tb) e_S with S = Ta u Tb; sign(Ta Tb Tc) = sign(Ta Tb) sign(S Tc)
      auto v = f.mul(x[a], y[b]);
      const int sg = d.sign * complement_sign()[d.third];  // sign(Tc, S) = sign(S, Tc)
      out[d.third] = sg > 0 ? f.add(out[d.third], v) : f.sub(out[d.third], v);
    }
  }
  return out;
}

template <Field F>
Trivector<F> wedge66(const F& f, const std::vector<typename F::Element>& xi, const std::vector<typename F::Element>& eta) {
  auto a = to_dual(f, xi), b = to_dual(f, eta);
  Trivector<F> out(f);
  const auto& dt = disjoint_table();
  for (int i = 0; i < kTriples; ++i) {
    if (f.is_zero(a[i])) continue;
    for (int j = 0; j < kTriples; ++j) {
      const auto& d = dt[i][j];
      if (d.third < 0 || f.is_zero(b[j])) continue;
      auto v = f.mul(a[i], b[j]);
      out[d.third] = d.sign > 0 ? f.add(out[d.third], v) : f.sub(out[d.third], v);
    }
  }
  return out;
}

// P with tr(P B) = <D_B x ^ xi> for every B; also c = <x ^ xi>
template <Field F>
std::pair<Matrix<F>, typename F::Element> pairing36(const Trivector<F>& x, const std::vector<typename F::Element>& d2) {
  const F& f = x.field();
  auto xi = to_dual(f, d2);
  Matrix<F> P(f, 9, 9);
  auto c = f.zero();
  for (int s = 0; s < kTriples; ++s) {
    if (f.is_zero(xi[s])) continue;
    c = f.add(c, f.mul(x[s], xi[s]));
    const auto& t = triples()[s];
    const int idx[3] = {t.i, t.j, t.k};
    // (E_ab x)_T for a in T: x with a replaced by b; P(b, a) collects it
    for (int p = 0; p < 3; ++p)
      for (int b = 0; b < 9; ++b) {
        int r[3] = {idx[0], idx[1], idx[2]};
        r[p] = b;
        auto v = signed_coeff(f, x, r[0], r[1], r[2]);
        if (!f.is_zero(v)) P(b, idx[p]) = f.add(P(b, idx[p]), f.mul(v, xi[s]));
      }
  }
  return {P, c};
}

template <Field F>
typename F::Element from_int(const F& f, int v) {
  return f.from_int(v);
}

}  // namespace e8detail

template <Field F>
GradedE8Element<F> bracket(const GradedE8Element<F>& a, const GradedE8Element<F>& b, const E8Normalization& n = {}) {
  using namespace e8detail;
  const F& f = a.field();
  if (!(f == b.field())) fail(Errc::field_mismatch, "bracket operands live over different fields");
  GradedE8Element<F> r(f);
  const auto two = f.from_int(2);
  // degree 0
  r.B = a.B * b.B - b.B * a.B;
  {
    auto [P, c] = pairing36(a.d1, b.d2);
    auto [Q, d] = pairing36(b.d1, a.d2);
    auto g = f.from_int(n.gamma);
    r.B = r.B + (P - Q).scale(g);
    r.s = f.mul(g, f.neg(f.sub(c, d)));
  }
  // degree 1
  r.d1 = derive3(a.B, b.d1) + b.d1.scale(a.s) - derive3(b.B, a.d1) - a.d1.scale(b.s);
  r.d1 = r.d1 + wedge66(f, a.d2, b.d2).scale(f.from_int(n.beta));
  // degree 2
  auto da = derive6(a.B, b.d2), db = derive6(b.B, a.d2);
  auto w = wedge33(a.d1, b.d1);
  const auto al = f.from_int(n.alpha);
  for (int i = 0; i < kTriples; ++i) {
    auto v = f.sub(f.add(da[i], f.mul(f.mul(two, a.s), b.d2[i])), f.add(db[i], f.mul(f.mul(two, b.s), a.d2[i])));
    r.d2[i] = f.add(v, f.mul(al, w[i]));
  }
  r.canonicalize();
  return r;
}

// basis element k of the 248 coordinates (inverse of coordinates())
template <Field F>
GradedE8Element<F> e8_basis(const F& f, int k) {
  GradedE8Element<F> e(f);
  if (k < 80) {
    const int i = k / 9, j = k % 9;
    if (i != j) {
      e.B(i, j) = f.one();
    } else if (f.characteristic() != 3) {
      e.B(i, i) = f.one();
      e.s = f.neg(f.inv(f.from_int(3)));
    } else if (i == 7) {
      e.s = f.one();
    } else {
      e.B(i, i) = f.one();
      e.B(7, 7) = f.neg(f.one());
    }
    return e;
  }
  if (k < 80 + kTriples) {
    e.d1[k - 80] = f.one();
    return e;
  }
  e.d2[k - 80 - kTriples] = f.one();
  return e;
}

// matrix of ad(x) in the 248 coordinates (column k = [x, basis_k])
template <Field F>
Matrix<F> ad_matrix(const GradedE8Element<F>& x, const E8Normalization& n = {}) {
  const F& f = x.field();
  Matrix<F> M(f, 248, 248);
  for (int k = 0; k < 248; ++k) {
    auto col = bracket(x, e8_basis(f, k), n).coordinates();
    for (int i = 0; i < 248; ++i) M(i, k) = col[i];
  }
  return M;
}

// Solve D_B + s = D on /\^3 V for (B, s), where D is given by its images of
// the 84 basis trivectors. Returns the canonical (B, s) or nullopt.
template <Field F>
std::optional<std::pair<Matrix<F>, typename F::Element>> solve_degree0_action(const std::vector<Trivector<F>>& images) {
  using namespace e8detail;
  const F& f = images[0].field();
  // unknowns: B(i,j) for (i,j) != (8,8) (80), then s
  Matrix<F> A(f, kTriples * kTriples, 81);
  std::vector<typename F::Element> rhs(kTriples * kTriples, f.zero());
  for (int src = 0; src < kTriples; ++src) {
    Trivector<F> e(f);
    e[src] = f.one();
    int u = 0;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        if (i == 8 && j == 8) continue;
        Matrix<F> Eij(f, 9, 9);
        Eij(i, j) = f.one();
        auto col = derive3(Eij, e);
        for (int r = 0; r < kTriples; ++r) A(r * kTriples + src, u) = col[r];
        ++u;
      }
    A(src * kTriples + src, 80) = f.one();
    for (int r = 0; r < kTriples; ++r) rhs[r * kTriples + src] = images[src][r];
  }
  auto sol = solve(A, rhs);
  if (!sol) return std::nullopt;
  Matrix<F> B(f, 9, 9);
  int u = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      if (i == 8 && j == 8) continue;
      B(i, j) = (*sol)[u++];
    }
  return std::make_pair(B, (*sol)[80]);
}

// ---- characteristic 3 ----

// canonical representative modulo scalar matrices: entry (9,9) = 0
template <Field F>
Matrix<F> mod_scalars(Matrix<F> A) {
  const F& f = A.field();
  const auto b = A(8, 8);
  for (int i = 0; i < 9; ++i) A(i, i) = f.sub(A(i, i), b);
  return A;
}

// gamma^[e] for e in {3, 9, 27}, as a 9x9 matrix modulo scalars.
// Throws NotCharThree, NoSolution.
Matrix<FiniteField> restricted_power(const Trivector<FiniteField>& t, int e);

// The ad^3 route for gamma^[3]: the canonical pair (B, s) solving
// D_B + s = (ad t)^3 on degree 1.
std::pair<Matrix<FiniteField>, u64> restricted_cube_pair(const Trivector<FiniteField>& t);

struct ThreeRank {
  int lie = -1;
  int coeff = -1;
};

// Throws SingularCurve, NotCharThree, InvalidInput (not Weierstrass form), Disagreement.
ThreeRank three_rank(const CurveCoeffs<FiniteField>& c);

}  // namespace trivec
