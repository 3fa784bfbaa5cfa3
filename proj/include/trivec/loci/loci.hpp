#pragma once

// Rank strata of the skew pencil over finite fields, the cubic through the
// rank <= 6 locus, genus-2 point counts, the explicit curve embedding and the
// reconstruction of a trivector from its 9-dimensional pencil.

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trivec/algebra/linalg.hpp"
#include "trivec/algebra/multipoly.hpp"
#include "trivec/core/trivector.hpp"

namespace trivec {

struct LociOptions {
  unsigned threads = 0;
  u64 budget = 235'794'769;  // |P^8(F_11)|
  size_t point_cap = 5'000'000;
};

struct RankLocusReport {
  u64 q = 0;
  std::array<u64, 5> counts{};  // counts[r/2] = points of rank r
  int max_rank = 8;
  std::vector<std::vector<u64>> points;  // rank <= max_rank, enumeration order
  bool points_truncated = false;
  double elapsed_ms = 0;

  u64 count_at_most(int r) const {
    u64 s = 0;
    for (int i = 0; 2 * i <= r && i < 5; ++i) s += counts[i];
    return s;
  }
  u64 total() const { return count_at_most(8); }
};

RankLocusReport enumerate_rank_locus(const Trivector<FiniteField>& t, int max_rank, bool want_points,
                                     const LociOptions& opt = {});

// ---- the cubic ----

// the 165 exponent vectors of degree 3 in 9 variables, lex-descending
const std::vector<Exponent>& cubic_monomials();

template <Field F>
struct CubicForm {
  using E = typename F::Element;
  F field;
  std::vector<E> coeffs;  // aligned with cubic_monomials()

  E eval(const std::vector<E>& x) const {
    const auto& mons = cubic_monomials();
    E s = field.zero();
    for (size_t m = 0; m < mons.size(); ++m) {
      if (field.is_zero(coeffs[m])) continue;
      E v = coeffs[m];
      for (int i = 0; i < 9; ++i)
        for (int e = 0; e < mons[m][i]; ++e) v = field.mul(v, x[i]);
      s = field.add(s, v);
    }
    return s;
  }
  std::vector<E> gradient(const std::vector<E>& x) const {
    const auto& mons = cubic_monomials();
    std::vector<E> g(9, field.zero());
    for (size_t m = 0; m < mons.size(); ++m) {
      if (field.is_zero(coeffs[m])) continue;
      for (int v = 0; v < 9; ++v) {
        if (!mons[m][v]) continue;
        E term = field.mul(coeffs[m], field.from_int(mons[m][v]));
        for (int i = 0; i < 9; ++i) {
          const int e = mons[m][i] - (i == v);
          for (int k = 0; k < e; ++k) term = field.mul(term, x[i]);
        }
        g[v] = field.add(g[v], term);
      }
    }
    return g;
  }
  MultiPoly<F> as_poly() const {
    MultiPoly<F> p(field, 9);
    const auto& mons = cubic_monomials();
    for (size_t m = 0; m < mons.size(); ++m) p.add_term(mons[m], coeffs[m]);
    return p;
  }
};

struct CubicResult {
  CubicForm<FiniteField> cubic;
  size_t kernel_dimension = 0;
  size_t sample_points = 0;  // Y-points used for interpolation
  unsigned ext_degree = 1;   // field of the sample over t's field
};

// Interpolates through Y(F_q); extends the field (up to max_ext_degree) when
// the sample does not pin the cubic down. Throws KernelDimNotOne.
CubicResult cubic_of_Y(const Trivector<FiniteField>& t, unsigned max_ext_degree = 2, const LociOptions& opt = {});

// ---- curves ----

// e1 = q+1-N1, p2 = q^2+1-N2, e2 = (e1^2-p2)/2, #J = 1 - e1 + e2 - q e1 + q^2
u64 jacobian_order_from_counts(i64 N1, i64 N2, u64 q);

// N_d = 1 + affine solutions over F_{q^d}; throws SingularCurve
std::vector<u64> curve_point_counts(const CurveCoeffs<FiniteField>& c, const std::vector<unsigned>& degrees);

// (x, z) -> [0:0:-1:0:z:0:-z^2:x:z^3]
template <Field F>
std::vector<typename F::Element> curve_embedding_point(const F& f, const typename F::Element& x,
                                                       const typename F::Element& z) {
  auto z2 = f.mul(z, z);
  return {f.zero(), f.zero(), f.neg(f.one()), f.zero(), z, f.zero(), f.neg(z2), x, f.mul(z2, z)};
}

// five vectors spanning a subspace of ker Phi at the embedded point
template <Field F>
std::array<std::vector<typename F::Element>, 5> embedding_kernel_rows(const CurveCoeffs<F>& c,
                                                                      const typename F::Element& x,
                                                                      const typename F::Element& z) {
  const F& f = c.field;
  auto z2 = f.mul(z, z);
  auto O = f.zero(), I = f.one();
  std::array<std::vector<typename F::Element>, 5> r;
  r[0] = {I, O, O, z2, x, f.neg(f.add(f.mul(c(12), z), c(18))), O, f.neg(f.add(f.mul(c(9), x), c(24))), O};
  r[1] = {O, I, c(3), f.neg(z), O, f.neg(f.add(z2, f.mul(c(6), z))), f.neg(f.add(x, c(15))), f.neg(f.mul(c(3), x)), O};
  r[2] = {O, O, I, O, f.neg(z), O, z2, f.neg(x), O};
  r[3] = {O, O, O, O, O, I, O, f.neg(z), O};
  r[4] = {O, O, O, O, O, O, O, O, I};
  return r;
}

struct EmbeddingCertificate {
  u64 affine_points = 0;
  bool weierstrass_point_ok = false;  // rank Phi(P') <= 4
};

// Throws CertificateFailure naming the point and row that fail.
EmbeddingCertificate verify_curve_embedding(const CurveCoeffs<FiniteField>& c);

// ---- reconstruction ----

template <Field F>
bool proportional(const Trivector<F>& a, const Trivector<F>& b) {
  const F& f = a.field();
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  int s = 0;
  while (f.is_zero(a[s])) ++s;
  if (f.is_zero(b[s])) return false;
  auto r = f.div(b[s], a[s]);
  return a.scale(r) == b;
}

// The nine matrices Phi(e_m^*), a basis of the pencil's span for stable t.
template <Field F>
std::vector<Matrix<F>> pencil_span(const Trivector<F>& t) {
  std::vector<Matrix<F>> W;
  for (int m = 0; m < 9; ++m) {
    std::vector<typename F::Element> e(9, t.field().zero());
    e[m] = t.field().one();
    W.push_back(phi_at(t, e));
  }
  return W;
}

namespace detail {
template <Field F>
Matrix<F> combine(const std::vector<Matrix<F>>& W, const std::vector<typename F::Element>& lam) {
  const F& f = W[0].field();
  Matrix<F> m(f, 9, 9);
  for (size_t i = 0; i < W.size(); ++i) {
    if (f.is_zero(lam[i])) continue;
    m = m + W[i].scale(lam[i]);
  }
  return m;
}
}  // namespace detail

// Rank-8 elements give kernel lines; ten of them in general position fix the
// linear map from the span to V^* up to one scalar, which inverts the pencil.
template <Field F>
Trivector<F> reconstruct_from_pencil(const std::vector<Matrix<F>>& W, std::uint64_t seed = 1, size_t attempts = 4000) {
  using E = typename F::Element;
  if (W.size() != 9) fail(Errc::invalid_input, "reconstruction needs exactly 9 matrices");
  const F& f = W[0].field();
  Matrix<F> flat(f, 9, 81);
  for (int i = 0; i < 9; ++i) {
    if (W[i].rows() != 9 || W[i].cols() != 9 || !is_skew(W[i])) fail(Errc::not_skew, "pencil matrix is not alternating");
    for (int j = 0; j < 81; ++j) flat(i, j) = W[i].data()[j];
  }
  if (rank(flat) != 9) fail(Errc::invalid_input, "pencil matrices are linearly dependent");

  std::mt19937_64 rng(seed);
  auto random_vec = [&] {
    std::vector<E> v(9);
    for (auto& x : v) x = f.random(rng);
    return v;
  };
  size_t tries = 0;
  auto next_rank8 = [&](std::vector<E>& lam, std::vector<E>& ker) {
    while (tries++ < attempts) {
      lam = random_vec();
      auto rk = rank_and_kernel(detail::combine(W, lam));
      if (rk.rank == 8) {
        ker = rk.kernel[0];
        return true;
      }
    }
    return false;
  };
  auto degenerate = [] {
    fail(Errc::degenerate_configuration, "no ten rank-8 elements in general position found within budget");
  };

  for (;;) {
    // nine independent rank-8 elements
    std::vector<std::vector<E>> lams, kers;
    while (lams.size() < 9) {
      std::vector<E> lam, ker;
      if (!next_rank8(lam, ker)) degenerate();
      auto trial = Matrix<F>::from_rows(f, lams, 9);
      if (rank(vstack(trial, Matrix<F>::from_rows(f, {lam}, 9))) == lams.size() + 1) {
        lams.push_back(lam);
        kers.push_back(ker);
      }
    }
    // tenth with all coordinates nonzero in that basis
    std::vector<E> lam10, ker10;
    if (!next_rank8(lam10, ker10)) degenerate();
    auto L = Matrix<F>::from_rows(f, lams, 9);  // rows lambda_i
    auto alpha = solve(L.transpose(), lam10);
    if (!alpha) continue;
    bool general = true;
    for (auto& a : *alpha) general = general && !f.is_zero(a);
    if (!general) continue;
    // e_i = alpha_i lambda_i sum to lambda_10; choose beta with sum beta_i k_i in <k_10>
    Matrix<F> sys(f, 9, 10);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) sys(j, i) = kers[i][j];
    for (int j = 0; j < 9; ++j) sys(j, 9) = f.neg(ker10[j]);
    auto rk = rank_and_kernel(sys);
    if (rk.kernel.size() != 1) continue;
    const auto& beta = rk.kernel[0];
    bool nonzero = true;
    for (int i = 0; i < 9; ++i) nonzero = nonzero && !f.is_zero(beta[i]);
    if (!nonzero) continue;
    // phi in lambda coordinates: phi(lambda) = Phi_mat * Ecol^{-1} * lambda
    Matrix<F> Ecol(f, 9, 9), Pmat(f, 9, 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        Ecol(j, i) = f.mul((*alpha)[i], lams[i][j]);
        Pmat(j, i) = f.mul(beta[i], kers[i][j]);
      }
    auto Einv = inverse(Ecol);
    if (!Einv) continue;
    auto psi = inverse(Pmat * *Einv);  // V^* -> lambda coordinates
    if (!psi) continue;
    Trivector<F> out(f);
    std::vector<Matrix<F>> images;
    for (int m = 0; m < 9; ++m) {
      std::vector<E> col(9);
      for (int i = 0; i < 9; ++i) col[i] = (*psi)(i, m);
      images.push_back(detail::combine(W, col));
    }
    for (int s = 0; s < kTriples; ++s) {
      const auto& tr = triples()[s];
      out[s] = images[tr.k](tr.i, tr.j);
    }
    // the recovered map must be the contraction of `out`
    for (int m = 0; m < 9; ++m) {
      std::vector<E> e(9, f.zero());
      e[m] = f.one();
      if (!(phi_at(out, e) == images[m])) fail(Errc::certificate_failure, "reconstructed pencil is not a contraction");
    }
    return out;
  }
}

}  // namespace trivec
