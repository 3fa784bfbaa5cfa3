#pragma once

// Non-stability certificates: a 6-dimensional U with t in /\^3 U + /\^2 U (x) V.
// Dually, A = ann(U) is a 3-dimensional space of covectors on which the
// trilinear form t(a, b, .) vanishes identically, i.e. Phi(a) b = 0 for all
// a, b in A. Searches run over A and report U.

#include <optional>
#include <string>
#include <vector>

#include "trivec/algebra/field.hpp"
#include "trivec/algebra/matrix.hpp"
#include "trivec/core/trivector.hpp"

namespace trivec {

enum class StabilityStatus { stable, non_stable, inconclusive };
const char* status_name(StabilityStatus s);

struct StabilityOptions {
  unsigned threads = 0;     // 0: hardware concurrency
  u64 budget = 50'000'000;  // points or subspaces examined per extension degree
};

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::inconclusive;
  std::optional<Matrix<FiniteField>> witness;  // 6x9 RREF basis of U, over the field it was found in
  unsigned searched_ext_degree = 0;
  bool geometric = false;  // stable verdict holds over the algebraic closure
  u64 examined = 0;        // subspaces (F_2 fast path) or points (kernel-guided)
  std::vector<std::string> notes;
};

// Independent re-check: complete U to a basis, change coordinates and inspect
// the coefficients with two or more indices outside U. U may live over an
// extension of t's field.
bool is_destabilizing(const Trivector<FiniteField>& t, const Matrix<FiniteField>& U);

// Searches F_{q^d} for d = 1..max_ext_degree; first witness in enumeration order.
StabilityVerdict destabilizer_search(const Trivector<FiniteField>& t, unsigned max_ext_degree,
                                     const StabilityOptions& opt = {});

// Affine Weierstrass model x^2 + A(z) x + B(z); all singular points have
// degree <= 2 over the base, so the default bound is complete.
bool curve_is_smooth(const CurveCoeffs<FiniteField>& c, unsigned max_ext_degree = 2);
bool curve_is_smooth(const CurveCoeffs<Rationals>& c, unsigned max_ext_degree = 2);

// Closed form: odd characteristic A^2 - 4B squarefree; characteristic 2
// A != 0 and gcd(A, A'^2 B + B'^2) = 1.
template <Field F>
bool curve_is_smooth_closed_form(const CurveCoeffs<F>& c);

struct GammaCReport {
  bool smooth = false;
  StabilityVerdict verdict;
  bool consistent = false;
};

// Smoothness against the destabilizer search; throws Disagreement when the
// two procedures contradict each other.
GammaCReport stability_verdict_gamma_c(const CurveCoeffs<FiniteField>& c, const StabilityOptions& opt = {});

// If t is literally gamma_c for some c, return c.
template <Field F>
std::optional<CurveCoeffs<F>> match_gamma_c(const Trivector<F>& t) {
  const F& f = t.field();
  CurveCoeffs<F> c(f);
  c(3) = f.neg(t.coeff(2, 5, 7));
  c(6) = f.neg(t.coeff(2, 4, 7));
  c(9) = t.coeff(1, 4, 8);
  c(12) = f.neg(t.coeff(1, 4, 7));
  c(15) = t.coeff(2, 3, 5);
  c(18) = t.coeff(1, 4, 5);
  c(24) = t.coeff(1, 3, 4);
  c(30) = t.coeff(1, 2, 3);
  if (build_gamma_c(c) == t) return c;
  return std::nullopt;
}

// Entry point for arbitrary trivectors. Finite fields: gamma_c forms get the
// smoothness certificate, other inputs a bounded search. Rationals: gamma_c
// forms are decided by smoothness over Q; other inputs are reduced modulo a
// few primes and reported as inconclusive.
StabilityVerdict stability_verdict(const Trivector<FiniteField>& t, unsigned max_ext_degree,
                                   const StabilityOptions& opt = {});
StabilityVerdict stability_verdict(const Trivector<Rationals>& t, unsigned max_ext_degree,
                                   const StabilityOptions& opt = {});

}  // namespace trivec
