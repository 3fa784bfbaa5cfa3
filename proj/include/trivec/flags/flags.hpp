#pragma once

// Flags F1 < F3 < F6 < F8 in V compatible with a trivector, their search
// through points of the rank-4 locus, and the top Chern class computation in
// the Chow ring of Flag(1,3,6,8; V9).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "trivec/algebra/linalg.hpp"
#include "trivec/core/trivector.hpp"

namespace trivec {

// The 31 monomials (1-based labels) whose coefficients vanish in coordinates
// adapted to a compatible flag.
const std::array<std::array<int, 3>, 31>& flag_conditions();

template <Field F>
struct Flag1368 {
  Matrix<F> F1, F3, F6, F8;  // RREF row bases of dimensions 1, 3, 6, 8

  const F& field() const { return F1.field(); }
  bool operator==(const Flag1368& o) const { return F1 == o.F1 && F3 == o.F3 && F6 == o.F6 && F8 == o.F8; }
};

template <Field F>
Flag1368<F> standard_flag(const F& f) {
  auto rows = [&](size_t k) {
    Matrix<F> m(f, k, 9);
    for (size_t i = 0; i < k; ++i) m(i, i) = f.one();
    return m;
  };
  return {rows(1), rows(3), rows(6), rows(8)};
}

template <Field F>
Flag1368<F> make_flag(const Matrix<F>& f1, const Matrix<F>& f3, const Matrix<F>& f6, const Matrix<F>& f8) {
  Flag1368<F> fl{rref(f1), rref(f3), rref(f6), rref(f8)};
  auto check = [](const Matrix<F>& m, size_t dim) {
    if (m.cols() != 9 || rank(m) != dim) fail(Errc::invalid_input, "flag piece must have dimension " + std::to_string(dim));
  };
  check(fl.F1, 1);
  check(fl.F3, 3);
  check(fl.F6, 6);
  check(fl.F8, 8);
  auto nested = [](const Matrix<F>& a, const Matrix<F>& b) { return rank(vstack(a, b)) == b.rows(); };
  if (!nested(fl.F1, fl.F3) || !nested(fl.F3, fl.F6) || !nested(fl.F6, fl.F8))
    fail(Errc::invalid_input, "flag pieces are not nested");
  // drop zero rows left by rref of non-minimal spanning sets
  auto trim = [](const Matrix<F>& m, size_t dim) {
    Matrix<F> r(m.field(), dim, 9);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < 9; ++j) r(i, j) = m(i, j);
    return r;
  };
  return {trim(fl.F1, 1), trim(fl.F3, 3), trim(fl.F6, 6), trim(fl.F8, 8)};
}

// Columns v1..v9 of an adapted basis: v1 spans F1, v1..v3 span F3, and so on.
template <Field F>
Matrix<F> adapted_basis(const Flag1368<F>& fl) {
  const F& f = fl.field();
  std::vector<std::vector<typename F::Element>> basis;
  auto extend = [&](const Matrix<F>& piece) {
    for (size_t r = 0; r < piece.rows(); ++r) {
      std::vector<typename F::Element> v(9);
      for (size_t j = 0; j < 9; ++j) v[j] = piece(r, j);
      auto trial = basis;
      trial.push_back(v);
      if (rank(Matrix<F>::from_rows(f, trial, 9)) == trial.size()) basis = std::move(trial);
    }
  };
  extend(fl.F1);
  extend(fl.F3);
  extend(fl.F6);
  extend(fl.F8);
  extend(Matrix<F>::identity(f, 9));
  return Matrix<F>::from_rows(f, basis, 9).transpose();
}

template <Field F>
struct CompatibilityReport {
  bool compatible = true;
  std::vector<std::pair<std::array<int, 3>, typename F::Element>> violated;
};

// Checks the 31 coefficients of t in the basis given by the columns of g,
// which must be adapted to the flag.
template <Field F>
CompatibilityReport<F> flag_compatible_in_basis(const Trivector<F>& t, const Matrix<F>& g) {
  auto tp = gl_act(inverse_or_throw(g), t);
  CompatibilityReport<F> rep;
  for (const auto& c : flag_conditions()) {
    auto v = tp.coeff(c[0], c[1], c[2]);
    if (!t.field().is_zero(v)) {
      rep.compatible = false;
      rep.violated.push_back({c, v});
    }
  }
  return rep;
}

template <Field F>
CompatibilityReport<F> flag_compatible(const Trivector<F>& t, const Flag1368<F>& fl) {
  if (!(t.field() == fl.field())) fail(Errc::field_mismatch, "flag and trivector over different fields");
  return flag_compatible_in_basis(t, adapted_basis(fl));
}

// image of a flag under g in GL(V)
template <Field F>
Flag1368<F> act_on_flag(const Matrix<F>& g, const Flag1368<F>& fl) {
  auto img = [&](const Matrix<F>& m) { return (g * m.transpose()).transpose(); };
  return make_flag(img(fl.F1), img(fl.F3), img(fl.F6), img(fl.F8));
}

// ---- search ----

struct FlagOptions {
  unsigned threads = 0;
  u64 scan_budget = 6'000'000;   // full P^8 scans up to this many points
  u64 theta_budget = 8'000'000;  // rank tests spent walking theta curves, per level
  u64 candidate_cap = 4096;      // lines tried when the linear system leaves several
};

struct FoundFlag {
  Flag1368<FiniteField> flag;  // over F_{q^level}
  unsigned level = 1;          // field it was found over
  unsigned degree = 1;         // minimal field of definition over the base
  std::vector<u64> point;      // the rank-4 point x = F8^perp
};

struct FlagLevel {
  unsigned d = 1;
  std::string method;  // "scan", "theta" or "skipped"
  u64 x_points = 0;
  std::optional<u64> expected_x_points;  // Jacobian order when t is a gamma_c form
  bool exhaustive = false;
  u64 flags = 0;
};

struct FlagSearchReport {
  std::vector<FoundFlag> flags;
  std::vector<FlagLevel> levels;
  u64 weighted_count = 0;  // geometric points found = sum of orbit sizes
  bool complete = false;   // weighted_count == 81
  std::vector<std::string> notes;
};

// Candidate compatible flags with F8 = ann(x), verified; x must have rank 4.
// Throws NonStableInput if rank Phi(x) <= 2.
std::vector<Flag1368<FiniteField>> flags_at_point(const Trivector<FiniteField>& t, const std::vector<u64>& x,
                                                  const FlagOptions& opt = {}, std::string* note = nullptr);

FlagSearchReport flag_search(const Trivector<FiniteField>& t, unsigned max_ext_degree, const FlagOptions& opt = {});

// ---- Chow ring ----

struct ChernResult {
  mpz_class coefficient;
  std::array<int, 9> exponents{};
  unsigned product_degree = 0;
  size_t remainder_terms = 0;
};

// Reduces a polynomial with integer coefficients (exponent arrays) modulo the
// ideal of positive-degree symmetric polynomials in x1..x9.
using IntPoly = std::vector<std::pair<std::array<int, 9>, mpz_class>>;
IntPoly reduce_symmetric(const IntPoly& p);

ChernResult chern_top_class();

}  // namespace trivec
