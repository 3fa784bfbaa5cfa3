#include "trivec/e8/e8.hpp"

#include "trivec/stability/stability.hpp"

namespace trivec {

namespace e8detail {

const std::array<int, kTriples>& complement_sign() {
  static const std::array<int, kTriples> tab = [] {
    std::array<int, kTriples> out{};
    for (int s = 0; s < kTriples; ++s) {
      const auto& t = triples()[s];
      int seq[9] = {t.i, t.j, t.k};
      int n = 3;
      for (int m = 0; m < 9; ++m)
        if (m != t.i && m != t.j && m != t.k) seq[n++] = m;
      out[s] = perm_sign(seq, 9);
    }
    return out;
  }();
  return tab;
}

const std::vector<std::array<DisjointPair, kTriples>>& disjoint_table() {
  static const std::vector<std::array<DisjointPair, kTriples>> tab = [] {
    std::vector<std::array<DisjointPair, kTriples>> out(kTriples);
    for (int a = 0; a < kTriples; ++a)
      for (int b = 0; b < kTriples; ++b) {
        const auto &ta = triples()[a], &tb = triples()[b];
        const unsigned ma = (1u << ta.i) | (1u << ta.j) | (1u << ta.k);
        const unsigned mb = (1u << tb.i) | (1u << tb.j) | (1u << tb.k);
        if (ma & mb) {
          out[a][b] = {-1, 0};
          continue;
        }
        int seq[9] = {ta.i, ta.j, ta.k, tb.i, tb.j, tb.k};
        int n = 6, rest[3], r = 0;
        for (int m = 0; m < 9; ++m)
          if (!((ma | mb) >> m & 1)) seq[n++] = rest[r++] = m;
        out[a][b] = {triple_slot(rest[0], rest[1], rest[2]), perm_sign(seq, 9)};
      }
    return out;
  }();
  return tab;
}

}  // namespace e8detail

namespace {

void require_char3(const FiniteField& f) {
  if (f.characteristic() != 3)
    fail(Errc::not_char_three, "restricted powers need characteristic 3, got " + f.spec());
}

Matrix<FiniteField> cube(const Matrix<FiniteField>& a) { return a * a * a; }

}  // namespace

std::pair<Matrix<FiniteField>, u64> restricted_cube_pair(const Trivector<FiniteField>& t) {
  const FiniteField& f = t.field();
  require_char3(f);
  GradedE8Element<FiniteField> g(f);
  g.d1 = t;
  std::vector<Trivector<FiniteField>> images;
  images.reserve(kTriples);
  for (int s = 0; s < kTriples; ++s) {
    GradedE8Element<FiniteField> e(f);
    e.d1[s] = f.one();
    auto r = bracket(g, bracket(g, bracket(g, e)));
    images.push_back(r.d1);
  }
  auto sol = solve_degree0_action(images);
  if (!sol) fail(Errc::no_solution, "(ad t)^3 on degree 1 is not a derivation action");
  return *sol;
}

Matrix<FiniteField> restricted_power(const Trivector<FiniteField>& t, int e) {
  require_char3(t.field());
  if (e != 3 && e != 9 && e != 27) fail(Errc::invalid_input, "exponent must be 3, 9 or 27");
  auto A = mod_scalars(restricted_cube_pair(t).first);
  if (e >= 9) A = mod_scalars(cube(A));
  if (e == 27) A = mod_scalars(cube(A));
  return A;
}

ThreeRank three_rank(const CurveCoeffs<FiniteField>& c) {
  const FiniteField& f = c.field;
  require_char3(f);
  for (int w : {3, 6, 9, 15})
    if (!f.is_zero(c(w))) fail(Errc::invalid_input, "three_rank expects Weierstrass form (c3 = c6 = c9 = c15 = 0)");
  if (!curve_is_smooth_closed_form(c)) fail(Errc::singular_curve, "three_rank needs a smooth curve");
  auto A = restricted_power(build_gamma_c(c), 3);
  ThreeRank r;
  r.lie = is_semisimple(A) ? 2 : is_semisimple(cube(A)) ? 1 : 0;
  r.coeff = !f.is_zero(c(24)) ? 2 : !f.is_zero(c(18)) ? 1 : 0;
  if (r.lie != r.coeff)
    fail(Errc::disagreement, "3-rank from semisimplicity (" + std::to_string(r.lie) + ") differs from coefficients (" +
                                 std::to_string(r.coeff) + ")");
  return r;
}

}  // namespace trivec
