#include <random>

#include "doctest.h"
#include "trivec/e8/e8.hpp"
#include "trivec/stability/stability.hpp"

using namespace trivec;

namespace {

template <Field F>
GradedE8Element<F> random_element(const F& f, std::mt19937_64& rng, int degree = -1) {
  GradedE8Element<F> x(f);
  const int lo = degree < 0 ? 0 : degree == 0 ? 0 : degree == 1 ? 80 : 164;
  const int hi = degree < 0 ? 248 : degree == 0 ? 80 : degree == 1 ? 164 : 248;
  for (int k = lo; k < hi; ++k) x = x + e8_basis(f, k).scale(f.random(rng));
  return x;
}

template <Field F>
GradedE8Element<F> jacobiator(const GradedE8Element<F>& x, const GradedE8Element<F>& y, const GradedE8Element<F>& z,
                              const E8Normalization& n = {}) {
  return bracket(x, bracket(y, z, n), n) + bracket(y, bracket(z, x, n), n) + bracket(z, bracket(x, y, n), n);
}

int degree_of(const std::vector<u64>& coords) {
  int d = -1;
  for (int k = 0; k < 248; ++k) {
    if (!coords[k]) continue;
    const int dk = k < 80 ? 0 : k < 164 ? 1 : 2;
    if (d >= 0 && d != dk) return -2;
    d = dk;
  }
  return d;
}

CurveCoeffs<FiniteField> weierstrass_curve(const FiniteField& f, std::mt19937_64& rng, int c18, int c24) {
  for (;;) {
    CurveCoeffs<FiniteField> c(f);
    c(12) = f.random(rng);
    c(30) = f.random(rng);
    c(18) = c18 < 0 ? f.random(rng) : u64(c18);
    c(24) = c24 < 0 ? f.random(rng) : u64(c24);
    if (curve_is_smooth_closed_form(c)) return c;
  }
}

// ad of a degree-0 pair over characteristic 3
GradedE8Element<FiniteField> degree0(const Matrix<FiniteField>& B, u64 s) {
  GradedE8Element<FiniteField> g(B.field());
  g.B = B;
  g.s = s;
  return g;
}

}  // namespace

TEST_SUITE("e8") {
  TEST_CASE("coordinates and basis are inverse") {
    for (auto f : {FiniteField::prime(3), FiniteField::prime(7)})
      for (int k = 0; k < 248; ++k) {
        auto c = e8_basis(f, k).coordinates();
        REQUIRE(c.size() == 248);
        for (int i = 0; i < 248; ++i) CHECK(c[i] == (i == k ? 1u : 0u));
      }
  }

  TEST_CASE("alternation") {
    std::mt19937_64 rng(41);
    for (auto f : {FiniteField::prime(3), FiniteField::prime(7)})
      for (int n = 0; n < 5; ++n) {
        auto x = random_element(f, rng);
        CHECK(bracket(x, x).is_zero());
        auto y = random_element(f, rng);
        CHECK((bracket(x, y) + bracket(y, x)).is_zero());
      }
    Rationals q;
    auto x = random_element(q, rng);
    CHECK(bracket(x, x).is_zero());
  }

  TEST_CASE("grading") {
    std::mt19937_64 rng(42);
    for (auto f : {FiniteField::prime(3), FiniteField::prime(7)})
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          auto c = bracket(random_element(f, rng, i), random_element(f, rng, j)).coordinates();
          const int d = degree_of(c);
          CHECK(d != -2);
          if (d >= 0) CHECK(d == (i + j) % 3);
        }
  }

  TEST_CASE("Jacobi identity") {
    std::mt19937_64 rng(43);
    for (auto f : {FiniteField::prime(7), FiniteField::prime(3)})
      for (int n = 0; n < 50; ++n)
        CHECK(jacobiator(random_element(f, rng), random_element(f, rng), random_element(f, rng)).is_zero());
    FiniteField f11 = FiniteField::prime(11);
    for (int n = 0; n < 10; ++n)
      CHECK(jacobiator(random_element(f11, rng), random_element(f11, rng), random_element(f11, rng)).is_zero());
    Rationals q;
    for (int n = 0; n < 3; ++n)
      CHECK(jacobiator(random_element(q, rng), random_element(q, rng), random_element(q, rng)).is_zero());
  }

  TEST_CASE("Jacobi pins the normalization") {
    std::mt19937_64 rng(44);
    Rationals q;
    auto x = random_element(q, rng), y = random_element(q, rng), z = random_element(q, rng);
    for (int a : {-2, -1, 1, 2})
      for (int b : {-2, -1, 1, 2})
        for (int g : {-4, -2, -1, 1, 2, 4}) {
          E8Normalization n{a, b, g};
          CHECK(jacobiator(x, y, z, n).is_zero() == (g == -a * b));
        }
  }

  TEST_CASE("ad is a homomorphism") {
    std::mt19937_64 rng(45);
    FiniteField f = FiniteField::prime(7);
    auto x = random_element(f, rng), y = random_element(f, rng);
    auto X = ad_matrix(x), Y = ad_matrix(y);
    CHECK(ad_matrix(bracket(x, y)) == X * Y - Y * X);
  }

  TEST_CASE("degree 0 acts faithfully on degree 1") {
    for (auto f : {FiniteField::prime(3), FiniteField::prime(7)}) {
      // images of the zero operator have only the zero solution
      std::vector<Trivector<FiniteField>> zero(kTriples, Trivector<FiniteField>(f));
      auto sol = solve_degree0_action(zero);
      REQUIRE(sol);
      CHECK(sol->first.is_zero());
      CHECK(sol->second == 0);
      // a random pair is recovered from its action
      std::mt19937_64 rng(46);
      auto g = random_element(f, rng, 0);
      std::vector<Trivector<FiniteField>> imgs;
      for (int s = 0; s < kTriples; ++s) {
        GradedE8Element<FiniteField> e(f);
        e.d1[s] = 1;
        imgs.push_back(bracket(g, e).d1);
      }
      auto back = solve_degree0_action(imgs);
      REQUIRE(back);
      CHECK(degree0(back->first, back->second) == g);
    }
  }

  TEST_CASE("restricted cube matches (ad t)^3 on degrees 1 and 2") {
    std::mt19937_64 rng(47);
    FiniteField f = FiniteField::prime(3);
    for (int n = 0; n < 2; ++n) {
      Trivector<FiniteField> t(f);
      for (int s = 0; s < kTriples; ++s) t[s] = f.random(rng);
      auto [B, s] = restricted_cube_pair(t);
      u64 tr = 0;
      for (int i = 0; i < 9; ++i) tr = f.add(tr, B(i, i));
      CHECK(tr == 0);  // tr B + 3 s = 0
      GradedE8Element<FiniteField> g(f);
      g.d1 = t;
      auto A = ad_matrix(g);
      auto A3 = A * A * A;
      auto P = ad_matrix(degree0(B, s));
      for (int i = 80; i < 248; ++i)
        for (int j = 80; j < 248; ++j) CHECK(A3(i, j) == P(i, j));
    }
  }

  TEST_CASE("gamma^[9] by cubing equals the ad^9 route") {
    std::mt19937_64 rng(48);
    FiniteField f = FiniteField::prime(3);
    auto t = build_gamma_c(weierstrass_curve(f, rng, -1, -1));
    GradedE8Element<FiniteField> g(f);
    g.d1 = t;
    std::vector<Trivector<FiniteField>> imgs;
    for (int s = 0; s < kTriples; ++s) {
      GradedE8Element<FiniteField> e(f);
      e.d1[s] = 1;
      for (int k = 0; k < 9; ++k) e = bracket(g, e);
      imgs.push_back(e.d1);
    }
    auto sol = solve_degree0_action(imgs);
    REQUIRE(sol);
    CHECK(mod_scalars(sol->first) == restricted_power(t, 9));
  }

  TEST_CASE("gamma^[27] = c24 gamma^[3] - c18 gamma^[9]") {
    std::mt19937_64 rng(49);
    for (auto f : {FiniteField::prime(3), FiniteField::extension(3, 2)})
      for (int n = 0; n < 4; ++n) {
        auto c = weierstrass_curve(f, rng, -1, -1);
        auto t = build_gamma_c(c);
        auto A3 = restricted_power(t, 3), A9 = restricted_power(t, 9), A27 = restricted_power(t, 27);
        CHECK(A27 == mod_scalars(A3.scale(c(24)) - A9.scale(c(18))));
      }
  }

  TEST_CASE("gamma0 powers span a plane modulo scalars") {
    FiniteField f = FiniteField::prime(3);
    auto t = build_gamma_c(CurveCoeffs<FiniteField>(f));
    auto A3 = restricted_power(t, 3), A9 = restricted_power(t, 9);
    Matrix<FiniteField> m(f, 3, 81);
    for (int k = 0; k < 81; ++k) {
      m(0, k) = A3.data()[k];
      m(1, k) = A9.data()[k];
      m(2, k) = k % 10 == 0 ? 1 : 0;
    }
    CHECK(rank(m) == 3);
  }

  TEST_CASE("three_rank") {
    std::mt19937_64 rng(50);
    FiniteField f3 = FiniteField::prime(3), f9 = FiniteField::extension(3, 2);
    for (int n = 0; n < 3; ++n) {
      auto r = three_rank(weierstrass_curve(f3, rng, -1, 1));
      CHECK(r.lie == 2);
      CHECK(r.coeff == 2);
      CHECK(three_rank(weierstrass_curve(f3, rng, 1, 0)).lie == 1);
      CHECK(three_rank(weierstrass_curve(f9, rng, 0, 0)).lie == 0);
    }
    CurveCoeffs<FiniteField> bad(f3);
    bad(30) = 1;
    bad(3) = 1;
    CHECK_THROWS_AS(three_rank(bad), Error);
    CHECK_THROWS_AS(three_rank(CurveCoeffs<FiniteField>(f3)), Error);
    CurveCoeffs<FiniteField> f7c(FiniteField::prime(7));
    f7c(30) = 1;
    CHECK_THROWS_AS(three_rank(f7c), Error);
  }

  TEST_CASE("semisimplicity ignores scalars") {
    std::mt19937_64 rng(51);
    FiniteField f = FiniteField::extension(3, 2);
    auto A = restricted_power(build_gamma_c(weierstrass_curve(f, rng, 0, 0)), 3);
    const bool base = is_semisimple(A);
    for (int n = 0; n < 10; ++n) CHECK(is_semisimple(A + Matrix<FiniteField>::identity(f, 9).scale(f.random(rng))) == base);
  }

  TEST_CASE("characteristic checks") {
    FiniteField f = FiniteField::prime(7);
    CHECK_THROWS_AS(restricted_power(Trivector<FiniteField>(f), 3), Error);
    CHECK_THROWS_AS(restricted_power(Trivector<FiniteField>(FiniteField::prime(3)), 5), Error);
  }
}
