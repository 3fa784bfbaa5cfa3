#include <random>

#include "doctest.h"
#include "trivec/algebra/linalg.hpp"
#include "trivec/algebra/solve.hpp"

using namespace trivec;

namespace {

template <class F>
Matrix<F> random_matrix(const F& f, size_t r, size_t c, std::mt19937_64& rng) {
  Matrix<F> m(f, r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = f.random(rng);
  return m;
}

template <class F>
Matrix<F> random_skew(const F& f, size_t n, std::mt19937_64& rng) {
  Matrix<F> m(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      m(i, j) = f.random(rng);
      m(j, i) = f.neg(m(i, j));
    }
  return m;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rank and kernel of trivial matrices") {
    FiniteField f = FiniteField::prime(7);
    auto z = rank_and_kernel(Matrix<FiniteField>(f, 9, 9));
    CHECK(z.rank == 0);
    CHECK(z.kernel.size() == 9);
    auto id = rank_and_kernel(Matrix<FiniteField>::identity(f, 9));
    CHECK(id.rank == 9);
    CHECK(id.kernel.empty());
  }

  TEST_CASE("kernel vectors are annihilated and reduced") {
    std::mt19937_64 rng(2);
    for (auto f : {FiniteField::prime(7), FiniteField::extension(2, 3)}) {
      for (int t = 0; t < 30; ++t) {
        auto m = random_matrix(f, 5, 9, rng);
        auto rk = rank_and_kernel(m);
        CHECK(rk.rank + rk.kernel.size() == 9);
        for (auto& v : rk.kernel) {
          auto w = m.apply(v);
          for (auto x : w) CHECK(x == 0);
        }
        auto km = Matrix<FiniteField>::from_rows(f, rk.kernel, 9);
        CHECK(rref(km) == km);
      }
    }
  }

  TEST_CASE("skew matrices have even rank") {
    std::mt19937_64 rng(3);
    FiniteField f = FiniteField::prime(7);
    for (int t = 0; t < 50; ++t) {
      auto m = random_skew(f, 9, rng);
      // force low rank sometimes
      if (t % 3 == 0)
        for (size_t j = 0; j < 9; ++j) {
          m(0, j) = 0;
          m(j, 0) = 0;
        }
      CHECK(rank(m) % 2 == 0);
    }
    // exhaustive 4x4 over F_3: every alternating matrix has rank 0, 2 or 4
    FiniteField f3 = FiniteField::prime(3);
    for (int code = 0; code < 729; ++code) {
      Matrix<FiniteField> m(f3, 4, 4);
      int c = code;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          m(i, j) = c % 3;
          m(j, i) = f3.neg(c % 3);
          c /= 3;
        }
      CHECK(rank(m) % 2 == 0);
    }
  }

  TEST_CASE("pfaffian basics") {
    FiniteField f = FiniteField::prime(5);
    Matrix<FiniteField> m(f, 2, 2);
    m(0, 1) = 3;
    m(1, 0) = 2;
    CHECK(pfaffian(m) == 3);
    Matrix<FiniteField> j(f, 4, 4);
    j(0, 1) = 1, j(1, 0) = 4, j(2, 3) = 1, j(3, 2) = 4;
    CHECK(pfaffian(j) == 1);
    Matrix<FiniteField> odd(f, 3, 3);
    CHECK_THROWS_AS(pfaffian(odd), Error);
    Matrix<FiniteField> sym(FiniteField::prime(2), 2, 2);
    sym(0, 0) = 1;  // symmetric = skew in characteristic 2, but not alternating
    CHECK_THROWS_AS(pfaffian(sym), Error);
  }

  TEST_CASE("pfaffian squared is the cofactor determinant") {
    std::mt19937_64 rng(4);
    for (auto f : {FiniteField::prime(5), FiniteField::prime(2), FiniteField::extension(3, 2)})
      for (size_t n : {2, 4, 6, 8})
        for (int t = 0; t < 5; ++t) {
          auto m = random_skew(f, n, rng);
          auto pf = pfaffian(m);
          CHECK(f.mul(pf, pf) == det_cofactor(m));
          CHECK(det(m) == det_cofactor(m));
        }
    Rationals q;
    for (int t = 0; t < 5; ++t) {
      auto m = random_skew(q, 6, rng);
      auto pf = pfaffian(m);
      CHECK(pf * pf == det_cofactor(m));
    }
  }

  TEST_CASE("pfaffian transforms by the determinant") {
    std::mt19937_64 rng(5);
    FiniteField f = FiniteField::prime(11);
    for (int t = 0; t < 20; ++t) {
      auto m = random_skew(f, 6, rng);
      auto g = random_matrix(f, 6, 6, rng);
      CHECK(pfaffian(g.transpose() * m * g) == f.mul(det(g), pfaffian(m)));
    }
  }

  TEST_CASE("semisimplicity") {
    FiniteField f = FiniteField::prime(7);
    CHECK(is_semisimple(Matrix<FiniteField>::identity(f, 4)));
    Matrix<FiniteField> jb(f, 2, 2);
    jb(0, 1) = 1;
    CHECK_FALSE(is_semisimple(jb));
    Matrix<FiniteField> m(f, 4, 4);
    m(0, 0) = 1, m(1, 1) = 2, m(2, 2) = 3, m(3, 3) = 3, m(2, 3) = 1;
    CHECK_FALSE(is_semisimple(m));
    // minimal polynomial of the same matrix: (x-1)(x-2)(x-3)^2
    auto mp = minimal_polynomial(m);
    using P = UPoly<FiniteField>;
    P expect = P(f, {6, 1}) * P(f, {5, 1}) * P(f, {4, 1}) * P(f, {4, 1});
    CHECK(mp == expect);
    // companion matrix of x^2+1 over F_3 is semisimple (irreducible) but not diagonalizable over F_3
    FiniteField f3 = FiniteField::prime(3);
    Matrix<FiniteField> c(f3, 2, 2);
    c(0, 1) = 2, c(1, 0) = 1;
    CHECK(is_semisimple(c));
  }

  TEST_CASE("semisimplicity is invariant under adding scalars") {
    std::mt19937_64 rng(6);
    FiniteField f = FiniteField::prime(3);
    for (int t = 0; t < 20; ++t) {
      auto m = random_matrix(f, 5, 5, rng);
      if (t % 2) m(0, 1) = 1, m(0, 0) = 0, m(1, 1) = 0, m(1, 0) = 0;
      bool s = is_semisimple(m);
      for (u64 l = 1; l < 3; ++l) CHECK(is_semisimple(m + Matrix<FiniteField>::identity(f, 5).scale(l)) == s);
    }
  }

  TEST_CASE("rank survives field embedding") {
    std::mt19937_64 rng(7);
    FiniteField f = FiniteField::prime(3);
    FiniteField L = extension_field(f, 4);
    FieldEmbedding emb(f, L);
    FiniteField k2 = FiniteField::extension(3, 2);
    FieldEmbedding emb2(k2, L);
    for (int t = 0; t < 20; ++t) {
      auto m = random_matrix(f, 6, 7, rng);
      if (t % 2)
        for (size_t j = 0; j < 7; ++j) m(5, j) = f.add(m(0, j), m(1, j));
      Matrix<FiniteField> e(L, 6, 7);
      for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 7; ++j) e(i, j) = emb(m(i, j));
      CHECK(rank(m) == rank(e));
      auto m2 = random_matrix(k2, 4, 4, rng);
      Matrix<FiniteField> e2(L, 4, 4);
      for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) e2(i, j) = emb2(m2(i, j));
      CHECK(rank(m2) == rank(e2));
      CHECK(emb2(det(m2)) == det(e2));
    }
  }

  TEST_CASE("inverse and solve") {
    std::mt19937_64 rng(8);
    FiniteField f = FiniteField::extension(2, 4);
    for (int t = 0; t < 20; ++t) {
      auto m = random_matrix(f, 5, 5, rng);
      auto inv = inverse(m);
      if (det(m) == 0) {
        CHECK_FALSE(inv.has_value());
        continue;
      }
      CHECK(*inv * m == Matrix<FiniteField>::identity(f, 5));
      std::vector<u64> b(5);
      for (auto& x : b) x = f.random(rng);
      auto x = solve(m, b);
      REQUIRE(x.has_value());
      CHECK(m.apply(*x) == b);
    }
  }
}

TEST_SUITE("solve") {
  using MP = MultiPoly<FiniteField>;

  TEST_CASE("linear system") {
    FiniteField f = FiniteField::prime(2);
    auto sols = singular_point_search({MP::var(f, 2, 0), MP::var(f, 2, 1)}, f, 3);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].coords == std::vector<u64>{0, 0});
    CHECK(sols[0].degree == 1);
  }

  TEST_CASE("cuspidal quintic is singular at the origin") {
    FiniteField f = FiniteField::prime(2);
    MP x = MP::var(f, 2, 0), z = MP::var(f, 2, 1);
    MP F = x * x + z.pow(5);
    auto sols = singular_point_search({F, F.derivative(0), F.derivative(1)}, f, 4);
    bool origin = false;
    for (auto& s : sols) origin = origin || (s.coords == std::vector<u64>{0, 0} && s.degree == 1);
    CHECK(origin);
  }

  TEST_CASE("smooth curve has no singular points up to degree 8") {
    FiniteField f = FiniteField::prime(2);
    MP x = MP::var(f, 2, 0), z = MP::var(f, 2, 1);
    MP F = x * x + x + z.pow(5);
    CHECK(singular_point_search({F, F.derivative(0), F.derivative(1)}, f, 8).empty());
    // oracle: exhaustive over F_{2^d}^2
    for (unsigned d = 1; d <= 8; ++d) {
      FiniteField L = extension_field(f, d);
      for (u64 a = 0; a < L.order(); ++a)
        for (u64 b = 0; b < L.order(); ++b) {
          MP FL = F.map_coefficients(L, [](u64 c) { return c; });
          bool all = L.is_zero(FL.eval({a, b})) && L.is_zero(FL.derivative(0).eval({a, b})) &&
                     L.is_zero(FL.derivative(1).eval({a, b}));
          CHECK_FALSE(all);
        }
    }
  }

  TEST_CASE("points found with their minimal field of definition") {
    // x^2 + x + 1 = 0, z = 0 has its two roots in F_4 only
    FiniteField f = FiniteField::prime(2);
    MP x = MP::var(f, 2, 0), z = MP::var(f, 2, 1), one = MP::constant(f, 2, 1);
    auto sols = singular_point_search({x * x + x + one, z}, f, 4);
    REQUIRE(sols.size() == 2);
    for (auto& s : sols) CHECK(s.degree == 2);
  }

  TEST_CASE("three variables with brute-force fallback") {
    FiniteField f = FiniteField::prime(5);
    MP x = MP::var(f, 3, 0), y = MP::var(f, 3, 1), z = MP::var(f, 3, 2);
    // x*y = 0 and x*z = 0 share the factor x
    auto sols = solve_over({x * y, x * z}, f);
    // x = 0 (25 points) or y = z = 0 (5 points, one shared)
    CHECK(sols.size() == 29);
  }

  TEST_CASE("rationals rejected") {
    Rationals q;
    CHECK_THROWS_AS(singular_point_search(std::vector<MultiPoly<Rationals>>{}, q, 1), Error);
  }
}
