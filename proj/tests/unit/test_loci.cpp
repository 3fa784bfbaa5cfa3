#include <random>

#include "doctest.h"
#include "trivec/algebra/solve.hpp"
#include "trivec/core/projective.hpp"
#include "trivec/loci/loci.hpp"
#include "trivec/stability/stability.hpp"

using namespace trivec;

namespace {

CurveCoeffs<FiniteField> smooth_curve(const FiniteField& f, std::mt19937_64& rng) {
  for (;;) {
    auto c = CurveCoeffs<FiniteField>::random(f, rng);
    if (curve_is_smooth_closed_form(c)) return c;
  }
}

// affine solutions by brute force over F_{q^d}
u64 brute_count(const CurveCoeffs<FiniteField>& c, unsigned d) {
  FiniteField L = extension_field(c.field, d);
  FieldEmbedding emb(c.field, L);
  using MP = MultiPoly<FiniteField>;
  MP x = MP::var(L, 2, 0), z = MP::var(L, 2, 1);
  auto k = [&](int w) { return MP::constant(L, 2, emb(c(w))); };
  MP F = x * x + z.pow(5) + k(3) * x * z.pow(2) + k(6) * z.pow(4) + k(9) * x * z + k(12) * z.pow(3) + k(15) * x +
         k(18) * z.pow(2) + k(24) * z + k(30);
  u64 n = 1;
  for (u64 a = 0; a < L.order(); ++a)
    for (u64 b = 0; b < L.order(); ++b) n += F.eval({a, b}) == 0;
  return n;
}

Matrix<FiniteField> random_invertible(const FiniteField& f, std::mt19937_64& rng) {
  for (;;) {
    Matrix<FiniteField> g(f, 9, 9);
    for (size_t i = 0; i < 9; ++i)
      for (size_t j = 0; j < 9; ++j) g(i, j) = f.random(rng);
    if (det(g) != 0) return g;
  }
}

}  // namespace

TEST_SUITE("loci") {
  TEST_CASE("projective indexing round trip") {
    for (u64 q : {2, 3, 4, 7}) {
      const u64 N = proj_space_size(q, 4);
      CHECK(N == (q * q * q * q - 1) / (q - 1));
      u64 v[4];
      for (u64 i = 0; i < N; ++i) {
        proj_point_from_index(i, q, 4, v);
        CHECK(proj_index_of(v, q, 4) == i);
      }
    }
  }

  TEST_CASE("zero trivector has rank 0 everywhere") {
    auto r = enumerate_rank_locus(Trivector<FiniteField>(FiniteField::prime(2)), 8, false);
    CHECK(r.counts[0] == 511);
    CHECK(r.total() == 511);
  }

  TEST_CASE("counts sum to the size of P^8 and match a direct rank oracle") {
    std::mt19937_64 rng(31);
    for (auto f : {FiniteField::prime(2), FiniteField::prime(3), FiniteField::extension(2, 2)}) {
      auto t = build_gamma_c(smooth_curve(f, rng));
      auto r = enumerate_rank_locus(t, 4, true);
      CHECK(r.total() == proj_space_size(f.order(), 9));
      CHECK(r.counts[0] == 0);
      CHECK(r.counts[1] == 0);
      CHECK(r.points.size() == r.count_at_most(4));
      for (auto& x : r.points) CHECK(rank(phi_at(t, x)) <= 4);
      if (f.order() <= 3) {
        std::array<u64, 5> direct{};
        std::vector<u64> x(9);
        for (u64 i = 0; i < proj_space_size(f.order(), 9); ++i) {
          proj_point_from_index(i, f.order(), 9, x.data());
          ++direct[rank(phi_at(t, x)) / 2];
        }
        CHECK(direct == r.counts);
      }
    }
  }

  TEST_CASE("counts are invariant under the group") {
    std::mt19937_64 rng(32);
    FiniteField f = FiniteField::prime(3);
    auto t = build_gamma_c(smooth_curve(f, rng));
    auto g = random_invertible(f, rng);
    CHECK(enumerate_rank_locus(t, 8, false).counts == enumerate_rank_locus(gl_act(g, t), 8, false).counts);
  }

  TEST_CASE("Weierstrass point lies on X") {
    FiniteField f = FiniteField::prime(2);
    CurveCoeffs<FiniteField> c(f);
    c(15) = 1;
    auto r = enumerate_rank_locus(build_gamma_c(c), 4, true);
    std::vector<u64> e9(9, 0);
    e9[8] = 1;
    CHECK(std::find(r.points.begin(), r.points.end(), e9) != r.points.end());
  }

  TEST_CASE("jacobian order from counts") {
    for (u64 q : {2, 3, 4, 5, 7, 9}) CHECK(jacobian_order_from_counts(q + 1, q * q + 1, q) == q * q + 1);
    // oracle: (1 - aT + qT^2)(1 - bT + qT^2) at T = 1
    for (i64 q : {2, 3, 5, 7, 11})
      for (i64 a = -2; a <= 2; ++a)
        for (i64 b = -2; b <= 2; ++b) {
          if (a * a > 4 * q || b * b > 4 * q) continue;
          const i64 e1 = a + b, p2 = a * a - 2 * q + b * b - 2 * q;
          const i64 expect = (1 - a + q) * (1 - b + q);
          CHECK(jacobian_order_from_counts(q + 1 - e1, q * q + 1 - p2, q) == u64(expect));
        }
    CHECK_THROWS_AS(jacobian_order_from_counts(100, 5, 2), Error);
    CHECK_THROWS_AS(jacobian_order_from_counts(3, 100, 2), Error);
  }

  TEST_CASE("curve point counts") {
    FiniteField f = FiniteField::prime(2);
    CurveCoeffs<FiniteField> c(f);
    c(15) = 1;
    CHECK(curve_point_counts(c, {1, 2}) == std::vector<u64>{3, 5});
    CHECK(jacobian_order_from_counts(3, 5, 2) == 5);
    CHECK_THROWS_AS(curve_point_counts(CurveCoeffs<FiniteField>(f), {1}), Error);
    std::mt19937_64 rng(33);
    for (auto K : {FiniteField::prime(3), FiniteField::prime(5), FiniteField::extension(2, 2), FiniteField::prime(2)})
      for (int n = 0; n < 4; ++n) {
        auto cc = smooth_curve(K, rng);
        auto N = curve_point_counts(cc, {1, 2});
        CHECK(N[0] == brute_count(cc, 1));
        CHECK(N[1] == brute_count(cc, 2));
        CHECK(N[0] <= N[1]);
      }
  }

  TEST_CASE("X count equals the Jacobian order") {
    std::mt19937_64 rng(34);
    FiniteField f2 = FiniteField::prime(2);
    CurveCoeffs<FiniteField> c(f2);
    c(15) = 1;
    CHECK(enumerate_rank_locus(build_gamma_c(c), 4, false).count_at_most(4) == 5);
    for (auto f : {FiniteField::prime(3), FiniteField::prime(2)})
      for (int n = 0; n < 3; ++n) {
        auto cc = smooth_curve(f, rng);
        auto N = curve_point_counts(cc, {1, 2});
        CHECK(enumerate_rank_locus(build_gamma_c(cc), 4, false).count_at_most(4) ==
              jacobian_order_from_counts(i64(N[0]), i64(N[1]), f.order()));
      }
  }

  TEST_CASE("embedding certificate") {
    FiniteField f2 = FiniteField::prime(2), f7 = FiniteField::prime(7);
    CurveCoeffs<FiniteField> a(f2);
    a(15) = 1;
    CHECK(verify_curve_embedding(a).affine_points == 2);
    CurveCoeffs<FiniteField> b(f7);
    b(30) = 1;
    auto cert = verify_curve_embedding(b);
    CHECK(cert.weierstrass_point_ok);
    CHECK(cert.affine_points + 1 == curve_point_counts(b, {1})[0]);
    std::mt19937_64 rng(35);
    for (int n = 0; n < 5; ++n) CHECK(verify_curve_embedding(smooth_curve(f7, rng)).weierstrass_point_ok);
    CHECK_THROWS_AS(verify_curve_embedding(CurveCoeffs<FiniteField>(f7)), Error);
  }

  TEST_CASE("cubic through Y") {
    std::mt19937_64 rng(36);
    FiniteField f = FiniteField::prime(3);
    auto t = build_gamma_c(smooth_curve(f, rng));
    auto res = cubic_of_Y(t);
    CHECK(res.kernel_dimension == 1);
    const auto& cub = res.cubic;
    REQUIRE(cub.field == f);
    size_t p = 0;
    while (cub.coeffs[p] == 0) ++p;
    CHECK(cub.coeffs[p] == 1);
    // oracle: rank of the full evaluation matrix
    auto Y = enumerate_rank_locus(t, 6, true);
    Matrix<FiniteField> ev(f, Y.points.size(), 165);
    for (size_t i = 0; i < Y.points.size(); ++i) {
      auto v = cub.as_poly();
      for (size_t m = 0; m < 165; ++m) {
        u64 val = 1;
        for (int k = 0; k < 9; ++k)
          for (int e = 0; e < cubic_monomials()[m][k]; ++e) val = f.mul(val, Y.points[i][k]);
        ev(i, m) = val;
      }
    }
    CHECK(rank(ev) == 164);
    // singular locus of the cubic over F_3 is exactly X; cubic vanishes exactly on Y
    std::vector<u64> x(9);
    for (u64 i = 0; i < proj_space_size(3, 9); ++i) {
      proj_point_from_index(i, 3, 9, x.data());
      const size_t r = rank(phi_at(t, x));
      auto g = cub.gradient(x);
      bool grad0 = std::all_of(g.begin(), g.end(), [](u64 v) { return v == 0; });
      CHECK((cub.eval(x) == 0) == (r <= 6));
      // in characteristic 3 the gradient alone can vanish off the cubic
      CHECK((grad0 && cub.eval(x) == 0) == (r <= 4));
    }
  }

  TEST_CASE("gradient against polynomial derivatives") {
    std::mt19937_64 rng(37);
    FiniteField f = FiniteField::prime(5);
    CubicForm<FiniteField> c{f, std::vector<u64>(165)};
    for (auto& v : c.coeffs) v = f.random(rng);
    auto P = c.as_poly();
    for (int n = 0; n < 10; ++n) {
      std::vector<u64> x(9);
      for (auto& v : x) v = f.random(rng);
      CHECK(P.eval(x) == c.eval(x));
      auto g = c.gradient(x);
      for (unsigned v = 0; v < 9; ++v) CHECK(P.derivative(v).eval(x) == g[v]);
    }
  }

  TEST_CASE("pencil reconstruction round trip") {
    std::mt19937_64 rng(38);
    FiniteField f = FiniteField::extension(2, 4);
    for (int n = 0; n < 3; ++n) {
      auto t = gl_act(random_invertible(f, rng), build_gamma_c(smooth_curve(f, rng)));
      auto W = pencil_span(t);
      // hide the basis behind a random change of coordinates on the span
      auto h = random_invertible(f, rng);
      std::vector<Matrix<FiniteField>> W2;
      for (int i = 0; i < 9; ++i) {
        Matrix<FiniteField> m(f, 9, 9);
        for (int j = 0; j < 9; ++j) m = m + W[j].scale(h(i, j));
        W2.push_back(m);
      }
      CHECK(proportional(t, reconstruct_from_pencil(W2, 100 + n)));
    }
    Rationals q;
    CurveCoeffs<Rationals> c(q);
    c(30) = 1;
    c(15) = mpq_class(1, 2);
    auto tq = build_gamma_c(c);
    CHECK(proportional(tq, reconstruct_from_pencil(pencil_span(tq))));
  }

  TEST_CASE("low-rank pencil is degenerate") {
    FiniteField f = FiniteField::extension(2, 4);
    std::vector<Matrix<FiniteField>> W;
    for (int a = 0; a < 6 && W.size() < 9; ++a)
      for (int b = a + 1; b < 6 && W.size() < 9; ++b) {
        Matrix<FiniteField> m(f, 9, 9);
        m(a, b) = 1;
        m(b, a) = 1;
        W.push_back(m);
      }
    CHECK_THROWS_AS(reconstruct_from_pencil(W, 1, 200), Error);
  }
}
