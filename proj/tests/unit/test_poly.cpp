#include "doctest.h"
#include "trivec/algebra/multipoly.hpp"
#include "trivec/algebra/poly.hpp"

using namespace trivec;

TEST_SUITE("poly") {
  TEST_CASE("division and gcd") {
    FiniteField f = FiniteField::prime(7);
    using P = UPoly<FiniteField>;
    P a(f, {1, 0, 1});        // x^2+1
    P b(f, {6, 1});           // x-1
    auto [q, r] = (a * b + P(f, {3})).divmod(b);
    CHECK(q == a);
    CHECK(r == P(f, {3}));
    CHECK(gcd(a * b, b * b).degree() == 1);
    CHECK_FALSE(is_squarefree(b * b));
    CHECK(is_squarefree(a));
  }

  TEST_CASE("roots agree with exhaustive evaluation") {
    for (auto f : {FiniteField::prime(13), FiniteField::extension(2, 8), FiniteField::extension(3, 5),
                   FiniteField::extension(2, 12)}) {
      std::mt19937_64 rng(5);
      for (int t = 0; t < 5; ++t) {
        using P = UPoly<FiniteField>;
        P g(f, {f.one()});
        for (int i = 0; i < 4; ++i) g = g * P(f, {f.random(rng), f.one()});
        g = g * P(f, {f.random_nonzero(rng), f.random(rng), f.one()});
        auto rs = roots(g, rng);
        std::vector<u64> brute;
        for (u64 c = 0; c < f.order(); ++c)
          if (f.is_zero(g.eval(c))) brute.push_back(c);
        CHECK(rs == brute);
      }
    }
  }

  TEST_CASE("resultant of linear forms") {
    FiniteField f = FiniteField::prime(11);
    using MP = MultiPoly<FiniteField>;
    MP x = MP::var(f, 2, 0), y = MP::var(f, 2, 1);
    MP one = MP::constant(f, 2, 1);
    // res_x(x - y, x - 2) = 2 - y up to sign
    MP r = resultant(x - y, x - one.scale(2), 0);
    CHECK(r.degree_in(1) == 1);
    CHECK(f.is_zero(r.eval({0, 2})));
    // res_x(x^2 - y, x - 3) vanishes at y = 9
    MP r2 = resultant(x * x - y, x - one.scale(3), 0);
    CHECK(f.is_zero(r2.eval({0, 9})));
    CHECK_FALSE(f.is_zero(r2.eval({0, 8})));
  }

  TEST_CASE("derivative and specialization") {
    FiniteField f = FiniteField::prime(5);
    using MP = MultiPoly<FiniteField>;
    MP x = MP::var(f, 2, 0), z = MP::var(f, 2, 1);
    MP g = x * x + z.pow(5);
    CHECK(g.derivative(1).is_zero());  // 5 z^4 = 0 in characteristic 5
    CHECK(g.derivative(0) == x.scale(2));
    CHECK(g.specialize(1, 2).eval({1, 0}) == 3);
  }
}
