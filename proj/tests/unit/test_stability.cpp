#include <random>

#include "doctest.h"
#include "trivec/algebra/solve.hpp"
#include "trivec/core/projective.hpp"
#include "trivec/stability/stability.hpp"

using namespace trivec;

namespace {

CurveCoeffs<FiniteField> coeffs_from_code(const FiniteField& f, unsigned code) {
  CurveCoeffs<FiniteField> c(f);
  for (int i = 0; i < 8; ++i) c.c[i] = (code >> i) & 1;
  return c;
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

TEST_SUITE("stability") {
  TEST_CASE("principal nilpotent element is destabilized by <e4..e9>") {
    FiniteField f = FiniteField::prime(2);
    auto v = destabilizer_search(build_gamma_c(CurveCoeffs<FiniteField>(f)), 1);
    REQUIRE(v.status == StabilityStatus::non_stable);
    REQUIRE(v.witness.has_value());
    Matrix<FiniteField> U(f, 6, 9);
    for (int i = 0; i < 6; ++i) U(i, i + 3) = 1;
    CHECK(*v.witness == U);
    CHECK(is_destabilizing(build_gamma_c(CurveCoeffs<FiniteField>(f)), U));
  }

  TEST_CASE("smooth example is stable at bound") {
    FiniteField f = FiniteField::prime(2);
    CurveCoeffs<FiniteField> c(f);
    c(15) = 1;
    auto v = destabilizer_search(build_gamma_c(c), 1);
    CHECK(v.status == StabilityStatus::stable);
    CHECK_FALSE(v.geometric);
    CHECK(v.examined == 788035);
  }

  TEST_CASE("zero trivector is non-stable") {
    for (auto f : {FiniteField::prime(2), FiniteField::prime(3)}) {
      auto v = destabilizer_search(Trivector<FiniteField>(f), 1);
      CHECK(v.status == StabilityStatus::non_stable);
    }
  }

  TEST_CASE("closed-form smoothness against the singular point search") {
    FiniteField f2 = FiniteField::prime(2);
    for (unsigned code = 0; code < 256; ++code) {
      auto c = coeffs_from_code(f2, code);
      CHECK(curve_is_smooth(c) == curve_is_smooth_closed_form(c));
    }
    std::mt19937_64 rng(21);
    for (auto f : {FiniteField::prime(3), FiniteField::prime(5), FiniteField::prime(7), FiniteField::extension(2, 2)})
      for (int n = 0; n < 40; ++n) {
        auto c = CurveCoeffs<FiniteField>::random(f, rng);
        if (n % 4 == 0) c(24) = c(30) = c(18) = 0;  // push towards singular examples
        CHECK(curve_is_smooth(c) == curve_is_smooth_closed_form(c));
      }
  }

  TEST_CASE("smoothness examples") {
    FiniteField f2 = FiniteField::prime(2), f7 = FiniteField::prime(7);
    CHECK_FALSE(curve_is_smooth(CurveCoeffs<FiniteField>(f2)));
    CurveCoeffs<FiniteField> a(f2);
    a(15) = 1;
    CHECK(curve_is_smooth(a));
    CurveCoeffs<FiniteField> b(f7);
    b(30) = 1;
    CHECK(curve_is_smooth(b));
    Rationals q;
    CurveCoeffs<Rationals> r(q);
    CHECK_FALSE(curve_is_smooth(r));
    r(30) = 1;
    CHECK(curve_is_smooth(r));
  }

  TEST_CASE("witness check is equivariant") {
    std::mt19937_64 rng(22);
    FiniteField f = FiniteField::prime(2);
    for (unsigned code : {0u, 1u, 3u, 5u}) {
      auto t = build_gamma_c(coeffs_from_code(f, code));
      auto v = destabilizer_search(t, 2);
      if (!v.witness) continue;
      const auto& U = *v.witness;
      FiniteField L = U.field();
      FieldEmbedding emb(f, L);
      for (int n = 0; n < 5; ++n) {
        auto g = random_invertible(L, rng);
        auto gt = gl_act(g, embed_trivector(t, emb));
        CHECK(is_destabilizing(gt, U * g.transpose()));
      }
    }
  }

  TEST_CASE("monotone under extension") {
    FiniteField f = FiniteField::prime(2);
    auto t = build_gamma_c(CurveCoeffs<FiniteField>(f));
    auto v = destabilizer_search(t, 1);
    REQUIRE(v.witness);
    for (unsigned d : {2u, 3u, 4u}) {
      FiniteField L = extension_field(f, d);
      CHECK(is_destabilizing(t, embed_matrix(*v.witness, FieldEmbedding(f, L))));
    }
  }

  TEST_CASE("a rank-2 point forces non-stability") {
    std::mt19937_64 rng(23);
    for (auto f : {FiniteField::prime(2), FiniteField::prime(3)})
      for (int n = 0; n < 5; ++n) {
        // only [123] involves index 1, so Phi(e1*) has rank 2
        Trivector<FiniteField> t(f);
        for (int s = 0; s < kTriples; ++s)
          if (triples()[s].i > 0) t[s] = f.random(rng);
        t.add_term(1, 2, 3, 1);
        std::vector<u64> e1(9, 0);
        e1[0] = 1;
        REQUIRE(rank(phi_at(t, e1)) == 2);
        auto g = random_invertible(f, rng);
        auto v = destabilizer_search(gl_act(g, t), 1);
        CHECK(v.status == StabilityStatus::non_stable);
      }
  }

  TEST_CASE("random non-witnesses are rejected") {
    FiniteField f = FiniteField::prime(2);
    CurveCoeffs<FiniteField> c(f);
    c(15) = 1;
    auto t = build_gamma_c(c);
    Matrix<FiniteField> U(f, 6, 9);
    for (int i = 0; i < 6; ++i) U(i, i + 3) = 1;
    CHECK_FALSE(is_destabilizing(t, U));
    Matrix<FiniteField> bad(f, 5, 9);
    CHECK_FALSE(is_destabilizing(t, bad));
  }

  TEST_CASE("gamma_c verdicts agree with smoothness") {
    FiniteField f = FiniteField::prime(2);
    auto r0 = stability_verdict_gamma_c(CurveCoeffs<FiniteField>(f));
    CHECK_FALSE(r0.smooth);
    CHECK(r0.consistent);
    CurveCoeffs<FiniteField> c(f);
    c(15) = 1;
    auto r1 = stability_verdict_gamma_c(c);
    CHECK(r1.smooth);
    CHECK(r1.verdict.geometric);
    std::mt19937_64 rng(24);
    for (int n = 0; n < 20; ++n) {
      auto rc = stability_verdict_gamma_c(coeffs_from_code(f, unsigned(rng() & 255)));
      CHECK(rc.consistent);
    }
  }

  TEST_CASE("singular curve whose witness needs F4") {
    FiniteField f = FiniteField::prime(2);
    bool seen = false;
    for (unsigned code = 0; code < 256 && !seen; ++code) {
      auto c = coeffs_from_code(f, code);
      if (curve_is_smooth(c)) continue;
      auto v1 = destabilizer_search(build_gamma_c(c), 1);
      if (v1.status == StabilityStatus::non_stable) continue;
      seen = true;
      auto v2 = destabilizer_search(build_gamma_c(c), 2);
      CHECK(v2.status == StabilityStatus::non_stable);
      CHECK(v2.witness->field().order() == 4);
    }
    CHECK(seen);
  }

  TEST_CASE("rationals") {
    Rationals q;
    CurveCoeffs<Rationals> c(q);
    c(30) = 1;
    CHECK(stability_verdict(build_gamma_c(c), 1).status == StabilityStatus::stable);
    CHECK(stability_verdict(build_gamma_c(CurveCoeffs<Rationals>(q)), 1).status == StabilityStatus::inconclusive);
    CHECK(match_gamma_c(build_gamma_c(c)).has_value());
  }
}
