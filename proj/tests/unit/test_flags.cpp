#include <random>
#include <set>

#include "doctest.h"
#include "trivec/core/projective.hpp"
#include "trivec/flags/flags.hpp"
#include "trivec/stability/stability.hpp"

using namespace trivec;

namespace {

Matrix<FiniteField> random_invertible(const FiniteField& f, std::mt19937_64& rng) {
  for (;;) {
    Matrix<FiniteField> g(f, 9, 9);
    for (size_t i = 0; i < 9; ++i)
      for (size_t j = 0; j < 9; ++j) g(i, j) = f.random(rng);
    if (det(g) != 0) return g;
  }
}

CurveCoeffs<FiniteField> smooth_curve(const FiniteField& f, std::mt19937_64& rng) {
  for (;;) {
    auto c = CurveCoeffs<FiniteField>::random(f, rng);
    if (curve_is_smooth_closed_form(c)) return c;
  }
}

Trivector<FiniteField> permuted(const Trivector<FiniteField>& t) {
  return gl_act(permutation_matrix(t.field(), flag_relabeling()), t);
}

// block upper triangular for blocks 1,2,3,2,1: preserves the standard flag
Matrix<FiniteField> random_parabolic(const FiniteField& f, std::mt19937_64& rng) {
  static const int block[9] = {0, 1, 1, 2, 2, 2, 3, 3, 4};
  for (;;) {
    Matrix<FiniteField> p(f, 9, 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        if (block[i] <= block[j]) p(i, j) = f.random(rng);
    if (det(p) != 0) return p;
  }
}

}  // namespace

TEST_SUITE("flags") {
  TEST_CASE("31 conditions") {
    const auto& c = flag_conditions();
    std::set<std::array<int, 3>> s(c.begin(), c.end());
    CHECK(s.size() == 31);
    for (auto& m : c) {
      CHECK(m[0] < m[1]);
      CHECK(m[1] < m[2]);
    }
  }

  TEST_CASE("permuted gamma_c is compatible with the standard flag") {
    std::mt19937_64 rng(61);
    FiniteField f = FiniteField::prime(5);
    for (int n = 0; n < 50; ++n) {
      auto t = permuted(build_gamma_c(CurveCoeffs<FiniteField>::random(f, rng)));
      CHECK(flag_compatible(t, standard_flag(f)).compatible);
    }
  }

  TEST_CASE("gamma0 violates (2,4,9)") {
    FiniteField f = FiniteField::prime(5);
    auto rep = flag_compatible(build_gamma_c(CurveCoeffs<FiniteField>(f)), standard_flag(f));
    CHECK_FALSE(rep.compatible);
    bool seen = false;
    for (auto& [m, v] : rep.violated) seen = seen || m == std::array<int, 3>{2, 4, 9};
    CHECK(seen);
  }

  TEST_CASE("equivariance and reducer independence") {
    std::mt19937_64 rng(62);
    FiniteField f = FiniteField::prime(5);
    for (int n = 0; n < 10; ++n) {
      auto t = permuted(build_gamma_c(CurveCoeffs<FiniteField>::random(f, rng)));
      if (n % 2) t = t + build_gamma_c(CurveCoeffs<FiniteField>(f));  // usually incompatible
      auto g = random_invertible(f, rng);
      auto fl = standard_flag(f);
      auto a = flag_compatible(t, fl);
      auto b = flag_compatible(gl_act(g, t), act_on_flag(g, fl));
      CHECK(a.compatible == b.compatible);
      auto c = flag_compatible_in_basis(t, random_parabolic(f, rng));
      CHECK(a.compatible == c.compatible);
      if (a.compatible) CHECK(c.violated.empty());
    }
  }

  TEST_CASE("malformed flags are rejected") {
    FiniteField f = FiniteField::prime(3);
    auto fl = standard_flag(f);
    Matrix<FiniteField> bad(f, 1, 9);
    bad(0, 8) = 1;
    CHECK_THROWS_AS(make_flag(bad, fl.F3, fl.F6, fl.F8), Error);
  }

  TEST_CASE("reconstruction at the coordinate point") {
    std::mt19937_64 rng(63);
    FiniteField f = FiniteField::prime(5);
    for (int n = 0; n < 5; ++n) {
      auto t = permuted(build_gamma_c(smooth_curve(f, rng)));
      std::vector<u64> x(9, 0);
      x[8] = 1;
      auto fl = flags_at_point(t, x);
      REQUIRE(fl.size() == 1);
      CHECK(fl[0] == standard_flag(f));
    }
  }

  TEST_CASE("flag search") {
    std::mt19937_64 rng(64);
    for (auto f : {FiniteField::prime(2), FiniteField::prime(3)}) {
      auto c = smooth_curve(f, rng);
      auto t = build_gamma_c(c);
      auto rep = flag_search(t, 2);
      CHECK(rep.weighted_count <= 81);
      CHECK(rep.complete == (rep.weighted_count == 81));
      CHECK(rep.levels.size() == 2);
      for (auto& l : rep.levels) CHECK(l.exhaustive);
      std::set<std::vector<u64>> pts;
      for (auto& ff : rep.flags) {
        auto L = ff.flag.field();
        CHECK(flag_compatible(embed_trivector(t, FieldEmbedding(f, L)), ff.flag).compatible);
        pts.insert(ff.point);
      }
      CHECK(pts.size() == rep.flags.size());
      // the permuted coordinate flag appears over the base field
      auto P = permutation_matrix(f, flag_relabeling());
      auto expected = act_on_flag(inverse_or_throw(P), standard_flag(f));
      bool seen = false;
      for (auto& ff : rep.flags) seen = seen || (ff.level == 1 && ff.flag == expected);
      CHECK(seen);
    }
  }

  TEST_CASE("flag search rejects non-stable input") {
    CHECK_THROWS_AS(flag_search(build_gamma_c(CurveCoeffs<FiniteField>(FiniteField::prime(3))), 1), Error);
  }

  TEST_CASE("Chow ring reduction") {
    IntPoly e1;
    for (int i = 0; i < 9; ++i) {
      std::array<int, 9> e{};
      e[i] = 1;
      e1.push_back({e, 1});
    }
    CHECK(reduce_symmetric(e1).empty());
    IntPoly std_mono{{{0, 1, 2, 3, 4, 5, 6, 7, 8}, 5}};
    CHECK(reduce_symmetric(std_mono) == std_mono);
    auto r = chern_top_class();
    CHECK(r.product_degree == 31);
    CHECK(r.coefficient == 81);
    CHECK(r.exponents == std::array<int, 9>{0, 1, 1, 3, 3, 3, 6, 6, 8});
  }
}
