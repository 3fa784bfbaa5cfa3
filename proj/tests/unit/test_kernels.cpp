#include <random>
#include <vector>

#include "doctest.h"
#include "trivec/core/pencil_eval.hpp"
#include "trivec/kernels/kernels.hpp"

using namespace trivec;
namespace K = trivec::kernels;

namespace {

// sum of k random rank-2 pieces u v^T - v u^T
Matrix<FiniteField> random_skew(const FiniteField& f, int k, std::mt19937_64& rng) {
  Matrix<FiniteField> m(f, 9, 9);
  for (int r = 0; r < k; ++r) {
    std::vector<u64> u(9), v(9);
    for (auto& x : u) x = f.random(rng);
    for (auto& x : v) x = f.random(rng);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) m(i, j) = f.add(m(i, j), f.sub(f.mul(u[i], v[j]), f.mul(v[i], u[j])));
  }
  return m;
}

// few nonzero coefficients, so the pencil hits every rank
Trivector<FiniteField> sparse_trivector(const FiniteField& f, int terms, std::mt19937_64& rng) {
  Trivector<FiniteField> t(f);
  for (int i = 0; i < terms; ++i) t[rng() % kTriples] = f.random(rng);
  return t;
}

struct IsaGuard {
  K::Isa saved = K::active_isa();
  ~IsaGuard() { K::set_isa(saved); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("dispatch") {
    IsaGuard g;
    K::set_isa(K::Isa::scalar);
    CHECK(K::active_isa() == K::Isa::scalar);
    K::set_isa(K::Isa::avx2);
    CHECK(K::active_isa() == (K::avx2_supported() ? K::Isa::avx2 : K::Isa::scalar));
    CHECK(std::string(K::isa_name(K::Isa::avx2)) == "avx2");
  }

  TEST_CASE("axpy_mod agrees") {
    if (!K::avx2_supported()) return;
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2ull, 3ull, 251ull, 7919ull, 65521ull}) {
      for (std::size_t n : {0, 1, 3, 4, 7, 8, 33, 257}) {
        std::vector<std::uint64_t> src(n), d1(n);
        for (auto& x : src) x = rng() % p;
        for (auto& x : d1) x = rng() % p;
        auto d2 = d1, ref = d1;
        const std::uint64_t fac = rng() % p;
        for (std::size_t i = 0; i < n; ++i) ref[i] = (ref[i] + fac * src[i]) % p;
        K::scalar::axpy_mod(d1.data(), src.data(), fac, p, n);
        K::avx2::axpy_mod(d2.data(), src.data(), fac, p, n);
        CHECK(d1 == ref);
        CHECK(d2 == ref);
      }
    }
  }

  TEST_CASE("skew_rank9_batch agrees with elimination") {
    if (!K::avx2_supported()) return;
    std::mt19937_64 rng(12);
    for (std::uint16_t p : {2, 3, 5, 7, 11, 13, 251}) {
      FiniteField f = FiniteField::prime(p);
      for (std::size_t n : {1, 15, 16, 17, 100}) {
        std::vector<std::uint16_t> m(81 * n, 0);
        std::vector<int> expect(n);
        for (std::size_t lane = 0; lane < n; ++lane) {
          auto a = random_skew(f, int(rng() % 5), rng);
          expect[lane] = int(rank(a));
          for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) m[(9 * i + j) * n + lane] = std::uint16_t(a(i, j));
        }
        std::vector<std::uint8_t> rs(n), ra(n);
        K::scalar::skew_rank9_batch(m.data(), n, p, rs.data());
        K::avx2::skew_rank9_batch(m.data(), n, p, ra.data());
        for (std::size_t lane = 0; lane < n; ++lane) {
          CHECK(rs[lane] == expect[lane]);
          CHECK(ra[lane] == expect[lane]);
        }
      }
    }
  }

  TEST_CASE("pencil_rank_batch agrees with contraction rank") {
    if (!K::avx2_supported()) return;
    std::mt19937_64 rng(13);
    for (std::uint16_t p : {2, 3, 5, 7, 11, 251}) {
      FiniteField f = FiniteField::prime(p);
      for (int terms : {3, 8, 20, 84}) {
        auto t = sparse_trivector(f, terms, rng);
        auto pt = pencil_terms(t);
        const std::size_t n = 37;
        std::vector<std::uint16_t> x(9 * n);
        std::vector<int> expect(n);
        for (std::size_t lane = 0; lane < n; ++lane) {
          std::vector<u64> v(9);
          for (auto& c : v) c = rng() % 3 ? f.random(rng) : 0;
          for (int k = 0; k < 9; ++k) x[k * n + lane] = std::uint16_t(v[k]);
          expect[lane] = int(rank(phi_at(t, v)));
        }
        std::vector<std::uint8_t> rs(n), ra(n);
        K::scalar::pencil_rank_batch(pt, x.data(), n, p, rs.data());
        K::avx2::pencil_rank_batch(pt, x.data(), n, p, ra.data());
        for (std::size_t lane = 0; lane < n; ++lane) {
          CHECK(rs[lane] == expect[lane]);
          CHECK(ra[lane] == expect[lane]);
        }
      }
    }
  }

  TEST_CASE("ranker gives the same ranks under either isa") {
    IsaGuard g;
    std::mt19937_64 rng(14);
    FiniteField f = FiniteField::prime(5);
    auto t = sparse_trivector(f, 12, rng);
    const size_t n = 5000;
    std::vector<std::uint8_t> a(n), b(n);
    K::set_isa(K::Isa::scalar);
    PencilRanker(t).ranks(1000, n, a.data());
    K::set_isa(K::Isa::avx2);
    PencilRanker(t).ranks(1000, n, b.data());
    CHECK(a == b);
  }

  TEST_CASE("bit operations agree") {
    if (!K::avx2_supported()) return;
    std::mt19937_64 rng(15);
    for (std::size_t w : {0, 1, 3, 4, 5, 9, 64}) {
      std::vector<std::uint64_t> a(w), b(w);
      for (auto& x : a) x = rng() & rng();
      for (auto& x : b) x = rng() & rng() & rng();
      auto s = a, v = a;
      K::scalar::bits_or(s.data(), b.data(), w);
      K::avx2::bits_or(v.data(), b.data(), w);
      CHECK(s == v);
      bool any = false;
      for (std::size_t i = 0; i < w; ++i) any = any || (a[i] & b[i]);
      CHECK(K::scalar::bits_intersect(a.data(), b.data(), w) == any);
      CHECK(K::avx2::bits_intersect(a.data(), b.data(), w) == any);
      // disjoint masks
      std::vector<std::uint64_t> c(w);
      for (std::size_t i = 0; i < w; ++i) c[i] = ~a[i];
      CHECK_FALSE(K::avx2::bits_intersect(a.data(), c.data(), w));
    }
  }
}
