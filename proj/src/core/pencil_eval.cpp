#include "trivec/core/pencil_eval.hpp"

#include "trivec/core/projective.hpp"

namespace trivec {

int rank9(const FiniteField& f, u64 a[9][9]) {
  int rk = 0;
  for (int c = 0; c < 9 && rk < 9; ++c) {
    int piv = -1;
    for (int r = rk; r < 9; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rk)
      for (int j = c; j < 9; ++j) std::swap(a[piv][j], a[rk][j]);
    const u64 inv = f.inv(a[rk][c]);
    for (int r = rk + 1; r < 9; ++r) {
      if (!a[r][c]) continue;
      const u64 fac = f.neg(f.mul(a[r][c], inv));
      for (int j = c; j < 9; ++j) a[r][j] = f.fma(a[r][j], fac, a[rk][j]);
    }
    ++rk;
  }
  return rk;
}

kernels::PencilTerms pencil_terms(const Trivector<FiniteField>& t) {
  kernels::PencilTerms pt{};
  const auto& tab = contraction_table();
  const u64 p = t.field().characteristic();
  int e = 0;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b, ++e) {
      pt.count[e] = 0;
      for (const auto& term : tab[a][b]) {
        u64 c = t[term.slot];
        if (!c) continue;
        if (term.sign < 0) c = (p - c) % p;
        pt.var[e][pt.count[e]] = term.m;
        pt.coef[e][pt.count[e]] = std::uint16_t(c);
        ++pt.count[e];
      }
    }
  return pt;
}

PencilRanker::PencilRanker(const Trivector<FiniteField>& t)
    : t_(t), q_(t.field().order()), simd_(t.field().is_prime_field() && t.field().order() < 256) {
  if (simd_) terms_ = pencil_terms(t);
}

void PencilRanker::ranks(u64 lo, size_t n, std::uint8_t* out) {
  u64 x[9];
  if (simd_) {
    xs_.resize(9 * n);
    for (size_t i = 0; i < n; ++i) {
      proj_point_from_index(lo + i, q_, 9, x);
      for (int k = 0; k < 9; ++k) xs_[k * n + i] = std::uint16_t(x[k]);
    }
    kernels::pencil_rank_batch(terms_, xs_.data(), n, std::uint16_t(q_), out);
    return;
  }
  const FiniteField& f = t_.field();
  const auto& tab = contraction_table();
  for (size_t i = 0; i < n; ++i) {
    proj_point_from_index(lo + i, q_, 9, x);
    u64 a[9][9];
    for (int r = 0; r < 9; ++r) {
      a[r][r] = 0;
      for (int s = r + 1; s < 9; ++s) {
        u64 v = 0;
        for (const auto& term : tab[r][s]) {
          const u64 c = t_[term.slot];
          if (!c || !x[term.m]) continue;
          const u64 pr = f.mul(c, x[term.m]);
          v = term.sign > 0 ? f.add(v, pr) : f.sub(v, pr);
        }
        a[r][s] = v;
        a[s][r] = f.neg(v);
      }
    }
    out[i] = std::uint8_t(rank9(f, a));
  }
}

}  // namespace trivec
