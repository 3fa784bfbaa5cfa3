#include "trivec/algebra/poly.hpp"

namespace trivec {

namespace {

using P = UPoly<FiniteField>;

// f squarefree, product of distinct linear factors
void split_linear(const P& f, std::mt19937_64& rng, std::vector<u64>& out) {
  const FiniteField& K = f.field();
  if (f.degree() <= 0) return;
  if (f.degree() == 1) {
    P m = f.monic();
    out.push_back(K.neg(m.coeff(0)));
    return;
  }
  const u64 Q = K.order();
  const u64 p = K.characteristic();
  while (true) {
    P a(K, {K.random(rng), K.random(rng)});
    if (a.degree() < 1) continue;
    P h(K);
    if (p == 2) {
      // trace map a + a^2 + ... + a^(Q/2)
      unsigned m = 0;
      for (u64 t = Q; t > 1; t >>= 1) ++m;
      P t = a % f;
      h = t;
      for (unsigned i = 1; i < m; ++i) {
        t = (t * t) % f;
        h = h + t;
      }
    } else {
      h = a.powmod((Q - 1) / 2, f) - P::constant(K, K.one());
    }
    P g = gcd(f, h);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      split_linear(g, rng, out);
      split_linear(f / g, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<u64> roots(const P& f, std::mt19937_64& rng) {
  const FiniteField& K = f.field();
  if (f.is_zero()) fail(Errc::invalid_input, "roots of the zero polynomial");
  if (f.degree() <= 0) return {};
  std::vector<u64> out;
  if (K.order() <= 64 && f.degree() >= 1) {
    for (u64 c = 0; c < K.order(); ++c)
      if (K.is_zero(f.eval(c))) out.push_back(c);
    return out;
  }
  P fm = f.monic();
  P xq = P::x(K).powmod(K.order(), fm);
  P g = gcd(fm, xq - P::x(K));
  split_linear(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> roots(const P& f) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  return roots(f, rng);
}

}  // namespace trivec
