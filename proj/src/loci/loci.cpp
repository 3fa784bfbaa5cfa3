#include "trivec/loci/loci.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "trivec/algebra/solve.hpp"
#include "trivec/core/pencil_eval.hpp"
#include "trivec/core/projective.hpp"
#include "trivec/stability/stability.hpp"
#include "trivec/util/parallel.hpp"

namespace trivec {

using FF = FiniteField;

RankLocusReport enumerate_rank_locus(const Trivector<FF>& t, int max_rank, bool want_points, const LociOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const FF& f = t.field();
  const u64 q = f.order();
  const u64 N = proj_space_size(q, 9);
  if (N > opt.budget)
    fail(Errc::budget_exceeded, "rank locus enumeration over " + f.spec() + " refuses " + std::to_string(N) + " points");
  RankLocusReport rep;
  rep.q = q;
  rep.max_rank = max_rank;

  const unsigned nt = resolve_threads(opt.threads);
  struct Local {
    std::array<u64, 5> counts{};
    std::vector<u64> idx;
    std::vector<std::uint8_t> rk;
  };
  std::vector<Local> locals(nt);
  constexpr u64 kChunk = 8192;
  parallel_chunks(N, kChunk, nt, [&](unsigned w, u64 lo, u64 hi) {
    auto& L = locals[w];
    PencilRanker ranker(t);
    L.rk.resize(kChunk);
    ranker.ranks(lo, hi - lo, L.rk.data());
    for (u64 i = 0; i < hi - lo; ++i) {
      const int r = L.rk[i];
      ++L.counts[r / 2];
      if (want_points && r <= max_rank) L.idx.push_back(lo + i);
    }
  });
  std::vector<u64> all;
  for (auto& L : locals) {
    for (int i = 0; i < 5; ++i) rep.counts[i] += L.counts[i];
    all.insert(all.end(), L.idx.begin(), L.idx.end());
  }
  if (want_points) {
    if (all.size() > opt.point_cap) {
      rep.points_truncated = true;
    } else {
      std::sort(all.begin(), all.end());
      rep.points.reserve(all.size());
      std::vector<u64> x(9);
      for (u64 i : all) {
        proj_point_from_index(i, q, 9, x.data());
        rep.points.push_back(x);
      }
    }
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

const std::vector<Exponent>& cubic_monomials() {
  static const std::vector<Exponent> mons = [] {
    std::vector<Exponent> out;
    // lex-descending: x1^3 first, x9^3 last
    for (int a = 0; a < 9; ++a)
      for (int b = a; b < 9; ++b)
        for (int c = b; c < 9; ++c) {
          Exponent e(9, 0);
          ++e[a], ++e[b], ++e[c];
          out.push_back(e);
        }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }();
  return mons;
}

namespace {

std::vector<u64> monomial_values(const FF& f, const std::vector<u64>& x) {
  const auto& mons = cubic_monomials();
  std::vector<u64> row(mons.size());
  for (size_t m = 0; m < mons.size(); ++m) {
    u64 v = 1;
    for (int i = 0; i < 9; ++i)
      for (int e = 0; e < mons[m][i]; ++e) v = f.mul(v, x[i]);
    row[m] = v;
  }
  return row;
}

// incremental echelon basis; rows normalized at their pivot
struct Echelon {
  const FF& f;
  std::vector<std::vector<u64>> rows;
  std::vector<size_t> piv;

  bool add(std::vector<u64> r) {
    for (size_t i = 0; i < rows.size(); ++i) {
      const u64 c = r[piv[i]];
      if (!c) continue;
      const u64 fac = f.neg(c);
      for (size_t j = 0; j < r.size(); ++j)
        if (rows[i][j]) r[j] = f.fma(r[j], fac, rows[i][j]);
    }
    size_t p = 0;
    while (p < r.size() && !r[p]) ++p;
    if (p == r.size()) return false;
    const u64 inv = f.inv(r[p]);
    for (auto& v : r) v = f.mul(v, inv);
    rows.push_back(std::move(r));
    piv.push_back(p);
    return true;
  }
};

}  // namespace

CubicResult cubic_of_Y(const Trivector<FF>& t, unsigned max_ext_degree, const LociOptions& opt) {
  const size_t M = cubic_monomials().size();
  size_t last_kernel = M;
  for (unsigned d = 1; d <= max_ext_degree; ++d) {
    FF L = extension_field(t.field(), d);
    auto tL = embed_trivector(t, FieldEmbedding(t.field(), L));
    auto Y = enumerate_rank_locus(tL, 6, true, opt);
    if (Y.points_truncated) fail(Errc::budget_exceeded, "too many Y-points to interpolate over " + L.spec());
    Echelon ech{L, {}, {}};
    for (const auto& x : Y.points) {
      ech.add(monomial_values(L, x));
      if (ech.rows.size() == M - 1) break;
    }
    last_kernel = M - ech.rows.size();
    if (last_kernel != 1) continue;
    Matrix<FF> A = Matrix<FF>::from_rows(L, ech.rows, M);
    auto rk = rank_and_kernel(A);
    CubicForm<FF> cubic{L, rk.kernel[0]};
    size_t p = 0;
    while (!cubic.coeffs[p]) ++p;
    const u64 inv = L.inv(cubic.coeffs[p]);
    for (auto& c : cubic.coeffs) c = L.mul(c, inv);
    // the sample must lie on it; otherwise no cubic passes through Y
    for (const auto& x : Y.points)
      if (cubic.eval(x)) fail(Errc::kernel_dim_not_one, "interpolation kernel is zero: Y is not a cubic");
    return CubicResult{cubic, 1, Y.points.size(), d};
  }
  fail(Errc::kernel_dim_not_one,
       "interpolation kernel has dimension " + std::to_string(last_kernel) + " after extension degree " +
           std::to_string(max_ext_degree));
}

u64 jacobian_order_from_counts(i64 N1, i64 N2, u64 q) {
  using i128 = __int128;
  const i128 Q = i128(q);
  const i128 e1 = Q + 1 - N1;
  const i128 p2 = Q * Q + 1 - N2;
  if (e1 * e1 > 16 * Q) fail(Errc::weil_violation, "N1 violates the Weil bound |q+1-N1| <= 4 sqrt(q)");
  if (p2 > 4 * Q || p2 < -4 * Q) fail(Errc::weil_violation, "N2 violates the Weil bound |q^2+1-N2| <= 4q");
  if ((e1 * e1 - p2) % 2 != 0) fail(Errc::weil_violation, "counts give a non-integral L-polynomial");
  const i128 e2 = (e1 * e1 - p2) / 2;
  if (e2 > 6 * Q || e2 < -6 * Q) fail(Errc::weil_violation, "second L-polynomial coefficient out of range");
  const i128 P = 1 - e1 + e2 - Q * e1 + Q * Q;
  if (P <= 0) fail(Errc::weil_violation, "non-positive Jacobian order");
  return u64(P);
}

std::vector<u64> curve_point_counts(const CurveCoeffs<FF>& c, const std::vector<unsigned>& degrees) {
  if (!curve_is_smooth_closed_form(c)) fail(Errc::singular_curve, "curve_point_counts needs a smooth curve");
  const FF& K = c.field;
  std::vector<u64> out;
  for (unsigned d : degrees) {
    if (d < 1) fail(Errc::invalid_input, "extension degree must be >= 1");
    FF L = extension_field(K, d);
    if (L.order() > (u64{1} << 24)) fail(Errc::budget_exceeded, "point count over " + L.spec() + " too large");
    FieldEmbedding emb(K, L);
    std::array<u64, 8> cc;
    for (int i = 0; i < 8; ++i) cc[i] = emb(c.c[i]);
    auto C = [&](int w) { return cc[CurveCoeffs<FF>::position(w)]; };
    const u64 Q = L.order();
    const bool two = L.characteristic() == 2;
    u64 n = 1;  // point at infinity
    for (u64 z = 0; z < Q; ++z) {
      const u64 z2 = L.mul(z, z), z3 = L.mul(z2, z), z4 = L.mul(z3, z), z5 = L.mul(z4, z);
      const u64 A = L.add(L.add(L.mul(C(3), z2), L.mul(C(9), z)), C(15));
      u64 B = L.add(z5, L.mul(C(6), z4));
      B = L.add(B, L.add(L.mul(C(12), z3), L.mul(C(18), z2)));
      B = L.add(B, L.add(L.mul(C(24), z), C(30)));
      if (two) {
        if (!A) {
          n += 1;
          continue;
        }
        // x = A y: y^2 + y = B / A^2 has 2 or 0 solutions by the trace
        u64 u = L.div(B, L.mul(A, A)), tr = 0, w = u;
        for (unsigned i = 0; i < L.degree(); ++i) {
          tr = L.add(tr, w);
          w = L.mul(w, w);
        }
        n += tr ? 0 : 2;
      } else {
        const u64 disc = L.sub(L.mul(A, A), L.mul(L.from_int(4), B));
        if (!disc)
          n += 1;
        else
          n += L.pow(disc, (Q - 1) / 2) == 1 ? 2 : 0;
      }
    }
    out.push_back(n);
  }
  return out;
}

EmbeddingCertificate verify_curve_embedding(const CurveCoeffs<FF>& c) {
  if (!curve_is_smooth_closed_form(c)) fail(Errc::singular_curve, "verify_curve_embedding needs a smooth curve");
  const FF& f = c.field;
  const u64 Q = f.order();
  if (Q > 4096) fail(Errc::budget_exceeded, "affine enumeration over " + f.spec() + " too large");
  auto t = build_gamma_c(c);
  EmbeddingCertificate cert;
  auto point_name = [&](u64 x, u64 z) { return "(x,z) = (" + f.to_string(x) + ", " + f.to_string(z) + ")"; };
  for (u64 z = 0; z < Q; ++z) {
    const u64 z2 = f.mul(z, z), z3 = f.mul(z2, z), z4 = f.mul(z3, z), z5 = f.mul(z4, z);
    for (u64 x = 0; x < Q; ++x) {
      u64 F = f.add(f.mul(x, x), z5);
      F = f.add(F, f.mul(c(3), f.mul(x, z2)));
      F = f.add(F, f.mul(c(6), z4));
      F = f.add(F, f.mul(c(9), f.mul(x, z)));
      F = f.add(F, f.mul(c(12), z3));
      F = f.add(F, f.mul(c(15), x));
      F = f.add(F, f.mul(c(18), z2));
      F = f.add(F, f.mul(c(24), z));
      F = f.add(F, c(30));
      if (F) continue;
      auto M = phi_at(t, curve_embedding_point(f, x, z));
      if (rank(M) > 4) fail(Errc::certificate_failure, "rank of Phi exceeds 4 at " + point_name(x, z));
      auto rows = embedding_kernel_rows(c, x, z);
      for (int r = 0; r < 5; ++r)
        for (u64 v : M.apply(rows[r]))
          if (v) fail(Errc::certificate_failure, "kernel row " + std::to_string(r + 1) + " fails at " + point_name(x, z));
      ++cert.affine_points;
    }
  }
  std::vector<u64> e9(9, 0);
  e9[8] = 1;
  cert.weierstrass_point_ok = rank(phi_at(t, e9)) <= 4;
  if (!cert.weierstrass_point_ok) fail(Errc::certificate_failure, "P' = [0:...:0:1] is not in the rank <= 4 locus");
  return cert;
}

}  // namespace trivec
