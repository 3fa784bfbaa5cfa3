#include "trivec/stability/stability.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "trivec/algebra/linalg.hpp"
#include "trivec/algebra/poly.hpp"
#include "trivec/algebra/solve.hpp"
#include "trivec/core/pencil_eval.hpp"
#include "trivec/core/projective.hpp"
#include "trivec/kernels/kernels.hpp"

namespace trivec {

const char* status_name(StabilityStatus s) {
  switch (s) {
    case StabilityStatus::stable:
      return "stable";
    case StabilityStatus::non_stable:
      return "non_stable";
    default:
      return "inconclusive";
  }
}

namespace {

using FF = FiniteField;

Matrix<FF> witness_from_annihilator(const Matrix<FF>& A) { return kernel_matrix(A); }

// ---- F_2: all 3-dimensional subspaces of the dual, RREF with colex pivots ----

struct F2Result {
  bool found = false;
  std::uint16_t rows[3] = {0, 0, 0};
  u64 examined = 0;
};

F2Result search_f2(const Trivector<FF>& t) {
  // iso[a] = bitset of b with Phi(a) b = 0
  static thread_local std::vector<std::array<u64, 8>> iso;
  iso.assign(512, {});
  const auto& tab = contraction_table();
  for (unsigned a = 0; a < 512; ++a) {
    std::uint16_t row[9] = {};
    for (int r = 0; r < 9; ++r)
      for (int s = 0; s < 9; ++s) {
        if (r == s) continue;
        unsigned bit = 0;
        for (const auto& term : tab[r][s]) bit ^= (t[term.slot] & ((a >> term.m) & 1u));
        if (bit) row[r] |= std::uint16_t(1u << s);
      }
    for (unsigned b = 0; b < 512; ++b) {
      bool zero = true;
      for (int r = 0; r < 9 && zero; ++r) zero = (std::popcount(unsigned(row[r] & b)) & 1) == 0;
      if (zero) iso[a][b >> 6] |= u64{1} << (b & 63);
    }
  }
  auto has = [&](unsigned a, unsigned b) { return (iso[a][b >> 6] >> (b & 63)) & 1; };

  F2Result res;
  for (int p3 = 2; p3 < 9; ++p3)
    for (int p2 = 1; p2 < p3; ++p2)
      for (int p1 = 0; p1 < p2; ++p1) {
        std::vector<int> f1, f2, f3;
        for (int c = p1 + 1; c < 9; ++c)
          if (c != p2 && c != p3) f1.push_back(c);
        for (int c = p2 + 1; c < 9; ++c)
          if (c != p3) f2.push_back(c);
        for (int c = p3 + 1; c < 9; ++c) f3.push_back(c);
        auto build = [](int pivot, const std::vector<int>& fr, unsigned m) {
          unsigned v = 1u << pivot;
          for (size_t i = 0; i < fr.size(); ++i)
            if ((m >> i) & 1) v |= 1u << fr[i];
          return v;
        };
        const unsigned n1 = 1u << f1.size(), n2 = 1u << f2.size(), n3 = 1u << f3.size();
        for (unsigned m1 = 0; m1 < n1; ++m1) {
          const unsigned r1 = build(p1, f1, m1);
          for (unsigned m2 = 0; m2 < n2; ++m2) {
            const unsigned r2 = build(p2, f2, m2);
            if (!has(r1, r2)) {
              res.examined += n3;
              continue;
            }
            for (unsigned m3 = 0; m3 < n3; ++m3) {
              ++res.examined;
              const unsigned r3 = build(p3, f3, m3);
              if (has(r1, r3) && has(r2, r3)) {
                res.found = true;
                res.rows[0] = std::uint16_t(r1), res.rows[1] = std::uint16_t(r2), res.rows[2] = std::uint16_t(r3);
                return res;
              }
            }
          }
        }
      }
  return res;
}

// ---- general fields: kernel-guided search over points of P^8 ----

struct KernelSearch {
  const Trivector<FF>& t;
  const FF& L;
  u64 budget;
  std::atomic<u64> spent{0};

  // all 3-dim A containing a1 with Phi(a) b = 0 on A; returns A's basis
  std::optional<Matrix<FF>> through(const std::vector<u64>& a1) {
    auto rk = rank_and_kernel(phi_at(t, a1));
    const auto& K = rk.kernel;
    const size_t k = K.size();
    if (k < 3) return std::nullopt;
    // drop one kernel vector in which a1 has a nonzero coordinate; the rest
    // spans a complement of <a1> in K
    Matrix<FF> Km = Matrix<FF>::from_rows(L, K, 9);
    auto coords = solve(Km.transpose(), a1);
    if (!coords) fail(Errc::certificate_failure, "point not in its own kernel");
    size_t drop = 0;
    while ((*coords)[drop] == 0) ++drop;
    std::vector<std::vector<u64>> comp;
    for (size_t i = 0; i < k; ++i)
      if (i != drop) comp.push_back(K[i]);
    const unsigned m = unsigned(comp.size());
    const u64 n = proj_space_size(L.order(), m);
    spent += n;
    if (spent > budget) fail(Errc::budget_exceeded, "kernel-guided destabilizer search exceeds budget over " + L.spec());
    std::vector<u64> lam(m), a2(9);
    for (u64 idx = 0; idx < n; ++idx) {
      proj_point_from_index(idx, L.order(), m, lam.data());
      std::fill(a2.begin(), a2.end(), 0);
      for (unsigned i = 0; i < m; ++i)
        if (lam[i])
          for (int j = 0; j < 9; ++j) a2[j] = L.fma(a2[j], lam[i], comp[i][j]);
      // Phi(a2) restricted to K: need a kernel of dimension >= 3 there
      auto M2 = phi_at(t, a2);
      Matrix<FF> img(L, 9, k);
      for (size_t i = 0; i < k; ++i) {
        auto v = M2.apply(K[i]);
        for (int j = 0; j < 9; ++j) img(j, i) = v[j];
      }
      auto rk2 = rank_and_kernel(img);
      if (rk2.kernel.size() < 3) continue;
      // vectors of K killed by Phi(a2); contains a1 and a2
      Matrix<FF> inter(L, rk2.kernel.size(), 9);
      for (size_t r = 0; r < rk2.kernel.size(); ++r)
        for (size_t i = 0; i < k; ++i)
          for (int j = 0; j < 9; ++j) inter(r, j) = L.fma(inter(r, j), rk2.kernel[r][i], K[i][j]);
      Matrix<FF> A = Matrix<FF>::from_rows(L, {a1, a2}, 9);
      for (size_t r = 0; r < inter.rows() && A.rows() < 3; ++r) {
        auto trial = vstack(A, Matrix<FF>::from_rows(L, {inter.row_vector(r)}, 9));
        if (rank(trial) == trial.rows()) A = trial;
      }
      if (A.rows() == 3) return rref(A);
    }
    return std::nullopt;
  }
};

struct GeneralResult {
  std::optional<Matrix<FF>> A;
  u64 examined = 0;
};

GeneralResult search_general(const Trivector<FF>& t, const StabilityOptions& opt) {
  const FF& L = t.field();
  const u64 Q = L.order();
  const u64 N = proj_space_size(Q, 9);
  if (N > opt.budget)
    fail(Errc::budget_exceeded, "destabilizer search over " + L.spec() + " refuses " + std::to_string(N) + " points");
  KernelSearch ks{t, L, opt.budget};

  constexpr u64 kChunk = 4096;
  const u64 chunks = (N + kChunk - 1) / kChunk;
  std::atomic<u64> next{0};
  std::atomic<u64> best{~u64{0}};
  std::atomic<u64> examined{0};
  std::mutex mu;
  std::optional<Matrix<FF>> bestA;
  std::exception_ptr err;

  auto worker = [&] {
    PencilRanker ranker(t);
    std::vector<std::uint8_t> rk(kChunk);
    std::vector<u64> x(9);
    try {
      for (;;) {
        const u64 c = next++;
        if (c >= chunks) return;
        const u64 lo = c * kChunk, hi = std::min(N, lo + kChunk);
        if (lo > best.load()) return;
        const size_t n = hi - lo;
        ranker.ranks(lo, n, rk.data());
        examined += n;
        for (size_t i = 0; i < n; ++i) {
          if (rk[i] > 6) continue;
          if (lo + i > best.load()) break;
          proj_point_from_index(lo + i, Q, 9, x.data());
          if (auto A = ks.through(x)) {
            std::lock_guard<std::mutex> lock(mu);
            if (lo + i < best.load()) {
              best = lo + i;
              bestA = std::move(A);
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
      next = chunks;
    }
  };
  unsigned nt = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = unsigned(std::min<u64>(nt, chunks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return {bestA, examined.load()};
}

template <Field F>
UPoly<F> poly_from(const F& f, std::initializer_list<typename F::Element> c) {
  return UPoly<F>(f, std::vector<typename F::Element>(c));
}

}  // namespace

bool is_destabilizing(const Trivector<FF>& t, const Matrix<FF>& U) {
  const FF& L = U.field();
  if (U.rows() != 6 || U.cols() != 9 || rank(U) != 6) return false;
  FieldEmbedding emb(t.field(), L);
  auto tL = embed_trivector(t, emb);
  auto basis = complete_basis(U).transpose();  // columns u1..u6, w1..w3
  auto inv = inverse(basis);
  if (!inv) return false;
  auto tp = gl_act(*inv, tL);
  const auto& T = triples();
  for (int s = 0; s < kTriples; ++s) {
    const int outside = (T[s].i >= 6) + (T[s].j >= 6) + (T[s].k >= 6);
    if (outside >= 2 && !L.is_zero(tp[s])) return false;
  }
  return true;
}

StabilityVerdict destabilizer_search(const Trivector<FF>& t, unsigned max_ext_degree, const StabilityOptions& opt) {
  if (max_ext_degree < 1) fail(Errc::invalid_input, "max_ext_degree must be >= 1");
  StabilityVerdict v;
  const FF& K = t.field();
  for (unsigned d = 1; d <= max_ext_degree; ++d) {
    FF L = extension_field(K, d);
    FieldEmbedding emb(K, L);
    auto tL = embed_trivector(t, emb);
    std::optional<Matrix<FF>> A;
    if (L.order() == 2) {
      auto r = search_f2(tL);
      v.examined += r.examined;
      if (r.found) {
        A = Matrix<FF>(L, 3, 9);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 9; ++j) (*A)(i, j) = (r.rows[i] >> j) & 1;
      }
    } else {
      auto r = search_general(tL, opt);
      v.examined += r.examined;
      A = std::move(r.A);
    }
    v.searched_ext_degree = d;
    if (A) {
      auto U = witness_from_annihilator(*A);
      if (!is_destabilizing(t, U)) fail(Errc::certificate_failure, "destabilizing witness failed re-verification");
      v.status = StabilityStatus::non_stable;
      v.witness = std::move(U);
      v.notes.push_back("witness over " + L.spec());
      return v;
    }
  }
  v.status = StabilityStatus::stable;
  v.geometric = false;
  v.notes.push_back("no destabilizing subspace over extensions of degree <= " + std::to_string(max_ext_degree));
  return v;
}

template <Field F>
bool curve_is_smooth_closed_form(const CurveCoeffs<F>& c) {
  const F& f = c.field;
  auto A = poly_from(f, {c(15), c(9), c(3)});
  auto B = poly_from(f, {c(30), c(24), c(18), c(12), c(6), f.one()});
  if (f.characteristic() == 2) {
    if (A.is_zero()) return false;
    auto dA = A.derivative(), dB = B.derivative();
    auto g = gcd(A, dA * dA * B + dB * dB);
    return g.degree() == 0;
  }
  auto D = A * A - B.scale(f.from_int(4));
  return gcd(D, D.derivative()).degree() == 0;
}

template bool curve_is_smooth_closed_form<FF>(const CurveCoeffs<FF>&);
template bool curve_is_smooth_closed_form<Rationals>(const CurveCoeffs<Rationals>&);

bool curve_is_smooth(const CurveCoeffs<FF>& c, unsigned max_ext_degree) {
  using MP = MultiPoly<FF>;
  const FF& f = c.field;
  MP x = MP::var(f, 2, 0), z = MP::var(f, 2, 1);
  auto k = [&](u64 a) { return MP::constant(f, 2, a); };
  MP F = x * x + z.pow(5) + k(c(3)) * x * z.pow(2) + k(c(6)) * z.pow(4) + k(c(9)) * x * z + k(c(12)) * z.pow(3) +
         k(c(15)) * x + k(c(18)) * z.pow(2) + k(c(24)) * z + k(c(30));
  // singular points have degree <= 2 over the base field
  const unsigned bound = std::max(2u, max_ext_degree);
  return singular_point_search({F, F.derivative(0), F.derivative(1)}, f, bound).empty();
}

bool curve_is_smooth(const CurveCoeffs<Rationals>& c, unsigned) { return curve_is_smooth_closed_form(c); }

GammaCReport stability_verdict_gamma_c(const CurveCoeffs<FF>& c, const StabilityOptions& opt) {
  GammaCReport rep;
  rep.smooth = curve_is_smooth(c);
  auto t = build_gamma_c(c);
  // singular points live over degree <= 2; the witness is attached to them
  rep.verdict = destabilizer_search(t, rep.smooth ? 1 : 2, opt);
  const bool witness = rep.verdict.status == StabilityStatus::non_stable;
  rep.consistent = rep.smooth != witness;
  if (!rep.consistent)
    fail(Errc::disagreement, std::string("smoothness test says ") + (rep.smooth ? "smooth" : "singular") +
                                 " but destabilizer search " + (witness ? "found" : "did not find") + " a witness");
  if (rep.smooth) {
    rep.verdict.geometric = true;
    rep.verdict.notes.push_back("stable: curve is smooth");
  }
  return rep;
}

StabilityVerdict stability_verdict(const Trivector<FF>& t, unsigned max_ext_degree, const StabilityOptions& opt) {
  if (auto c = match_gamma_c(t)) return stability_verdict_gamma_c(*c, opt).verdict;
  return destabilizer_search(t, max_ext_degree, opt);
}

StabilityVerdict stability_verdict(const Trivector<Rationals>& t, unsigned max_ext_degree, const StabilityOptions& opt) {
  StabilityVerdict v;
  if (auto c = match_gamma_c(t)) {
    if (curve_is_smooth(*c)) {
      v.status = StabilityStatus::stable;
      v.geometric = true;
      v.notes.push_back("stable: curve is smooth over Q");
    } else {
      v.status = StabilityStatus::inconclusive;
      v.notes.push_back("curve is singular over Q, so the trivector is not stable; no rational witness constructed");
    }
    return v;
  }
  // reductions: a destabilizer mod p says nothing over Q, a bounded search
  // without one says nothing either; report them for information only
  for (u64 p : {7, 11, 13}) {
    FF f = FF::prime(p);
    Trivector<FF> tp(f);
    bool bad = false;
    for (int s = 0; s < kTriples && !bad; ++s) {
      mpz_class den = t[s].get_den();
      if (den % p == 0) bad = true;
      else tp[s] = f.div(f.from_mpz(t[s].get_num()), f.from_mpz(den));
    }
    if (bad) {
      v.notes.push_back("p=" + std::to_string(p) + ": bad reduction");
      continue;
    }
    try {
      auto r = destabilizer_search(tp, std::min(max_ext_degree, 1u), opt);
      v.notes.push_back("p=" + std::to_string(p) + ": " + status_name(r.status) + " at degree 1");
    } catch (const Error& e) {
      v.notes.push_back("p=" + std::to_string(p) + ": " + errc_name(e.code()));
    }
  }
  v.status = StabilityStatus::inconclusive;
  return v;
}

}  // namespace trivec
