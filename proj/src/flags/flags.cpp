#include "trivec/flags/flags.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "trivec/core/pencil_eval.hpp"
#include "trivec/core/projective.hpp"
#include "trivec/loci/loci.hpp"
#include "trivec/stability/stability.hpp"
#include "trivec/util/parallel.hpp"

namespace trivec {

using FF = FiniteField;
using Vec = std::vector<u64>;

const std::array<std::array<int, 3>, 31>& flag_conditions() {
  static const std::array<std::array<int, 3>, 31> tab = [] {
    std::array<std::array<int, 3>, 31> out{};
    int n = 0;
    for (int i = 4; i <= 8; ++i)
      for (int j = i + 1; j <= 8; ++j) out[n++] = {i, j, 9};
    for (int i : {2, 3})
      for (int j = 4; j <= 8; ++j) out[n++] = {i, j, 9};
    for (int i = 2; i <= 6; ++i) out[n++] = {i, 7, 8};
    for (int i = 4; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) {
        out[n++] = {i, j, 7};
        out[n++] = {i, j, 8};
      }
    return out;
  }();
  return tab;
}

namespace {

// t(a, b, c) = b^T Phi(a) c
u64 tri(const FF& f, const Matrix<FF>& phi_a, const Vec& b, const Vec& c) {
  u64 s = 0;
  for (int i = 0; i < 9; ++i) {
    if (!b[i]) continue;
    u64 r = 0;
    for (int j = 0; j < 9; ++j)
      if (c[j]) r = f.add(r, f.mul(phi_a(i, j), c[j]));
    s = f.add(s, f.mul(b[i], r));
  }
  return s;
}

Matrix<FF> rows_matrix(const FF& f, const std::vector<Vec>& rows) { return Matrix<FF>::from_rows(f, rows, 9); }

// basis of span(first, others) starting with `first`
std::vector<Vec> basis_starting_with(const FF& f, const Vec& first, const std::vector<Vec>& others) {
  std::vector<Vec> b{first};
  for (const auto& v : others) {
    auto trial = b;
    trial.push_back(v);
    if (rank(rows_matrix(f, trial)) == trial.size()) b = std::move(trial);
  }
  return b;
}

bool in_subfield(const FF& L, u64 a, u64 qe) { return L.pow(a, qe) == a; }

unsigned minimal_degree(const Flag1368<FF>& fl, u64 q, unsigned d) {
  const FF& L = fl.field();
  for (unsigned e = 1; e < d; ++e) {
    if (d % e) continue;
    u64 qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    bool ok = true;
    for (const auto* m : {&fl.F1, &fl.F3, &fl.F6, &fl.F8})
      for (size_t i = 0; ok && i < m->rows(); ++i)
        for (size_t j = 0; ok && j < 9; ++j) ok = in_subfield(L, (*m)(i, j), qe);
    if (ok) return e;
  }
  return d;
}

}  // namespace

std::vector<Flag1368<FF>> flags_at_point(const Trivector<FF>& t, const Vec& x, const FlagOptions& opt,
                                         std::string* note) {
  const FF& f = t.field();
  auto say = [&](const std::string& s) {
    if (note) *note = s;
  };
  auto phix = phi_at(t, x);
  auto rk = rank_and_kernel(phix);
  if (rk.rank <= 2) fail(Errc::non_stable_input, "Phi has rank <= 2 at a point: the input is not stable");
  if (rk.rank != 4) {
    say("rank of Phi is not 4");
    return {};
  }
  const auto K = basis_starting_with(f, x, rk.kernel);  // 5 vectors, K[0] = x
  std::vector<Matrix<FF>> phiK;
  for (const auto& k : K) phiK.push_back(phi_at(t, k));

  // the induced 3-form on K/x and its kernel line
  Matrix<FF> om(f, 6, 4);
  {
    int r = 0;
    for (int j = 1; j <= 4; ++j)
      for (int l = j + 1; l <= 4; ++l, ++r)
        for (int i = 1; i <= 4; ++i) om(r, i - 1) = tri(f, phiK[i], K[j], K[l]);
  }
  auto ker = rank_and_kernel(om);
  if (ker.kernel.size() != 1) {
    say("the 3-form on ker Phi(x)/x is degenerate");
    return {};
  }
  Vec y(9, 0);
  for (int i = 1; i <= 4; ++i)
    for (int m = 0; m < 9; ++m) y[m] = f.add(y[m], f.mul(ker.kernel[0][i - 1], K[i][m]));
  const auto phiy = phi_at(t, y);

  // w with t(w, K, K) = 0 and t(y, K, w) = 0
  std::vector<Matrix<FF>> phiE;
  for (int m = 0; m < 9; ++m) {
    Vec e(9, 0);
    e[m] = 1;
    phiE.push_back(phi_at(t, e));
  }
  std::vector<Vec> eqs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) {
      Vec r(9);
      for (int m = 0; m < 9; ++m) r[m] = tri(f, phiE[m], K[a], K[b]);
      eqs.push_back(r);
    }
  for (int a = 0; a < 5; ++a) {
    Vec r(9, 0);
    for (int m = 0; m < 9; ++m)
      for (int i = 0; i < 9; ++i) r[m] = f.add(r[m], f.mul(K[a][i], phiy(i, m)));
    eqs.push_back(r);
  }
  auto S = rank_and_kernel(rows_matrix(f, eqs)).kernel;
  const auto Mb = basis_starting_with(f, x, {y});
  auto SB = basis_starting_with(f, x, [&] {
    std::vector<Vec> v{y};
    v.insert(v.end(), S.begin(), S.end());
    return v;
  }());
  if (SB.size() != S.size() || Mb.size() != 2) {
    say("solution space does not contain <x, y>");
    return {};
  }
  const size_t extra = SB.size() - 2;
  if (extra == 0) {
    say("no third vector for F3-perp");
    return {};
  }
  const u64 Q = f.order();
  const u64 ncand = proj_space_size(Q, unsigned(extra));
  if (ncand > opt.candidate_cap) {
    say("too many candidate lines");
    return {};
  }
  std::vector<Flag1368<FF>> out;
  Vec mu(extra);
  for (u64 c = 0; c < ncand; ++c) {
    proj_point_from_index(c, Q, unsigned(extra), mu.data());
    Vec w(9, 0);
    for (size_t i = 0; i < extra; ++i)
      for (int m = 0; m < 9; ++m) w[m] = f.add(w[m], f.mul(mu[i], SB[2 + i][m]));
    Vec u = phix.apply(w);
    if (std::all_of(u.begin(), u.end(), [](u64 v) { return v == 0; })) continue;
    std::vector<Vec> g3{x, y, w};
    std::vector<Vec> g6 = K;
    g6.push_back(w);
    auto fl = make_flag(rows_matrix(f, {u}), kernel_matrix(rows_matrix(f, g6)), kernel_matrix(rows_matrix(f, g3)),
                        kernel_matrix(rows_matrix(f, {x})));
    if (flag_compatible(t, fl).compatible) out.push_back(fl);
  }
  if (out.empty()) say("no candidate passes the 31 conditions");
  return out;
}

namespace {

struct PointSet {
  std::set<Vec> seen;
  std::vector<Vec> order;
  bool add(Vec v, const FF& f) {
    canonicalize(f, v);
    if (!seen.insert(v).second) return false;
    order.push_back(std::move(v));
    return true;
  }
};

// walks theta curves P(ker Phi(x)) cap X starting from `seeds`
void theta_walk(const Trivector<FF>& t, PointSet& X, u64 budget, std::optional<u64> target, bool& exhausted_budget) {
  const FF& f = t.field();
  const u64 Q = f.order();
  const u64 per_curve = proj_space_size(Q, 5);
  u64 spent = 0;
  exhausted_budget = false;
  for (size_t head = 0; head < X.order.size(); ++head) {
    if (target && X.order.size() >= *target) return;
    if (spent + per_curve > budget) {
      exhausted_budget = true;
      return;
    }
    spent += per_curve;
    const Vec x = X.order[head];
    auto K = rank_and_kernel(phi_at(t, x)).kernel;
    if (K.size() != 5) continue;
    std::array<Matrix<FF>, 5> ph{phi_at(t, K[0]), phi_at(t, K[1]), phi_at(t, K[2]), phi_at(t, K[3]), phi_at(t, K[4])};
    u64 lam[5];
    u64 a[9][9];
    for (u64 idx = 0; idx < per_curve; ++idx) {
      proj_point_from_index(idx, Q, 5, lam);
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
          u64 s = 0;
          for (int k = 0; k < 5; ++k)
            if (lam[k]) s = f.add(s, f.mul(lam[k], ph[k](i, j)));
          a[i][j] = s;
        }
      if (rank9(f, a) > 4) continue;
      Vec y(9, 0);
      for (int k = 0; k < 5; ++k)
        if (lam[k])
          for (int m = 0; m < 9; ++m) y[m] = f.add(y[m], f.mul(lam[k], K[k][m]));
      X.add(std::move(y), f);
    }
  }
}

}  // namespace

FlagSearchReport flag_search(const Trivector<FF>& t, unsigned max_ext_degree, const FlagOptions& opt) {
  const FF& K = t.field();
  const u64 q = K.order();
  FlagSearchReport rep;
  auto curve = match_gamma_c(t);
  if (curve && !curve_is_smooth_closed_form(*curve)) fail(Errc::non_stable_input, "gamma_c with a singular curve");
  std::vector<Vec> known;  // X points of lower levels, over the base of each level's embedding chain
  std::vector<std::pair<unsigned, std::vector<Vec>>> per_level;
  for (unsigned d = 1; d <= max_ext_degree && !rep.complete; ++d) {
    FF L = extension_field(K, d);
    FieldEmbedding emb(K, L);
    auto tL = embed_trivector(t, emb);
    const u64 Q = L.order();
    FlagLevel lvl;
    lvl.d = d;
    const bool small = Q < 256 && proj_space_size(Q, 9) <= opt.scan_budget;
    // a walk must afford a handful of theta curves to be worth starting
    const bool walkable = Q <= 65536 && proj_space_size(Q, 5) * 4 <= opt.theta_budget;
    if (!small && !walkable) {
      lvl.method = "skipped";
      rep.levels.push_back(lvl);
      rep.notes.push_back("level " + std::to_string(d) + " skipped: beyond the enumeration budget");
      continue;
    }
    if (curve && Q * Q <= (u64{1} << 24)) {
      auto N = curve_point_counts(*curve, {d, 2 * d});
      lvl.expected_x_points = jacobian_order_from_counts(i64(N[0]), i64(N[1]), Q);
    }
    PointSet X;
    if (small) {
      LociOptions lo;
      lo.threads = opt.threads;
      auto r = enumerate_rank_locus(tL, 4, true, lo);
      if (r.counts[1] > 0) fail(Errc::non_stable_input, "Phi has rank <= 2 at a point: the input is not stable");
      for (auto& p : r.points) X.add(p, L);
      lvl.method = "scan";
      lvl.exhaustive = true;
    } else {
      // seeds: every X point found over smaller fields dividing this one
      for (auto& [e, pts] : per_level) {
        if (d % e) continue;
        FF Le = extension_field(K, e);
        FieldEmbedding up(Le, L);
        for (auto& p : pts) {
          Vec v(9);
          for (int i = 0; i < 9; ++i) v[i] = up(p[i]);
          X.add(v, L);
        }
      }
      if (curve) {
        Vec e9(9, 0);  // P' lies on X for gamma_c forms
        e9[8] = 1;
        X.add(e9, L);
      }
      if (X.order.empty()) {
        lvl.method = "skipped";
        rep.levels.push_back(lvl);
        rep.notes.push_back("level " + std::to_string(d) + " skipped: no seed points");
        continue;
      }
      bool out_of_budget = false;
      theta_walk(tL, X, opt.theta_budget, lvl.expected_x_points, out_of_budget);
      lvl.method = "theta";
      lvl.exhaustive = lvl.expected_x_points && X.order.size() == *lvl.expected_x_points;
      if (out_of_budget) rep.notes.push_back("level " + std::to_string(d) + ": theta walk stopped by budget");
    }
    lvl.x_points = X.order.size();
    if (lvl.expected_x_points && lvl.exhaustive && lvl.x_points != *lvl.expected_x_points)
      fail(Errc::disagreement, "rank-4 point count differs from the Jacobian order at level " + std::to_string(d));

    // flags at each point, in parallel, merged in point order
    std::vector<std::vector<Flag1368<FF>>> found(X.order.size());
    parallel_chunks(X.order.size(), 16, resolve_threads(opt.threads), [&](unsigned, u64 lo, u64 hi) {
      for (u64 i = lo; i < hi; ++i) found[i] = flags_at_point(tL, X.order[i], opt);
    });
    for (size_t i = 0; i < X.order.size(); ++i)
      for (auto& fl : found[i]) {
        const unsigned deg = minimal_degree(fl, q, d);
        if (deg < d) continue;  // reported at its own level
        rep.flags.push_back({fl, d, deg, X.order[i]});
        ++lvl.flags;
      }
    rep.weighted_count += lvl.flags;
    rep.complete = rep.weighted_count == 81;
    if (rep.weighted_count > 81) fail(Errc::disagreement, "more than 81 compatible flags");
    per_level.push_back({d, X.order});
    rep.levels.push_back(lvl);
  }
  return rep;
}

// ---- Chow ring ----

namespace {

using Exp = std::array<int, 9>;

// h_i(x_i..x_9) minus x_i^i: all other monomials of degree i in variables i..9
const std::vector<std::vector<Exp>>& tails() {
  static const std::vector<std::vector<Exp>> tab = [] {
    std::vector<std::vector<Exp>> out(10);
    for (int i = 1; i <= 9; ++i) {
      Exp e{};
      std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == 9) {
          if (left == 0 && e[i - 1] != i) out[i].push_back(e);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          e[var] = k;
          rec(var + 1, left - k);
        }
        e[var] = 0;
      };
      rec(i - 1, i);
    }
    return out;
  }();
  return tab;
}

}  // namespace

IntPoly reduce_symmetric(const IntPoly& p) {
  // lex order with x1 most significant
  std::map<Exp, mpz_class, std::greater<>> work;
  for (const auto& [e, c] : p) {
    if (c == 0) continue;
    work[e] += c;
  }
  IntPoly out;
  while (!work.empty()) {
    auto it = work.begin();
    Exp e = it->first;
    mpz_class c = it->second;
    work.erase(it);
    if (c == 0) continue;
    int v = -1;
    for (int i = 0; i < 9 && v < 0; ++i)
      if (e[i] >= i + 1) v = i;
    if (v < 0) {
      out.push_back({e, c});
      continue;
    }
    // x_v^v = -(h_v - x_v^v) modulo the ideal
    Exp rest = e;
    rest[v] -= v + 1;
    for (const auto& tl : tails()[v + 1]) {
      Exp m = rest;
      for (int j = 0; j < 9; ++j) m[j] += tl[j];
      work[m] -= c;
    }
  }
  return out;
}

ChernResult chern_top_class() {
  ChernResult res;
  IntPoly p{{Exp{}, mpz_class(1)}};
  for (const auto& cond : flag_conditions()) {
    IntPoly next;
    for (const auto& [e, c] : p)
      for (int k = 0; k < 3; ++k) {
        Exp m = e;
        ++m[cond[k] - 1];
        next.push_back({m, c});
      }
    p = reduce_symmetric(next);
    ++res.product_degree;
  }
  res.remainder_terms = p.size();
  if (p.size() != 1) fail(Errc::certificate_failure, "top-degree remainder has " + std::to_string(p.size()) + " terms");
  res.coefficient = p[0].second;
  res.exponents = p[0].first;
  return res;
}

}  // namespace trivec
