#include "trivec/algebra/solve.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace trivec {

using MP = MultiPoly<FiniteField>;

FiniteField extension_field(const FiniteField& K, unsigned d) {
  static std::mutex mu;
  static std::map<std::pair<u64, unsigned>, FiniteField> cache;
  const u64 p = K.characteristic();
  const unsigned k = K.degree() * d;
  if (d == 1) return K;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FiniteField L = k == 1 ? FiniteField::prime(p) : FiniteField::extension(p, k);
  cache.emplace(key, L);
  return L;
}

FieldEmbedding::FieldEmbedding(const FiniteField& from, const FiniteField& to) : from_(from), to_(to) {
  if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0)
    fail(Errc::field_mismatch, from.spec() + " does not embed in " + to.spec());
  const unsigned k = from.degree();
  u64 r = 0;
  if (k > 1) {
    std::vector<u64> c;
    for (u64 m : from.modulus()) c.push_back(to.from_int(static_cast<i64>(m)));
    auto rs = roots(UPoly<FiniteField>(to, c));
    if (rs.empty()) fail(Errc::field_mismatch, "no root of the source modulus in the target");
    r = rs.front();
  }
  root_powers_.resize(k);
  u64 x = to.one();
  for (unsigned i = 0; i < k; ++i) {
    root_powers_[i] = x;
    x = to.mul(x, r);
  }
}

u64 FieldEmbedding::operator()(u64 a) const {
  if (from_.degree() == 1) return to_.from_int(static_cast<i64>(a));
  auto d = from_.digits(a);
  u64 s = to_.zero();
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i]) s = to_.add(s, to_.mul(to_.from_int(static_cast<i64>(d[i])), root_powers_[i]));
  return s;
}

unsigned degree_over(const FiniteField& L, const FiniteField& K, const std::vector<u64>& coords) {
  const unsigned d = L.degree() / K.degree();
  const u64 q = K.order();
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    bool fixed = true;
    for (u64 a : coords) {
      u64 b = a;
      for (unsigned i = 0; i < e; ++i) b = L.pow(b, q);
      if (b != a) {
        fixed = false;
        break;
      }
    }
    if (fixed) return e;
  }
  return d;
}

namespace {

struct Solver {
  const FiniteField& L;
  u64 budget;
  u64 spent = 0;
  std::mt19937_64 rng{12345};

  void charge(u64 n) {
    spent += n;
    if (spent > budget) fail(Errc::budget_exceeded, "polynomial system enumeration over " + L.spec() + " exceeds " + std::to_string(budget));
  }

  static std::vector<MP> clean(const std::vector<MP>& sys, bool& inconsistent) {
    std::vector<MP> out;
    inconsistent = false;
    for (auto& p : sys) {
      if (p.is_zero()) continue;
      if (p.is_constant()) {
        inconsistent = true;
        return {};
      }
      out.push_back(p);
    }
    return out;
  }

  // assignments for `vars`, as maps var -> value stored in a vector indexed by var
  std::vector<std::vector<u64>> run(const std::vector<MP>& sys_in, std::vector<unsigned> vars, unsigned n) {
    bool bad = false;
    std::vector<MP> sys = clean(sys_in, bad);
    if (bad) return {};
    std::vector<std::vector<u64>> out;
    if (vars.empty()) {
      out.emplace_back(n, 0);
      return out;
    }
    if (sys.empty()) return enumerate_all(vars, n);

    // eliminate the variable of least total degree across the system
    unsigned v = vars.front();
    unsigned best = ~0u;
    for (unsigned w : vars) {
      unsigned s = 0;
      bool occurs = false;
      for (auto& p : sys) {
        s += p.degree_in(w);
        occurs = occurs || p.involves(w);
      }
      if (!occurs) s = ~0u - 1;
      if (s < best) {
        best = s;
        v = w;
      }
    }
    std::vector<unsigned> rest;
    for (unsigned w : vars)
      if (w != v) rest.push_back(w);

    std::vector<MP> s0, s1;
    for (auto& p : sys) (p.involves(v) ? s1 : s0).push_back(p);
    if (s1.empty()) {
      // v is free
      auto partial = run(s0, rest, n);
      for (auto& a : partial)
        for (u64 c = 0; c < L.order(); ++c) {
          charge(1);
          a[v] = c;
          out.push_back(a);
        }
      return out;
    }
    std::sort(s1.begin(), s1.end(), [v](const MP& a, const MP& b) { return a.degree_in(v) < b.degree_in(v); });
    std::vector<MP> projected = s0;
    if (!rest.empty())
      for (size_t j = 1; j < s1.size(); ++j) projected.push_back(resultant(s1[0], s1[j], v));

    std::vector<std::vector<u64>> partial;
    if (rest.empty()) {
      partial.emplace_back(n, 0);
    } else {
      partial = run(projected, rest, n);
    }
    for (auto& a : partial) {
      std::vector<UPoly<FiniteField>> uni;
      bool dead = false;
      for (auto& p : s1) {
        MP q = p;
        for (unsigned w : rest) q = q.specialize(w, a[w]);
        if (q.is_zero()) continue;
        if (q.is_constant()) {
          dead = true;
          break;
        }
        uni.push_back(q.to_univariate(v));
      }
      if (dead) continue;
      if (uni.empty()) {
        for (u64 c = 0; c < L.order(); ++c) {
          charge(1);
          a[v] = c;
          out.push_back(a);
        }
        continue;
      }
      UPoly<FiniteField> g = uni[0];
      for (size_t i = 1; i < uni.size(); ++i) g = gcd(g, uni[i]);
      charge(static_cast<u64>(g.degree()) + 1);
      for (u64 r : roots(g, rng)) {
        a[v] = r;
        out.push_back(a);
      }
    }
    return out;
  }

  std::vector<std::vector<u64>> enumerate_all(const std::vector<unsigned>& vars, unsigned n) {
    u64 total = 1;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (total > budget / L.order()) fail(Errc::budget_exceeded, "free variables over " + L.spec());
      total *= L.order();
    }
    charge(total);
    std::vector<std::vector<u64>> out;
    std::vector<u64> a(n, 0);
    for (u64 idx = 0; idx < total; ++idx) {
      u64 t = idx;
      for (unsigned w : vars) {
        a[w] = t % L.order();
        t /= L.order();
      }
      out.push_back(a);
    }
    return out;
  }
};

}  // namespace

std::vector<std::vector<u64>> solve_over(const std::vector<MP>& system, const FiniteField& L, const SolveOptions& opt) {
  if (system.empty()) fail(Errc::invalid_input, "empty polynomial system");
  const unsigned n = system.front().nvars();
  if (n > 3) fail(Errc::invalid_input, "polynomial systems are limited to 3 variables");
  Solver s{L, opt.budget};
  std::vector<unsigned> vars(n);
  for (unsigned i = 0; i < n; ++i) vars[i] = i;
  auto sols = s.run(system, vars, n);
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
  // re-verify every solution against the original system
  for (auto& a : sols)
    for (auto& p : system)
      if (!L.is_zero(p.eval(a))) fail(Errc::certificate_failure, "solver produced a non-solution");
  return sols;
}

std::vector<Solution> singular_point_search(const std::vector<MP>& system, const FiniteField& K, unsigned max_ext_degree,
                                            const SolveOptions& opt) {
  if (max_ext_degree < 1) fail(Errc::invalid_input, "max_ext_degree must be >= 1");
  std::vector<Solution> out;
  if (system.empty()) return out;
  for (unsigned d = 1; d <= max_ext_degree; ++d) {
    FiniteField L = extension_field(K, d);
    FieldEmbedding emb(K, L);
    std::vector<MP> sys;
    for (auto& p : system) sys.push_back(p.map_coefficients(L, [&](u64 c) { return emb(c); }));
    for (auto& a : solve_over(sys, L, opt)) {
      unsigned e = degree_over(L, K, a);
      if (e == d) out.push_back(Solution{L, a, d});
    }
  }
  return out;
}

std::vector<Solution> singular_point_search(const std::vector<MultiPoly<Rationals>>&, const Rationals&, unsigned,
                                            const SolveOptions&) {
  fail(Errc::unsupported_field, "singular_point_search needs a finite base field");
}

}  // namespace trivec
