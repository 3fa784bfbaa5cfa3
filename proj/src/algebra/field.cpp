#include "trivec/algebra/field.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace trivec {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

u64 rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  for (u64 s : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % s == 0) {
      out.push_back(s);
      n /= s;
    }
  }
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> f;
  factor_into(n, f);
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

// Dense polynomials over F_p, low coefficient first, no trailing zeros.
using PP = std::vector<u64>;

void trim(PP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PP pp_mod(PP a, const PP& m, u64 p) {
  trim(a);
  const size_t dm = m.size() - 1;
  u64 lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    u64 c = mulmod(a.back(), lead_inv, p);
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) {
      u64 t = mulmod(c, m[i], p);
      a[shift + i] = (a[shift + i] + p - t) % p;
    }
    trim(a);
  }
  return a;
}

PP pp_mulmod(const PP& a, const PP& b, const PP& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  PP r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return pp_mod(std::move(r), m, p);
}

PP pp_powmod(PP a, u64 e, const PP& m, u64 p) {
  PP r{1};
  a = pp_mod(std::move(a), m, p);
  while (e) {
    if (e & 1) r = pp_mulmod(r, a, m, p);
    e >>= 1;
    if (e) a = pp_mulmod(a, a, m, p);
  }
  return r;
}

PP pp_gcd(PP a, PP b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PP r = pp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

PP pp_sub(PP a, const PP& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// x^(p^j) mod m by repeated Frobenius
PP frob_power_x(unsigned j, const PP& m, u64 p) {
  PP x{0, 1};
  PP r = pp_mod(x, m, p);
  for (unsigned i = 0; i < j; ++i) r = pp_powmod(r, p, m, p);
  return r;
}

// Rabin's test
bool pp_irreducible(const PP& f, u64 p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k == 1) return true;
  if (f[0] == 0) return false;
  PP x{0, 1};
  if (pp_sub(frob_power_x(k, f, p), x, p).size() != 0) return false;
  for (u64 r : prime_divisors(k)) {
    PP h = pp_sub(frob_power_x(static_cast<unsigned>(k / r), f, p), x, p);
    PP g = pp_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<u64> least_irreducible(u64 p, unsigned k) {
  // tails enumerated by code; code order equals lex order on (c_{k-1},...,c_0)
  for (u64 n = 0;; ++n) {
    PP f(k + 1, 0);
    u64 t = n;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = t % p;
      t /= p;
    }
    if (t) break;
    f[k] = 1;
    if (pp_irreducible(f, p)) return f;
  }
  fail(Errc::invalid_input, "no irreducible polynomial found");
}

bool checked_pow(u64 p, unsigned k, u64& q) {
  q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > (u64{1} << 63) / p) return false;
    q *= p;
  }
  return q < (u64{1} << 63);
}

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

u64 parse_u64(std::string_view s) {
  s = trim_ws(s);
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(Errc::invalid_input, "expected an unsigned integer, got '" + std::string(s) + "'");
  return v;
}

mpz_class parse_mpz(std::string_view s) {
  s = trim_ws(s);
  if (s.empty()) fail(Errc::invalid_input, "empty integer");
  std::string str(s);
  if (str[0] == '+') str.erase(0, 1);
  mpz_class v;
  if (v.set_str(str, 10) != 0) fail(Errc::invalid_input, "malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these witnesses are deterministic for all 64-bit n
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

// ---------------------------------------------------------------- FiniteField

FiniteField::FiniteField() : im_(make(2, 1, {})) {}

FiniteField FiniteField::prime(u64 p) { return FiniteField(make(p, 1, {})); }

FiniteField FiniteField::extension(u64 p, unsigned k) { return FiniteField(make(p, k, {})); }

FiniteField FiniteField::extension(u64 p, unsigned k, std::vector<u64> modulus) {
  if (modulus.empty()) fail(Errc::invalid_input, "empty modulus");
  return FiniteField(make(p, k, std::move(modulus)));
}

std::shared_ptr<FiniteField::Impl> FiniteField::make(u64 p, unsigned k, std::vector<u64> modulus) {
  if (p >= (u64{1} << 61) || !is_prime_u64(p))
    fail(Errc::unsupported_field, "characteristic must be a prime below 2^61, got " + std::to_string(p));
  if (k < 1) fail(Errc::unsupported_field, "extension degree must be >= 1");
  auto im = std::make_shared<Impl>();
  im->p = p;
  im->k = k;
  if (!checked_pow(p, k, im->q)) fail(Errc::unsupported_field, "field order exceeds 2^63");
  std::vector<u64> def = k == 1 ? std::vector<u64>{0, 1} : least_irreducible(p, k);
  if (modulus.empty() || k == 1) {
    modulus = def;
  } else {
    if (modulus.size() != k + 1) fail(Errc::invalid_input, "modulus must have degree k");
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) fail(Errc::invalid_input, "modulus must be monic");
    if (k > 1 && !pp_irreducible(modulus, p)) fail(Errc::invalid_input, "modulus is not irreducible");
  }
  im->default_modulus = (k == 1) || modulus == def;
  im->modulus = std::move(modulus);

  if (k == 1) {
    im->kind = Kind::prime;
    return im;
  }
  im->kind = p == 2 ? Kind::binary : Kind::poly;
  if (im->q <= (u64{1} << 20)) {
    if (p != 2) im->kind = Kind::table;
    // build log/exp tables from a primitive element found with the polynomial routines
    const u64 q = im->q;
    auto bare = std::make_shared<Impl>(*im);
    bare->kind = p == 2 ? Kind::binary : Kind::poly;
    FiniteField slow{std::shared_ptr<const Impl>(bare)};
    std::vector<u64> pd = prime_divisors(q - 1);
    Element g = 0;
    for (u64 c = 2; c < q && !g; ++c) {
      bool ok = true;
      for (u64 r : pd) {
        if (slow.pow(c, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) g = c;
    }
    im->gen = g;
    im->exp.assign(2 * (q - 1) + 1, 0);
    im->log.assign(q, 0);
    Element x = 1;
    for (u64 i = 0; i < q - 1; ++i) {
      im->exp[i] = static_cast<std::uint32_t>(x);
      im->log[x] = static_cast<std::uint32_t>(i);
      x = slow.mul(x, g);
    }
    for (u64 i = q - 1; i < im->exp.size(); ++i) im->exp[i] = im->exp[i - (q - 1)];
    if (p != 2) {
      im->half = (q - 1) / 2;
      im->zech.assign(q - 1, -1);
      for (u64 d = 0; d < q - 1; ++d) {
        Element s = slow.add(1, im->exp[d]);
        im->zech[d] = s == 0 ? -1 : static_cast<std::int64_t>(im->log[s]);
      }
    }
  }
  return im;
}

std::string FiniteField::spec() const {
  const Impl& m = *im_;
  if (m.k == 1) return "GF(" + std::to_string(m.p) + ")";
  std::string s = "GF(" + std::to_string(m.p) + "^" + std::to_string(m.k);
  if (!m.default_modulus) {
    s += ";mod=";
    for (size_t i = 0; i < m.modulus.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(m.modulus[i]);
    }
  }
  return s + ")";
}

bool FiniteField::operator==(const FiniteField& o) const {
  if (im_ == o.im_) return true;
  return im_->p == o.im_->p && im_->k == o.im_->k && im_->modulus == o.im_->modulus;
}

FiniteField::Element FiniteField::from_int(i64 v) const {
  const u64 p = im_->p;
  u64 r;
  if (v >= 0) {
    r = static_cast<u64>(v) % p;
  } else {
    u64 a = static_cast<u64>(-(v + 1)) + 1;  // |v| without overflow
    r = (p - a % p) % p;
  }
  return r;
}

FiniteField::Element FiniteField::from_mpz(const mpz_class& v) const {
  mpz_class r = v % mpz_class(std::to_string(im_->p));
  if (r < 0) r += mpz_class(std::to_string(im_->p));
  return std::stoull(r.get_str());
}

FiniteField::Element FiniteField::element(u64 code) const {
  if (code >= im_->q) fail(Errc::invalid_input, "element code out of range");
  return code;
}

FiniteField::Element FiniteField::from_digits(const std::vector<u64>& d) const {
  const Impl& m = *im_;
  if (d.size() > m.k) fail(Errc::invalid_input, "too many coefficients for " + spec());
  u64 code = 0;
  for (size_t i = d.size(); i-- > 0;) code = code * m.p + d[i] % m.p;
  return code;
}

std::vector<u64> FiniteField::digits(Element a) const {
  const Impl& m = *im_;
  std::vector<u64> d(m.k, 0);
  for (unsigned i = 0; i < m.k; ++i) {
    d[i] = a % m.p;
    a /= m.p;
  }
  return d;
}

FiniteField::Element FiniteField::poly_add(Element a, Element b) const {
  const Impl& m = *im_;
  u64 r = 0, w = 1;
  for (unsigned i = 0; i < m.k; ++i) {
    u64 s = a % m.p + b % m.p;
    if (s >= m.p) s -= m.p;
    r += s * w;
    a /= m.p;
    b /= m.p;
    if (i + 1 < m.k) w *= m.p;
  }
  return r;
}

FiniteField::Element FiniteField::poly_neg(Element a) const {
  const Impl& m = *im_;
  u64 r = 0, w = 1;
  for (unsigned i = 0; i < m.k; ++i) {
    u64 c = a % m.p;
    r += (c ? m.p - c : 0) * w;
    a /= m.p;
    if (i + 1 < m.k) w *= m.p;
  }
  return r;
}

FiniteField::Element FiniteField::poly_mul(Element a, Element b) const {
  const Impl& m = *im_;
  if (a == 0 || b == 0) return 0;
  PP da = digits(a), db = digits(b);
  trim(da);
  trim(db);
  PP r = pp_mulmod(da, db, m.modulus, m.p);
  r.resize(m.k, 0);
  return from_digits(r);
}

FiniteField::Element FiniteField::pow(Element a, u64 e) const {
  const Impl& m = *im_;
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!m.exp.empty()) {
    u64 l = static_cast<u64>((static_cast<u128>(m.log[a]) * (e % (m.q - 1))) % (m.q - 1));
    return m.exp[l];
  }
  Element r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

FiniteField::Element FiniteField::pow(Element a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), mpz_class(-e));
  if (e == 0) return 1;
  if (a == 0) return 0;
  mpz_class r = e % mpz_class(std::to_string(im_->q - 1));
  u64 ee = std::stoull(r.get_str());
  return ee == 0 ? 1 : pow(a, ee);
}

FiniteField::Element FiniteField::inv(Element a) const {
  const Impl& m = *im_;
  if (a == 0) fail(Errc::not_invertible, "inverse of zero in " + spec());
  if (!m.exp.empty()) return m.exp[(m.q - 1 - m.log[a]) % (m.q - 1)];
  if (m.k == 1) {
    // extended Euclid
    i64 t = 0, nt = 1;
    u64 r = m.p, nr = a;
    while (nr) {
      u64 qq = r / nr;
      i64 tmp = t - static_cast<i64>(qq) * nt;
      t = nt;
      nt = tmp;
      u64 tr = r - qq * nr;
      r = nr;
      nr = tr;
    }
    if (m.p < (u64{1} << 62)) return t < 0 ? static_cast<u64>(t + static_cast<i64>(m.p)) : static_cast<u64>(t);
  }
  return pow(a, m.q - 2);
}

FiniteField::Element FiniteField::primitive_element() const {
  const Impl& m = *im_;
  if (m.gen) return m.gen;
  if (m.q == 2) return 1;
  std::vector<u64> pd = prime_divisors(m.q - 1);
  for (u64 c = 2; c < m.q; ++c) {
    bool ok = true;
    for (u64 r : pd) {
      if (pow(c, (m.q - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  fail(Errc::invalid_input, "no primitive element");
}

FiniteField::Element FiniteField::random(std::mt19937_64& rng) const {
  return std::uniform_int_distribution<u64>(0, im_->q - 1)(rng);
}

FiniteField::Element FiniteField::random_nonzero(std::mt19937_64& rng) const {
  return std::uniform_int_distribution<u64>(1, im_->q - 1)(rng);
}

std::string FiniteField::to_string(Element a) const {
  const Impl& m = *im_;
  if (m.k == 1) return std::to_string(a);
  std::string s;
  auto d = digits(a);
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s;
}

FiniteField::Element FiniteField::parse(std::string_view s) const {
  s = trim_ws(s);
  if (s.find(',') == std::string_view::npos) return from_mpz(parse_mpz(s));
  std::vector<u64> d;
  while (true) {
    auto pos = s.find(',');
    d.push_back(from_mpz(parse_mpz(s.substr(0, pos))));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return from_digits(d);
}

// ------------------------------------------------------------------ Rationals

Rationals::Element Rationals::inv(const Element& a) const {
  if (sgn(a) == 0) fail(Errc::not_invertible, "inverse of zero in Q");
  Element r = 1 / a;
  r.canonicalize();
  return r;
}

Rationals::Element Rationals::div(const Element& a, const Element& b) const {
  if (sgn(b) == 0) fail(Errc::not_invertible, "division by zero in Q");
  return a / b;
}

Rationals::Element Rationals::pow(const Element& a, u64 e) const {
  Element r = 1, b = a;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Rationals::Element Rationals::random(std::mt19937_64& rng) const {
  long num = std::uniform_int_distribution<long>(-20, 20)(rng);
  long den = std::uniform_int_distribution<long>(1, 9)(rng);
  Element r(num, den);
  r.canonicalize();
  return r;
}

Rationals::Element Rationals::random_nonzero(std::mt19937_64& rng) const {
  Element r;
  do r = random(rng);
  while (sgn(r) == 0);
  return r;
}

Rationals::Element Rationals::parse(std::string_view s) const {
  s = trim_ws(s);
  auto slash = s.find('/');
  mpz_class num = parse_mpz(s.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string_view::npos) den = parse_mpz(s.substr(slash + 1));
  if (den == 0) fail(Errc::invalid_input, "zero denominator");
  Element r(num, den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- field specs

AnyField parse_field(std::string_view spec) {
  std::string_view s = trim_ws(spec);
  if (s == "Q" || s == "QQ") return Rationals{};
  auto bad = [&] { fail(Errc::invalid_input, "malformed field spec '" + std::string(spec) + "'"); };
  if (s.size() < 5 || s.substr(0, 3) != "GF(" || s.back() != ')') bad();
  s = s.substr(3, s.size() - 4);
  std::string_view head = s, mod;
  if (auto semi = s.find(';'); semi != std::string_view::npos) {
    head = s.substr(0, semi);
    mod = trim_ws(s.substr(semi + 1));
    if (mod.substr(0, 4) != "mod=") bad();
    mod.remove_prefix(4);
  }
  u64 p, k = 1;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = parse_u64(head.substr(0, caret));
    k = parse_u64(head.substr(caret + 1));
  } else {
    u64 n = parse_u64(head);
    if (n < 2) bad();
    if (is_prime_u64(n)) {
      p = n;
    } else {
      // prime power given as a single integer, e.g. GF(4)
      std::vector<u64> pd = prime_divisors(n);
      if (pd.size() != 1) fail(Errc::unsupported_field, "GF(n) needs n a prime power, got " + std::to_string(n));
      p = pd[0];
      k = 0;
      for (u64 m = n; m > 1; m /= p) ++k;
    }
  }
  if (k == 0 || k > 64) bad();
  std::vector<u64> modulus;
  if (!mod.empty()) {
    while (true) {
      auto pos = mod.find(',');
      modulus.push_back(parse_u64(mod.substr(0, pos)));
      if (pos == std::string_view::npos) break;
      mod.remove_prefix(pos + 1);
    }
    return FiniteField::extension(p, static_cast<unsigned>(k), std::move(modulus));
  }
  if (k == 1) return FiniteField::prime(p);
  return FiniteField::extension(p, static_cast<unsigned>(k));
}

std::string field_spec(const AnyField& f) {
  return std::visit([](const auto& x) { return x.spec(); }, f);
}

}  // namespace trivec
