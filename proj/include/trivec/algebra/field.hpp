#pragma once

// Finite fields F_{p^k} with elements packed as base-p digit codes, and the
// rationals on top of GMP. Both expose the same duck-typed interface so the
// linear algebra and the trivector code can be written once as templates.

#include <concepts>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "trivec/errors.hpp"

namespace trivec {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

bool is_prime_u64(u64 n);

class FiniteField {
 public:
  // code c0 + c1 p + ... + c_{k-1} p^{k-1}; canonical by construction
  using Element = u64;

  FiniteField();  // GF(2)
  static FiniteField prime(u64 p);
  static FiniteField extension(u64 p, unsigned k);
  static FiniteField extension(u64 p, unsigned k, std::vector<u64> modulus);

  u64 characteristic() const { return im_->p; }
  unsigned degree() const { return im_->k; }
  u64 order() const { return im_->q; }
  bool is_prime_field() const { return im_->k == 1; }
  // monic, low coefficient first, size degree()+1
  const std::vector<u64>& modulus() const { return im_->modulus; }
  std::string spec() const;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(i64 v) const;
  Element from_mpz(const mpz_class& v) const;
  Element element(u64 code) const;  // code < q
  Element from_digits(const std::vector<u64>& d) const;
  std::vector<u64> digits(Element a) const;

  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }

  Element add(Element a, Element b) const {
    const Impl& m = *im_;
    switch (m.kind) {
      case Kind::prime: {
        u64 s = a + b;
        return s >= m.p ? s - m.p : s;
      }
      case Kind::binary:
        return a ^ b;
      case Kind::table:
        return table_add(a, b);
      default:
        return poly_add(a, b);
    }
  }
  Element neg(Element a) const {
    const Impl& m = *im_;
    switch (m.kind) {
      case Kind::prime:
        return a == 0 ? 0 : m.p - a;
      case Kind::binary:
        return a;
      case Kind::table:
        return a == 0 ? 0 : m.exp[m.log[a] + m.half];
      default:
        return poly_neg(a);
    }
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    const Impl& m = *im_;
    switch (m.kind) {
      case Kind::prime:
        if (m.p <= 0xffffffffULL) return (a * b) % m.p;
        return static_cast<u64>((static_cast<u128>(a) * b) % m.p);
      case Kind::binary:
      case Kind::table:
        if (!m.exp.empty()) {
          if (a == 0 || b == 0) return 0;
          return m.exp[m.log[a] + m.log[b]];
        }
        return poly_mul(a, b);
      default:
        return poly_mul(a, b);
    }
  }
  // a + b*c
  Element fma(Element a, Element b, Element c) const { return add(a, mul(b, c)); }
  Element sqr(Element a) const { return mul(a, a); }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, u64 e) const;
  Element pow(Element a, const mpz_class& e) const;
  Element frobenius(Element a) const { return pow(a, im_->p); }

  // primitive element (generator of the multiplicative group); cached for table fields
  Element primitive_element() const;

  Element random(std::mt19937_64& rng) const;
  Element random_nonzero(std::mt19937_64& rng) const;

  std::string to_string(Element a) const;
  Element parse(std::string_view s) const;

  bool operator==(const FiniteField& o) const;
  bool operator!=(const FiniteField& o) const { return !(*this == o); }

 private:
  enum class Kind { prime, binary, table, poly };
  struct Impl {
    u64 p = 2;
    unsigned k = 1;
    u64 q = 2;
    Kind kind = Kind::prime;
    std::vector<u64> modulus;
    // table fields: exp has length 2(q-1)+1, log[0] unused
    std::vector<std::uint32_t> exp, log;
    std::vector<std::int64_t> zech;  // log(1 + g^d), -1 for zero
    u64 half = 0;                    // log(-1) for odd characteristic
    Element gen = 0;
    bool default_modulus = true;
  };

  explicit FiniteField(std::shared_ptr<const Impl> im) : im_(std::move(im)) {}
  static std::shared_ptr<Impl> make(u64 p, unsigned k, std::vector<u64> modulus);

  Element table_add(Element a, Element b) const {
    const Impl& m = *im_;
    if (a == 0) return b;
    if (b == 0) return a;
    u64 la = m.log[a], lb = m.log[b];
    u64 d = lb >= la ? lb - la : lb + (m.q - 1) - la;
    std::int64_t z = m.zech[d];
    if (z < 0) return 0;
    u64 e = la + static_cast<u64>(z);
    if (e >= m.q - 1) e -= m.q - 1;
    return m.exp[e];
  }
  Element poly_add(Element a, Element b) const;
  Element poly_neg(Element a) const;
  Element poly_mul(Element a, Element b) const;

  std::shared_ptr<const Impl> im_;
};

class Rationals {
 public:
  using Element = mpq_class;

  u64 characteristic() const { return 0; }
  std::string spec() const { return "Q"; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(i64 v) const { return Element(static_cast<long>(v)); }
  Element from_mpz(const mpz_class& v) const { return Element(v); }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element fma(const Element& a, const Element& b, const Element& c) const { return a + b * c; }
  Element sqr(const Element& a) const { return a * a; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const;
  Element pow(const Element& a, u64 e) const;

  Element random(std::mt19937_64& rng) const;  // small numerators/denominators
  Element random_nonzero(std::mt19937_64& rng) const;

  std::string to_string(const Element& a) const { return a.get_str(); }
  Element parse(std::string_view s) const;

  bool operator==(const Rationals&) const { return true; }
  bool operator!=(const Rationals&) const { return false; }
};

template <class F>
concept Field = requires(const F& f, const typename F::Element& a, std::mt19937_64& rng) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.random(rng) } -> std::convertible_to<typename F::Element>;
  { f.characteristic() } -> std::convertible_to<u64>;
};

template <class F>
inline constexpr bool is_finite_field_v = std::is_same_v<F, FiniteField>;

// "Q", "GF(p)", "GF(p^k)", "GF(p^k;mod=c0,...,ck)"
using AnyField = std::variant<FiniteField, Rationals>;
AnyField parse_field(std::string_view spec);
std::string field_spec(const AnyField& f);

}  // namespace trivec
