#include <atomic>
#include <cstdlib>
#include <cstring>

#include "trivec/kernels/kernels.hpp"

namespace trivec::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("TRIVEC_FORCE_SCALAR"); env && std::strcmp(env, "0") != 0) return Isa::scalar;
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& isa_slot() {
  static std::atomic<int> slot{static_cast<int>(detect())};
  return slot;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return static_cast<Isa>(isa_slot().load(std::memory_order_relaxed)); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_supported()) isa = Isa::scalar;
  isa_slot().store(static_cast<int>(isa), std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void axpy_mod(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t f, std::uint64_t p, std::size_t n) {
  if (active_isa() == Isa::avx2) return avx2::axpy_mod(dst, src, f, p, n);
  scalar::axpy_mod(dst, src, f, p, n);
}

void skew_rank9_batch(const std::uint16_t* m, std::size_t n, std::uint16_t p, std::uint8_t* out) {
  if (active_isa() == Isa::avx2) return avx2::skew_rank9_batch(m, n, p, out);
  scalar::skew_rank9_batch(m, n, p, out);
}

void pencil_rank_batch(const PencilTerms& t, const std::uint16_t* x, std::size_t n, std::uint16_t p,
                       std::uint8_t* out) {
  if (active_isa() == Isa::avx2) return avx2::pencil_rank_batch(t, x, n, p, out);
  scalar::pencil_rank_batch(t, x, n, p, out);
}

void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  if (active_isa() == Isa::avx2) return avx2::bits_or(dst, src, words);
  scalar::bits_or(dst, src, words);
}

bool bits_intersect(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  if (active_isa() == Isa::avx2) return avx2::bits_intersect(a, b, words);
  return scalar::bits_intersect(a, b, words);
}

namespace scalar {

void axpy_mod(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t f, std::uint64_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = (dst[i] + f * src[i]) % p;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

int rank9(std::uint32_t a[9][9], std::uint32_t p) {
  int rank = 0;
  for (int c = 0; c < 9 && rank < 9; ++c) {
    int piv = -1;
    for (int r = rank; r < 9; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = c; j < 9; ++j) std::swap(a[piv][j], a[rank][j]);
    std::uint32_t inv = inv_mod(a[rank][c], p);
    for (int r = rank + 1; r < 9; ++r) {
      if (!a[r][c]) continue;
      std::uint32_t f = (p - a[r][c]) * inv % p;
      for (int j = c; j < 9; ++j) a[r][j] = (a[r][j] + f * a[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

void skew_rank9_batch(const std::uint16_t* m, std::size_t n, std::uint16_t p, std::uint8_t* out) {
  for (std::size_t lane = 0; lane < n; ++lane) {
    std::uint32_t a[9][9];
    for (int i = 0; i < 9; ++i) {
      a[i][i] = 0;
      for (int j = i + 1; j < 9; ++j) {
        std::uint32_t v = m[(9 * i + j) * n + lane] % p;
        a[i][j] = v;
        a[j][i] = v ? p - v : 0;
      }
    }
    out[lane] = static_cast<std::uint8_t>(rank9(a, p));
  }
}

void pencil_rank_batch(const PencilTerms& t, const std::uint16_t* x, std::size_t n, std::uint16_t p,
                       std::uint8_t* out) {
  for (std::size_t lane = 0; lane < n; ++lane) {
    std::uint32_t a[9][9];
    int e = 0;
    for (int i = 0; i < 9; ++i) {
      a[i][i] = 0;
      for (int j = i + 1; j < 9; ++j, ++e) {
        std::uint32_t v = 0;
        for (int k = 0; k < t.count[e]; ++k) v = (v + std::uint32_t(t.coef[e][k]) * x[t.var[e][k] * n + lane]) % p;
        a[i][j] = v;
        a[j][i] = v ? p - v : 0;
      }
    }
    out[lane] = static_cast<std::uint8_t>(rank9(a, p));
  }
}

void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

bool bits_intersect(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

}  // namespace scalar

}  // namespace trivec::kernels
