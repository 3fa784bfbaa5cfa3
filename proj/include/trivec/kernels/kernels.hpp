#pragma once

// Hot loops with a scalar reference implementation and an AVX2 variant.
// The variant is picked once at runtime; TRIVEC_FORCE_SCALAR=1 pins scalar.

#include <cstddef>
#include <cstdint>

namespace trivec::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
void set_isa(Isa isa);  // tests and benchmarks only; falls back to scalar if unsupported
bool avx2_supported();
const char* isa_name(Isa isa);

// dst[i] = (dst[i] + f * src[i]) mod p for entries < p < 2^16
void axpy_mod(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t f, std::uint64_t p, std::size_t n);

// Ranks of a batch of 9x9 alternating matrices over F_p, p < 256.
// Layout is entry-major: m[(9*i + j) * n + lane]. Only the strict upper
// triangle is read. Ranks are written to out[lane].
void skew_rank9_batch(const std::uint16_t* m, std::size_t n, std::uint16_t p, std::uint8_t* out);

// Sparse description of a 9x9 alternating pencil: upper entry e (pairs a<b in
// lex order) equals sum over i < count[e] of coef[e][i] * x[var[e][i]].
struct PencilTerms {
  std::uint8_t count[36];
  std::uint8_t var[36][9];
  std::uint16_t coef[36][9];
};

// Ranks of the pencil at a batch of points, x[k * n + lane], entries < p < 256.
void pencil_rank_batch(const PencilTerms& t, const std::uint16_t* x, std::size_t n, std::uint16_t p,
                       std::uint8_t* out);

// dst |= src over `words` 64-bit words
void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
// any bit set in (a & b)
bool bits_intersect(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);

namespace scalar {
void axpy_mod(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t f, std::uint64_t p, std::size_t n);
void skew_rank9_batch(const std::uint16_t* m, std::size_t n, std::uint16_t p, std::uint8_t* out);
void pencil_rank_batch(const PencilTerms& t, const std::uint16_t* x, std::size_t n, std::uint16_t p,
                       std::uint8_t* out);
void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
bool bits_intersect(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
}  // namespace scalar

namespace avx2 {
void axpy_mod(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t f, std::uint64_t p, std::size_t n);
void skew_rank9_batch(const std::uint16_t* m, std::size_t n, std::uint16_t p, std::uint8_t* out);
void pencil_rank_batch(const PencilTerms& t, const std::uint16_t* x, std::size_t n, std::uint16_t p,
                       std::uint8_t* out);
void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
bool bits_intersect(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
}  // namespace avx2

}  // namespace trivec::kernels
