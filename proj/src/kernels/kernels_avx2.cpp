#include <immintrin.h>

#include "trivec/kernels/kernels.hpp"

#define TRIVEC_AVX2 __attribute__((target("avx2")))

namespace trivec::kernels::avx2 {

namespace {

// x < 2^16 -> x mod p, p < 256, magic = floor(2^16 / p)
TRIVEC_AVX2 inline __m256i reduce16(__m256i x, __m256i vp, __m256i magic) {
  __m256i q = _mm256_mulhi_epu16(x, magic);
  __m256i r = _mm256_sub_epi16(x, _mm256_mullo_epi16(q, vp));
  return _mm256_min_epu16(r, _mm256_sub_epi16(r, vp));
}

TRIVEC_AVX2 inline __m256i mulmod16(__m256i a, __m256i b, __m256i vp, __m256i magic) {
  return reduce16(_mm256_mullo_epi16(a, b), vp, magic);
}

TRIVEC_AVX2 inline __m256i addmod16(__m256i a, __m256i b, __m256i vp) {
  __m256i s = _mm256_add_epi16(a, b);
  return _mm256_min_epu16(s, _mm256_sub_epi16(s, vp));
}

TRIVEC_AVX2 inline __m256i submod16(__m256i a, __m256i b, __m256i vp) {
  __m256i d = _mm256_add_epi16(_mm256_sub_epi16(a, b), vp);
  return _mm256_min_epu16(d, _mm256_sub_epi16(d, vp));
}

// Lane-parallel fraction-free elimination; each lane picks its own pivot rows.
TRIVEC_AVX2 __m256i rank_lanes(__m256i a[9][9], __m256i vp, __m256i magic) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i ones = _mm256_set1_epi16(-1);
  __m256i used[9];
  for (int r = 0; r < 9; ++r) used[r] = zero;
  __m256i rank = zero;
  for (int c = 0; c < 9; ++c) {
    __m256i found = zero;
    __m256i piv[9];
    for (int j = c; j < 9; ++j) piv[j] = zero;
    for (int r = 0; r < 9; ++r) {
      __m256i nz = _mm256_xor_si256(_mm256_cmpeq_epi16(a[r][c], zero), ones);
      __m256i cand = _mm256_andnot_si256(_mm256_or_si256(used[r], found), nz);
      for (int j = c; j < 9; ++j) piv[j] = _mm256_blendv_epi8(piv[j], a[r][j], cand);
      found = _mm256_or_si256(found, cand);
      used[r] = _mm256_or_si256(used[r], cand);
    }
    if (_mm256_testz_si256(found, found)) continue;
    rank = _mm256_sub_epi16(rank, found);
    for (int r = 0; r < 9; ++r) {
      __m256i act = _mm256_andnot_si256(used[r], found);
      if (_mm256_testz_si256(act, act)) continue;
      __m256i e = a[r][c];
      for (int j = c + 1; j < 9; ++j) {
        __m256i t = submod16(mulmod16(piv[c], a[r][j], vp, magic), mulmod16(e, piv[j], vp, magic), vp);
        a[r][j] = _mm256_blendv_epi8(a[r][j], t, act);
      }
      a[r][c] = _mm256_blendv_epi8(a[r][c], zero, act);
    }
  }
  return rank;
}

TRIVEC_AVX2 void store_ranks(__m256i rank, std::uint8_t* out) {
  alignas(32) std::uint16_t tmp[16];
  _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), rank);
  for (int i = 0; i < 16; ++i) out[i] = static_cast<std::uint8_t>(tmp[i]);
}

}  // namespace

TRIVEC_AVX2 void axpy_mod(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t f, std::uint64_t p,
                          std::size_t n) {
  const __m256i vf = _mm256_set1_epi64x(static_cast<long long>(f));
  const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(p));
  const __m256i vpm1 = _mm256_set1_epi64x(static_cast<long long>(p - 1));
  const __m256i magic = _mm256_set1_epi64x(static_cast<long long>((std::uint64_t{1} << 32) / p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i prod = _mm256_mul_epu32(s, vf);
    __m256i q = _mm256_srli_epi64(_mm256_mul_epu32(prod, magic), 32);
    __m256i r = _mm256_sub_epi64(prod, _mm256_mul_epu32(q, vp));
    r = _mm256_sub_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(r, vpm1), vp));
    r = _mm256_add_epi64(r, d);
    r = _mm256_sub_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(r, vpm1), vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
  }
  for (; i < n; ++i) dst[i] = (dst[i] + f * src[i]) % p;
}

TRIVEC_AVX2 void skew_rank9_batch(const std::uint16_t* m, std::size_t n, std::uint16_t p, std::uint8_t* out) {
  const __m256i vp = _mm256_set1_epi16(static_cast<short>(p));
  const __m256i magic = _mm256_set1_epi16(static_cast<short>(65536u / p));
  std::size_t base = 0;
  for (; base + 16 <= n; base += 16) {
    __m256i a[9][9];
    for (int i = 0; i < 9; ++i) {
      a[i][i] = _mm256_setzero_si256();
      for (int j = i + 1; j < 9; ++j) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m + (9 * i + j) * n + base));
        a[i][j] = v;
        a[j][i] = submod16(_mm256_setzero_si256(), v, vp);
      }
    }
    store_ranks(rank_lanes(a, vp, magic), out + base);
  }
  if (base < n) {
    // tail through the scalar reference, one lane at a time
    for (std::size_t lane = base; lane < n; ++lane) {
      std::uint16_t one[81];
      for (int e = 0; e < 81; ++e) one[e] = m[e * n + lane];
      scalar::skew_rank9_batch(one, 1, p, out + lane);
    }
  }
}

TRIVEC_AVX2 void pencil_rank_batch(const PencilTerms& t, const std::uint16_t* x, std::size_t n, std::uint16_t p,
                                   std::uint8_t* out) {
  const __m256i vp = _mm256_set1_epi16(static_cast<short>(p));
  const __m256i magic = _mm256_set1_epi16(static_cast<short>(65536u / p));
  std::size_t base = 0;
  for (; base + 16 <= n; base += 16) {
    __m256i xv[9];
    for (int k = 0; k < 9; ++k) xv[k] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + k * n + base));
    __m256i a[9][9];
    int e = 0;
    for (int i = 0; i < 9; ++i) {
      a[i][i] = _mm256_setzero_si256();
      for (int j = i + 1; j < 9; ++j, ++e) {
        __m256i v = _mm256_setzero_si256();
        for (int k = 0; k < t.count[e]; ++k) {
          __m256i c = _mm256_set1_epi16(static_cast<short>(t.coef[e][k]));
          v = addmod16(v, mulmod16(c, xv[t.var[e][k]], vp, magic), vp);
        }
        a[i][j] = v;
        a[j][i] = submod16(_mm256_setzero_si256(), v, vp);
      }
    }
    store_ranks(rank_lanes(a, vp, magic), out + base);
  }
  for (std::size_t lane = base; lane < n; ++lane) {
    std::uint16_t one[9];
    for (int k = 0; k < 9; ++k) one[k] = x[k * n + lane];
    scalar::pencil_rank_batch(t, one, 1, p, out + lane);
  }
}

TRIVEC_AVX2 void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(a, b));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

TRIVEC_AVX2 bool bits_intersect(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(x, y)) return true;
  }
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

}  // namespace trivec::kernels::avx2
