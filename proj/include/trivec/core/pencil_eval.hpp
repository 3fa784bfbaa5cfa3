#pragma once

// Rank of Phi at many points of P^8(F_q), indexed as in projective.hpp.
// Prime fields below 256 go through the batched SIMD kernel, everything else
// through a stack-allocated elimination.

#include <cstdint>
#include <vector>

#include "trivec/core/trivector.hpp"
#include "trivec/kernels/kernels.hpp"

namespace trivec {

// rank of a 9x9 matrix; destroys a
int rank9(const FiniteField& f, u64 a[9][9]);

kernels::PencilTerms pencil_terms(const Trivector<FiniteField>& t);

class PencilRanker {
 public:
  explicit PencilRanker(const Trivector<FiniteField>& t);
  // ranks of points lo..lo+n-1; out has room for n
  void ranks(u64 lo, size_t n, std::uint8_t* out);
  bool simd() const { return simd_; }

 private:
  const Trivector<FiniteField>& t_;
  u64 q_;
  bool simd_;
  kernels::PencilTerms terms_{};
  std::vector<std::uint16_t> xs_;
};

}  // namespace trivec
