#pragma once

// Common zeros of small polynomial systems over finite fields and their
// extensions: resultant elimination, root finding, brute force as fallback.

#include <vector>

#include "trivec/algebra/field.hpp"
#include "trivec/algebra/multipoly.hpp"

namespace trivec {

// F_{q^d} for q = |K|, built over F_p with the default modulus; cached.
FiniteField extension_field(const FiniteField& K, unsigned d);

// Ring embedding K -> L (same characteristic, deg K | deg L).
class FieldEmbedding {
 public:
  FieldEmbedding(const FiniteField& from, const FiniteField& to);
  u64 operator()(u64 a) const;
  const FiniteField& source() const { return from_; }
  const FiniteField& target() const { return to_; }

 private:
  FiniteField from_, to_;
  std::vector<u64> root_powers_;  // images of 1, r, r^2, ... for the generator r of the source
};

// degree over K of the field generated by the coordinates (which live in L)
unsigned degree_over(const FiniteField& L, const FiniteField& K, const std::vector<u64>& coords);

struct Solution {
  FiniteField field;          // F_{q^d}
  std::vector<u64> coords;    // one entry per variable
  unsigned degree = 1;        // minimal field of definition, as extension degree over the base
};

struct SolveOptions {
  u64 budget = 20'000'000;  // cap on brute-force enumeration steps
};

std::vector<Solution> singular_point_search(const std::vector<MultiPoly<FiniteField>>& system, const FiniteField& K,
                                            unsigned max_ext_degree, const SolveOptions& opt = {});
// rationals are rejected: searching over extensions is undefined there
std::vector<Solution> singular_point_search(const std::vector<MultiPoly<Rationals>>& system, const Rationals& K,
                                            unsigned max_ext_degree, const SolveOptions& opt = {});

// All common zeros in L^n of a system already written over L.
std::vector<std::vector<u64>> solve_over(const std::vector<MultiPoly<FiniteField>>& system, const FiniteField& L,
                                         const SolveOptions& opt = {});

}  // namespace trivec
