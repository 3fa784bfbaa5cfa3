#pragma once

// Indexing of P^{n-1}(F_q) for finite fields whose elements are the codes
// 0..q-1. Index order: the leading 1 moves right, the tail counts in base q.

#include <cstdint>
#include <vector>

#include "trivec/algebra/field.hpp"
#include "trivec/algebra/solve.hpp"
#include "trivec/core/trivector.hpp"

namespace trivec {

// (q^n - 1)/(q - 1); throws BudgetExceeded past 2^62
u64 proj_space_size(u64 q, unsigned n);

// writes the canonical representative of point `idx` into out[0..n)
void proj_point_from_index(u64 idx, u64 q, unsigned n, u64* out);

// inverse of the above for a canonical vector
u64 proj_index_of(const u64* v, u64 q, unsigned n);

// Canonicalize in place (first nonzero -> 1); false for the zero vector.
bool canonicalize(const FiniteField& f, std::vector<u64>& v);

// Image of t under a field embedding K -> L.
Trivector<FiniteField> embed_trivector(const Trivector<FiniteField>& t, const FieldEmbedding& emb);
Matrix<FiniteField> embed_matrix(const Matrix<FiniteField>& m, const FieldEmbedding& emb);

}  // namespace trivec
