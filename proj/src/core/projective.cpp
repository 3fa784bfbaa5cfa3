#include "trivec/core/projective.hpp"

namespace trivec {

u64 proj_space_size(u64 q, unsigned n) {
  u64 total = 0, pw = 1;
  for (unsigned i = 0; i < n; ++i) {
    total += pw;
    if (i + 1 < n) {
      if (pw > (u64{1} << 62) / q) fail(Errc::budget_exceeded, "projective space too large to index");
      pw *= q;
    }
  }
  return total;
}

void proj_point_from_index(u64 idx, u64 q, unsigned n, u64* out) {
  // block i: leading one at position i, q^{n-1-i} points
  u64 block = 1;
  for (unsigned i = 0; i + 1 < n; ++i) block *= q;
  for (unsigned lead = 0; lead < n; ++lead) {
    if (idx < block) {
      for (unsigned j = 0; j < lead; ++j) out[j] = 0;
      out[lead] = 1;
      for (unsigned j = n; j-- > lead + 1;) {
        out[j] = idx % q;
        idx /= q;
      }
      return;
    }
    idx -= block;
    block /= q;
  }
  fail(Errc::invalid_input, "projective index out of range");
}

u64 proj_index_of(const u64* v, u64 q, unsigned n) {
  u64 block = 1;
  for (unsigned i = 0; i + 1 < n; ++i) block *= q;
  u64 base = 0;
  for (unsigned lead = 0; lead < n; ++lead) {
    if (v[lead] != 0) {
      u64 t = 0;
      for (unsigned j = lead + 1; j < n; ++j) t = t * q + v[j];
      return base + t;
    }
    base += block;
    block /= q;
  }
  fail(Errc::invalid_input, "zero vector has no projective index");
}

bool canonicalize(const FiniteField& f, std::vector<u64>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) {
      if (v[i] != 1) {
        const u64 inv = f.inv(v[i]);
        for (size_t j = i; j < v.size(); ++j) v[j] = f.mul(v[j], inv);
      }
      return true;
    }
  return false;
}

Trivector<FiniteField> embed_trivector(const Trivector<FiniteField>& t, const FieldEmbedding& emb) {
  Trivector<FiniteField> r(emb.target());
  for (int s = 0; s < kTriples; ++s) r[s] = emb(t[s]);
  return r;
}

Matrix<FiniteField> embed_matrix(const Matrix<FiniteField>& m, const FieldEmbedding& emb) {
  Matrix<FiniteField> r(emb.target(), m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = emb(m(i, j));
  return r;
}

}  // namespace trivec
