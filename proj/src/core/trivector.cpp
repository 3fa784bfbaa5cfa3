#include "trivec/core/trivector.hpp"

namespace trivec {

namespace {

struct Tables {
  std::array<Triple, kTriples> list{};
  int slot[kDim][kDim][kDim];
  std::array<std::array<std::array<ContractionTerm, 7>, kDim>, kDim> contraction{};

  Tables() {
    int n = 0;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) slot[i][j][k] = -1;
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j)
        for (int k = j + 1; k < kDim; ++k) {
          list[n] = Triple{std::uint8_t(i), std::uint8_t(j), std::uint8_t(k)};
          slot[i][j][k] = n++;
        }
    // i_x(e_i e_j e_k) = x_i e_j e_k - x_j e_i e_k + x_k e_i e_j, so the
    // coefficient of e_a e_b picks up sgn(m,a,b) t_{sort(m,a,b)} x_m
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) {
        if (a == b) continue;
        int e = 0;
        for (int m = 0; m < kDim; ++m) {
          if (m == a || m == b) continue;
          auto s = signed_slot_impl(m, a, b);
          contraction[a][b][e++] = ContractionTerm{std::uint8_t(m), std::int8_t(s.sign), std::uint8_t(s.slot)};
        }
      }
  }

  SignedSlot signed_slot_impl(int a, int b, int c) const {
    if (a == b || b == c || a == c) return {0, -1};
    int sign = 1;
    if (a > b) std::swap(a, b), sign = -sign;
    if (b > c) std::swap(b, c), sign = -sign;
    if (a > b) std::swap(a, b), sign = -sign;
    return {sign, slot[a][b][c]};
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

template <Field F>
HeisenbergInvariants<F> invariants_with(const F& f, const typename F::Element& zeta) {
  auto id = Matrix<F>::identity(f, kTriples);
  Matrix<F> stacked(f, 0, kTriples);
  for (const auto& g : heisenberg_generators(f, zeta)) stacked = vstack(stacked, wedge3(g) - id);
  HeisenbergInvariants<F> out;
  auto rk = rank_and_kernel(stacked);
  out.dimension = rk.kernel.size();
  out.basis = Matrix<F>::from_rows(f, rk.kernel, kTriples);
  out.zeta = zeta;
  return out;
}

}  // namespace

const std::array<Triple, kTriples>& triples() { return tables().list; }

int triple_slot(int i, int j, int k) {
  if (i < 0 || k >= kDim || !(i < j && j < k)) return -1;
  return tables().slot[i][j][k];
}

SignedSlot signed_slot(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || a >= kDim || b >= kDim || c >= kDim)
    fail(Errc::invalid_input, "trivector index out of range");
  return tables().signed_slot_impl(a, b, c);
}

const std::array<std::array<std::array<ContractionTerm, 7>, kDim>, kDim>& contraction_table() {
  return tables().contraction;
}

std::vector<int> flag_relabeling() { return {1, 3, 6, 2, 5, 8, 4, 7, 9}; }

HeisenbergInvariants<FiniteField> heisenberg_invariants(const FiniteField& f) {
  const u64 q = f.order();
  if (f.characteristic() == 3 || (q - 1) % 3 != 0)
    fail(Errc::no_cube_root, f.spec() + " has no primitive cube root of unity");
  auto zeta = f.pow(f.primitive_element(), (q - 1) / 3);
  return invariants_with(f, zeta);
}

HeisenbergInvariants<Rationals> heisenberg_invariants(const Rationals&) {
  fail(Errc::no_cube_root, "Q has no primitive cube root of unity");
}

}  // namespace trivec
