#pragma once

// JSON formats for trivectors, curves, matrices, cubics, flags and pencils.
// Elements are strings in the field's own notation.

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "trivec/algebra/field.hpp"
#include "trivec/algebra/matrix.hpp"
#include "trivec/core/trivector.hpp"
#include "trivec/flags/flags.hpp"
#include "trivec/loci/loci.hpp"

namespace trivec::io {

using json = nlohmann::json;

// Parses text; malformed input throws InvalidInput naming source, line and column.
json parse_json(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

using AnyTrivector = std::variant<Trivector<FiniteField>, Trivector<Rationals>>;
using AnyCurve = std::variant<CurveCoeffs<FiniteField>, CurveCoeffs<Rationals>>;

template <Field F>
std::string field_name(const F& f) {
  if constexpr (is_finite_field_v<F>)
    return f.spec();
  else
    return "Q";
}

template <Field F>
typename F::Element element_from_json(const F& f, const json& j) {
  if (j.is_string()) return f.parse(j.get<std::string>());
  if (j.is_number_integer()) return f.parse(std::to_string(j.get<long long>()));
  fail(Errc::invalid_input, "field element must be a string or an integer, got " + j.dump());
}

template <Field F>
json trivector_to_json(const Trivector<F>& t) {
  json terms = json::array();
  const F& f = t.field();
  for (int s = 0; s < kTriples; ++s) {
    if (f.is_zero(t[s])) continue;
    const auto& tr = triples()[s];
    terms.push_back({{"ijk", {tr.i + 1, tr.j + 1, tr.k + 1}}, {"c", f.to_string(t[s])}});
  }
  return {{"field", field_name(f)}, {"terms", terms}};
}

template <Field F>
Trivector<F> trivector_from_json(const F& f, const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    fail(Errc::invalid_input, "trivector JSON needs a \"terms\" array");
  Trivector<F> t(f);
  std::vector<bool> seen(kTriples, false);
  for (const auto& term : j["terms"]) {
    if (!term.contains("ijk") || !term["ijk"].is_array() || term["ijk"].size() != 3 || !term.contains("c"))
      fail(Errc::invalid_input, "trivector term needs \"ijk\" (3 labels) and \"c\": " + term.dump());
    const int i = term["ijk"][0].get<int>(), k1 = term["ijk"][1].get<int>(), k2 = term["ijk"][2].get<int>();
    if (!(1 <= i && i < k1 && k1 < k2 && k2 <= 9))
      fail(Errc::invalid_input, "trivector labels must satisfy 1 <= i < j < k <= 9: " + term["ijk"].dump());
    const int s = triple_slot(i - 1, k1 - 1, k2 - 1);
    if (seen[s]) fail(Errc::invalid_input, "repeated trivector monomial " + term["ijk"].dump());
    seen[s] = true;
    t[s] = element_from_json(f, term["c"]);
  }
  return t;
}

AnyField field_from_json(const json& j);
AnyTrivector any_trivector_from_json(const json& j);

template <Field F>
json curve_to_json(const CurveCoeffs<F>& c) {
  json co = json::object();
  for (int i = 0; i < 8; ++i)
    if (!c.field.is_zero(c.c[i])) co[std::to_string(kCurveWeights[i])] = c.field.to_string(c.c[i]);
  return {{"field", field_name(c.field)}, {"c", co}};
}

template <Field F>
CurveCoeffs<F> curve_from_json(const F& f, const json& j) {
  CurveCoeffs<F> c(f);
  if (!j.contains("c")) return c;
  if (!j["c"].is_object()) fail(Errc::invalid_input, "curve JSON \"c\" must be an object keyed by weight");
  for (const auto& [key, val] : j["c"].items()) {
    int w = 0;
    try {
      w = std::stoi(key);
    } catch (const std::exception&) {
      fail(Errc::invalid_input, "curve coefficient key is not a weight: " + key);
    }
    c(w) = element_from_json(f, val);
  }
  return c;
}

AnyCurve any_curve_from_json(const json& j);

template <Field F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (size_t k = 0; k < m.cols(); ++k) r.push_back(m.field().to_string(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

// row-major array of rows
template <Field F>
Matrix<F> matrix_from_json(const F& f, const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail(Errc::invalid_input, "matrix must be an array of rows");
  const size_t r = j.size(), c = j[0].size();
  Matrix<F> m(f, r, c);
  for (size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) fail(Errc::invalid_input, "matrix rows have different lengths");
    for (size_t k = 0; k < c; ++k) m(i, k) = element_from_json(f, j[i][k]);
  }
  return m;
}

json cubic_to_json(const CubicForm<FiniteField>& c);
CubicForm<FiniteField> cubic_from_json(const json& j);

json flag_to_json(const Flag1368<FiniteField>& fl);
Flag1368<FiniteField> flag_from_json(const FiniteField& f, const json& j);

// {"field": ..., "matrices": [nine 9x9 matrices]}
template <Field F>
json pencil_to_json(const std::vector<Matrix<F>>& W) {
  json ms = json::array();
  for (const auto& m : W) ms.push_back(matrix_to_json(m));
  return {{"field", field_name(W.at(0).field())}, {"matrices", ms}};
}

template <Field F>
std::vector<Matrix<F>> pencil_from_json(const F& f, const json& j) {
  if (!j.contains("matrices") || !j["matrices"].is_array()) fail(Errc::invalid_input, "pencil JSON needs \"matrices\"");
  std::vector<Matrix<F>> W;
  for (const auto& m : j["matrices"]) W.push_back(matrix_from_json(f, m));
  return W;
}

}  // namespace trivec::io
