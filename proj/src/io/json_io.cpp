#include "trivec/io/json_io.hpp"

#include <fstream>
#include <sstream>

namespace trivec::io {

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column (1-based)
    const size_t pos = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    size_t line = 1, col = 1;
    for (size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(Errc::invalid_input,
         "malformed JSON in " + source + " at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_input, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_input, "cannot write " + path);
  out << j.dump(2) << "\n";
}

AnyField field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j["field"].is_string())
    fail(Errc::invalid_input, "JSON object needs a \"field\" string");
  return parse_field(j["field"].get<std::string>());
}

AnyTrivector any_trivector_from_json(const json& j) {
  return std::visit([&](const auto& f) -> AnyTrivector { return trivector_from_json(f, j); }, field_from_json(j));
}

AnyCurve any_curve_from_json(const json& j) {
  return std::visit([&](const auto& f) -> AnyCurve { return curve_from_json(f, j); }, field_from_json(j));
}

json cubic_to_json(const CubicForm<FiniteField>& c) {
  json mons = json::array();
  const auto& exps = cubic_monomials();
  for (size_t m = 0; m < exps.size(); ++m) {
    if (!c.coeffs[m]) continue;
    mons.push_back({{"exp", exps[m]}, {"c", c.field.to_string(c.coeffs[m])}});
  }
  return {{"field", c.field.spec()}, {"monomials", mons}};
}

CubicForm<FiniteField> cubic_from_json(const json& j) {
  auto any = field_from_json(j);
  if (!std::holds_alternative<FiniteField>(any)) fail(Errc::unsupported_field, "cubic forms live over finite fields");
  const FiniteField f = std::get<FiniteField>(any);
  const auto& exps = cubic_monomials();
  CubicForm<FiniteField> c{f, std::vector<u64>(exps.size(), 0)};
  if (!j.contains("monomials") || !j["monomials"].is_array()) fail(Errc::invalid_input, "cubic JSON needs \"monomials\"");
  for (const auto& m : j["monomials"]) {
    auto e = m.at("exp").get<Exponent>();
    auto it = std::find(exps.begin(), exps.end(), e);
    if (it == exps.end()) fail(Errc::invalid_input, "not a cubic monomial: " + m.at("exp").dump());
    c.coeffs[it - exps.begin()] = element_from_json(f, m.at("c"));
  }
  return c;
}

json flag_to_json(const Flag1368<FiniteField>& fl) {
  return {{"field", fl.field().spec()},
          {"F1", matrix_to_json(fl.F1)},
          {"F3", matrix_to_json(fl.F3)},
          {"F6", matrix_to_json(fl.F6)},
          {"F8", matrix_to_json(fl.F8)}};
}

Flag1368<FiniteField> flag_from_json(const FiniteField& f, const json& j) {
  for (const char* k : {"F1", "F3", "F6", "F8"})
    if (!j.contains(k)) fail(Errc::invalid_input, std::string("flag JSON lacks \"") + k + "\"");
  return make_flag(matrix_from_json(f, j["F1"]), matrix_from_json(f, j["F3"]), matrix_from_json(f, j["F6"]),
                   matrix_from_json(f, j["F8"]));
}

}  // namespace trivec::io
