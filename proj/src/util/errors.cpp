#include "trivec/errors.hpp"

namespace trivec {

const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::invalid_input: return "InvalidInput";
    case Errc::not_skew: return "NotSkew";
    case Errc::odd_size: return "OddSize";
    case Errc::unsupported_field: return "UnsupportedField";
    case Errc::singular: return "Singular";
    case Errc::not_invertible: return "NotInvertible";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::kernel_dim_not_one: return "KernelDimNotOne";
    case Errc::weil_violation: return "WeilViolation";
    case Errc::singular_curve: return "SingularCurve";
    case Errc::certificate_failure: return "CertificateFailure";
    case Errc::degenerate_configuration: return "DegenerateConfiguration";
    case Errc::not_char_three: return "NotCharThree";
    case Errc::no_solution: return "NoSolution";
    case Errc::no_cube_root: return "NoCubeRoot";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::disagreement: return "Disagreement";
    case Errc::non_stable_input: return "NonStableInput";
  }
  return "Unknown";
}

}  // namespace trivec
