#ifndef NLW_CORE_ERROR_HPP
#define NLW_CORE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlw {

/// Failure categories surfaced by the library. Each maps to one documented
/// error of an operation; the CLI turns any of them into exit status 1.
enum class errc {
  dimension_mismatch,
  support_violation,
  invalid_argument,
  no_contraction,
  non_finite_field,
  singular_evaluation,
  alpha_out_of_range,
  zero_acceptance,
  unsupported_s,
  inadmissible_pair,
  under_resolved,
  unknown_key,
  type_error,
  constraint_violation,
  format_version_mismatch,
  checksum_mismatch,
  io_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::support_violation: return "SupportViolation";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::no_contraction: return "NoContraction";
    case errc::non_finite_field: return "NonFiniteField";
    case errc::singular_evaluation: return "SingularEvaluation";
    case errc::alpha_out_of_range: return "AlphaOutOfRange";
    case errc::zero_acceptance: return "ZeroAcceptance";
    case errc::unsupported_s: return "UnsupportedS";
    case errc::inadmissible_pair: return "InadmissiblePair";
    case errc::under_resolved: return "UnderResolved";
    case errc::unknown_key: return "UnknownKey";
    case errc::type_error: return "TypeError";
    case errc::constraint_violation: return "ConstraintViolation";
    case errc::format_version_mismatch: return "FormatVersionMismatch";
    case errc::checksum_mismatch: return "ChecksumMismatch";
    case errc::io_error: return "IoError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace nlw

#endif
