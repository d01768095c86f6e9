#pragma once

#include <stdexcept>
#include <string>

namespace curvedef {

enum class errc {
  invalid_input,
  hasse_arf_violation,
  out_of_range,
  non_integral_genus,
  no_such_cover,
  existence_failure,
  degree_too_small,
  internal_mismatch,
  not_weakly_ramified,
  work_limit_exceeded,
  domain_error,
  negative_b,
  negative_dimension,
  not_unipotent,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_input: return "InvalidInput";
    case errc::hasse_arf_violation: return "HasseArfViolation";
    case errc::out_of_range: return "OutOfRange";
    case errc::non_integral_genus: return "NonIntegralGenus";
    case errc::no_such_cover: return "NoSuchCover";
    case errc::existence_failure: return "ExistenceFailure";
    case errc::degree_too_small: return "DegreeTooSmall";
    case errc::internal_mismatch: return "InternalMismatch";
    case errc::not_weakly_ramified: return "NotWeaklyRamified";
    case errc::work_limit_exceeded: return "WorkLimitExceeded";
    case errc::domain_error: return "DomainError";
    case errc::negative_b: return "NegativeB";
    case errc::negative_dimension: return "NegativeDimension";
    case errc::not_unipotent: return "NotUnipotent";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace curvedef
