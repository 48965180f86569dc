#ifndef HIWSIGN_ERROR_HPP
#define HIWSIGN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hiwsign {

enum class Errc {
  NonIntegralOffset,
  PrecisionExceeded,
  ParseError,
  InvalidLevel,
  NonCuspidal,
  BadCharacter,
  NotSquarefree,
  ZeroBase,
  NotCoprime,
  MissingCoefficient,
  NotExpandable,
  ZeroPolynomial,
  SamePrime,
  NotInSubgroup,
  OutOfRange,
  LengthMismatch,
  InvalidArgument,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NonIntegralOffset: return "NonIntegralOffset";
    case Errc::PrecisionExceeded: return "PrecisionExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidLevel: return "InvalidLevel";
    case Errc::NonCuspidal: return "NonCuspidal";
    case Errc::BadCharacter: return "BadCharacter";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::ZeroBase: return "ZeroBase";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::MissingCoefficient: return "MissingCoefficient";
    case Errc::NotExpandable: return "NotExpandable";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::SamePrime: return "SamePrime";
    case Errc::NotInSubgroup: return "NotInSubgroup";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure
/// class; `what()` carries a human-readable detail prefixed by the class name.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hiwsign

#endif  // HIWSIGN_ERROR_HPP
