#ifndef STRATA_ERROR_HPP
#define STRATA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace strata {

enum class ErrorKind {
  DimensionMismatch,
  NonIntegralInput,
  RankDeficient,
  UnboundedPolytope,
  EmptyPolytope,
  PointOutsideSupport,
  InvalidCover,
  NonIntegrable,
  NonEffectiveAction,
  PointOutsideImage,
  EmptyFiber,
  NotTopDimensional,
  InterpolationInconsistent,
  DegenerateFiber,
  ParseError,
  UnsupportedDimension,
};

const char* to_string(ErrorKind kind);

/**
 * Every failure raised by the library carries one of the kinds above so the
 * CLI can map it onto an exit code without string matching.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonIntegralInput: return "NonIntegralInput";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::PointOutsideSupport: return "PointOutsideSupport";
    case ErrorKind::InvalidCover: return "InvalidCover";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::NonEffectiveAction: return "NonEffectiveAction";
    case ErrorKind::PointOutsideImage: return "PointOutsideImage";
    case ErrorKind::EmptyFiber: return "EmptyFiber";
    case ErrorKind::NotTopDimensional: return "NotTopDimensional";
    case ErrorKind::InterpolationInconsistent: return "InterpolationInconsistent";
    case ErrorKind::DegenerateFiber: return "DegenerateFiber";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

}  // namespace strata

#endif
