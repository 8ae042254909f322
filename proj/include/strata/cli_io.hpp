#ifndef STRATA_CLI_IO_HPP
#define STRATA_CLI_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "strata/dh_volume.hpp"
#include "strata/error.hpp"

namespace strata {

inline constexpr const char* kToolName = "strata";
inline constexpr const char* kToolVersion = "0.1.0";

/// Polytope {A x <= b} with the subtorus inclusion B (n x k).
struct ToricSpec {
  std::string name;
  HPolytope polytope;
  RatMat B;
};

/// Members given by the vertex lists of their closures.
struct CoverSpec {
  std::string name;
  PiecewiseAffineCover cover;
};

using InputSpec = std::variant<ToricSpec, CoverSpec>;

/// Parses a toric or cover input file. Throws ParseError.
InputSpec parse_input(const std::string& text);
std::string serialize_input(const InputSpec& spec);

struct Provenance {
  std::string input_sha256;
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string command;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  bool formal = false;  // polytope failed the Delzant check

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct StratificationFile {
  Stratification stratification;
  std::map<std::size_t, DensityPoly> densities;  // by stratum id
  Provenance provenance;

  friend bool operator==(const StratificationFile&, const StratificationFile&) = default;
};

/// Deterministic JSON text; rationals are "p/q" strings.
std::string serialize(const StratificationFile& file);
/// Inverse of serialize; every derived field is recomputed and checked. Throws ParseError.
StratificationFile parse_stratification(const std::string& text);

/// True when the text is a stratification file rather than an input spec.
bool is_stratification_file(const std::string& text);

std::string serialize_report(const ValidationReport& report, const PiecewiseAffineCover& cover);

/// SVG 1.1 drawing of a stratification of R^2 or R^1; coordinates use nine
/// fixed decimals. Throws UnsupportedDimension otherwise.
std::string render_svg(const StratificationFile& file);

std::string sha256_hex(const std::string& bytes);

/// Exit code for a failure of the given kind: 2 bad input, 3 invalid cover,
/// 4 failed soundness check, 5 interpolation failure, 6 unsupported dimension.
int exit_code(ErrorKind kind);

}  // namespace strata

#endif
