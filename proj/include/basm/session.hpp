#pragma once

// Batch session configuration: JSON in, JSON out, validated field by field.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "basm/continuation.hpp"
#include "basm/identity.hpp"
#include "basm/reps.hpp"
#include "basm/words.hpp"

namespace basm {

struct RepresentationConfig {
  std::string family = "schottky";  // explicit | schottky | schottky_prime
  int n = 2;                        // dimension after the optional embedding
  int rank = 2;
  std::vector<CMatrix> matrices;    // explicit family only
  Complex L{5.0, 0.0};
  bool compose_iota = false;
  /// Root of x^2 + Lx + 1 to start from; default is the one inside the unit disk.
  std::optional<Complex> root;

  friend bool operator==(const RepresentationConfig&, const RepresentationConfig&) = default;
};

struct ToleranceConfig {
  double identity = 1e-6;
  double spectral = 1e-6;
  double transversality = 1e-12;
  double track_transversality = TrackOptions{}.transversality_tol;
  double margin = 0.05;

  friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

struct PathConfig {
  std::string kind = "circle";  // circle | polyline
  Complex center{0.0, 0.0};
  double radius = 5.0;
  double turns = 1.0;
  std::vector<Complex> points;
  int samples = 256;
  int refine_budget = 1 << 14;
  bool reversed = false;
  /// Identity report every k-th base sample of the monodromy log.
  int report_every = 16;
  /// Word length of the dimension gate along the path.
  int dimension_len = 8;

  friend bool operator==(const PathConfig&, const PathConfig&) = default;
};

struct OutputConfig {
  std::string dir = "out";
  std::string format = "csv";  // csv | json

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct SessionConfig {
  RepresentationConfig representation;
  /// Either a preset name or explicit words; words win when both are given.
  std::string boundary_preset = "torus";
  std::vector<std::string> boundary_words;
  std::string letter_order = "aAbB";
  int max_word_len = 8;
  int horizon = 3;
  /// Word length of the dimension command.
  int dimension_len = 12;
  /// 1-based boundary indices for the gaps command; empty means all.
  std::vector<int> gap_boundaries;
  ToleranceConfig tolerances;
  std::optional<PathConfig> path;
  OutputConfig output;
  unsigned threads = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SessionConfig&, const SessionConfig&) = default;

  BoundaryConfig boundary() const;
  LetterOrder order() const;
  Representation build_representation() const;
  IdentityOptions identity_options() const;
  /// Throws ConfigError unless a path is configured for a Schottky family.
  PathSpec path_spec() const;
};

/// Throws ConfigError naming the offending field, or the line and column of
/// a JSON syntax error.
SessionConfig parse_config(const std::string& json_text);
SessionConfig load_config(const std::string& path);
/// Pretty-printed JSON with every field present; parse_config inverts it.
std::string serialize_config(const SessionConfig& config);

/// Cross-field checks (family/matrix shapes, ranges); throws ConfigError.
void validate(const SessionConfig& config);

}  // namespace basm
