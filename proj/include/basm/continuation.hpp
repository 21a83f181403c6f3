#pragma once

// Analytic continuation of boundary lengths and identity terms along paths
// in the Schottky families, and the resulting monodromy.

#include <optional>
#include <string>
#include <vector>

#include "basm/crossratio.hpp"
#include "basm/dimension.hpp"
#include "basm/identity.hpp"
#include "basm/reps.hpp"
#include "basm/words.hpp"

namespace basm {

/// Path of the complex parameter L over t in [0, 1].
struct LPath {
  enum class Kind { circle, polyline };
  Kind kind = Kind::circle;
  Complex center{0.0, 0.0};
  double radius = 5.0;
  double turns = 1.0;
  std::vector<Complex> points;  // polyline vertices, uniform in t per segment

  Complex at(double t) const;
  bool closed() const;
};

struct PathSpec {
  std::string family = "schottky";  // "schottky" or "schottky_prime"
  bool compose_iota = false;
  LPath L_path;
  int samples = 256;
  int refine_budget = 1 << 14;
  /// Traverse t -> 1 - t.
  bool reversed = false;

  Complex L_at(double t) const;
  std::string label() const;
};

Representation representation_at(const PathSpec& spec, Complex L, Complex root);

struct Quantity {
  enum class Kind { boundary_length, term };
  Kind kind = Kind::term;
  std::size_t j = 0;  // boundary index for lengths
  TermKey key;        // for terms
  std::string id() const;
};

struct TrackStart {
  /// Root of x^2 + Lx + 1 at t = 0; default: the one inside the unit disk.
  std::optional<Complex> root;
  /// Starting branch per quantity; default: principal logs.
  std::vector<Complex> values;
};

struct TrackOptions {
  double spectral_tol = 1e-6;
  /// Samples are evaluated in long double (64-bit mantissa). This is the
  /// double-precision threshold 1e-12 moved down by the ratio of the two
  /// machine epsilons.
  double transversality_tol = 5e-16;
  /// Below this relative modulus gap eigenvalues are paired by proximity.
  double pairing_guard = 1e-3;
  /// Below this relative modulus gap the path has left the domain.
  double pairing_fail = 1e-6;
};

struct BranchTrack {
  std::string id;
  std::vector<double> t;
  std::vector<Complex> values;  // unwrapped logs at the base samples
  double winding = 0;           // (Im end - Im start) / 2 pi
};

struct PathPoint {
  double t = 0;
  Complex L;
  Complex root;
};

struct TrackResult {
  std::vector<PathPoint> base;
  std::vector<BranchTrack> tracks;
  int evaluations = 0;
  int accepted_steps = 0;
};

/// Continues every quantity on one shared adaptive grid. Throws
/// PathLeavesDomain, RefinementBudgetExceeded.
TrackResult track(const PathSpec& spec, const BoundaryConfig& bc, const std::vector<Quantity>& quantities,
                  const TrackStart& start = {}, const TrackOptions& opt = {});
BranchTrack track(const PathSpec& spec, const BoundaryConfig& bc, const Quantity& quantity,
                  std::optional<Complex> initial_branch = std::nullopt, const TrackOptions& opt = {});

/// Boundary lengths followed by every RedLex term with |w| <= N, in
/// (j, q, ShortLex) order.
std::vector<Quantity> identity_quantities(const BoundaryConfig& bc, int N, const LetterOrder& ord);

struct TermWinding {
  TermKey key;
  double winding = 0;
  long long monodromy = 0;
};

struct MonodromyRow {
  std::string word;
  double winding = 0;      // summed over (j, q)
  long long monodromy = 0; // units of 2 pi i
};

struct MonodromyTable {
  std::string label;
  int max_word_len = 0;
  std::vector<MonodromyRow> rows;  // every word with a term, ShortLex order
  std::vector<TermWinding> terms;
  std::vector<long long> boundary;  // per boundary length
  long long total = 0;              // sum over rows
  long long boundary_total = 0;
  bool consistent = false;          // total == boundary_total
  double max_integrality_error = 0;
  /// Nonzero monodromy at the maximal tracked length.
  std::vector<std::string> violations;
  int evaluations = 0;

  /// Monodromy of a row in units of 2 pi i; 0 when the word has no term.
  long long of(const std::string& word) const;
};

struct ContinuationOptions {
  TrackOptions track;
  LetterOrder order = LetterOrder::standard(2);
};

/// Equal per-word monodromies and boundary monodromies.
bool same_monodromy(const MonodromyTable& lhs, const MonodromyTable& rhs);

/// The path must be closed, both as an L-path and as representations.
MonodromyTable loop_monodromy(const PathSpec& spec, const BoundaryConfig& bc, int N,
                              const ContinuationOptions& opt = {});

struct SampleReport {
  double t = 0;
  Complex L;
  IdentityReport report;
  double dimension = 0;
  double dimension_halfwidth = 0;
};

struct ContinuedIdentity {
  std::vector<SampleReport> samples;
  TrackResult track;
  std::optional<MonodromyTable> table;  // closed paths only
};

struct ContinuedIdentityOptions {
  ContinuationOptions continuation;
  IdentityOptions identity;
  /// Word length for the dimension gate at every reported sample.
  int dimension_len = 8;
  double margin = 0.05;
  /// Report every k-th base sample (the last sample is always reported).
  int report_every = 1;
};

/// Identity reports along the path with continued branches. Throws
/// DomainViolation at the first reported sample failing the dimension gate.
ContinuedIdentity continued_identity(const PathSpec& spec, const BoundaryConfig& bc, int N, double tol,
                                     const ContinuedIdentityOptions& opt = {});

}  // namespace basm
