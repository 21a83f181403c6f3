#pragma once

// Both sides of the orthospectrum identity, tail estimate, residual gate and
// per-boundary gap tables.

#include <optional>
#include <string>
#include <vector>

#include "basm/crossratio.hpp"
#include "basm/reps.hpp"
#include "basm/words.hpp"

namespace basm {

struct IdentityOptions {
  /// Extra word lengths summed explicitly by the tail estimate.
  int horizon = 3;
  double spectral_tol = 1e-6;
  double transversality_tol = 1e-12;
  unsigned threads = 0;
  /// Defaults to the standard order of the boundary rank.
  std::optional<LetterOrder> order;
};

struct Term {
  TermKey key;
  Complex value;
  double singular_ratio = 0;
  double min_pairing = 0;
  double distance = 0;
};

struct TermTable {
  Complex sum;
  /// Sorted by (j, q), then ShortLex on the word.
  std::vector<Term> terms;
  /// Sum of terms per word length 0..N.
  std::vector<Complex> level_sums;
};

struct TailDiagnostics {
  double delta_hat = 0;  // smallest normalized transversality pairing seen
  double c_log = 0;      // max of |term| / distance and its inverse, |w| >= 4
  double c_hat = 0;      // (2 / delta_hat) * c_log
  std::vector<double> level_sums;  // singular-ratio sums at N+1 .. N+H
  double decay_ratio = 0;          // fitted per-level ratio
  double extrapolated = 0;         // geometric remainder beyond N+H
};

struct IdentityReport {
  Complex lhs;
  Complex rhs_partial;
  std::vector<Term> terms;
  std::vector<Complex> level_term_sums;
  int max_word_len = 0;
  double tail_estimate = 0;
  TailDiagnostics tail;
  Complex residual;
  /// Distance from the residual to the nearest point of 2 pi i Z.
  double residual_mod = 0;
  bool real_locus = false;
  bool pass = false;
  /// Set when the tail could not be estimated (divergent regime).
  std::string error;
};

struct GapTable {
  std::size_t j = 0;
  std::vector<Term> gaps;
  Complex circle_length;
  Complex gap_sum;
  /// circle_length - gap_sum, real part.
  double deficit = 0;
  double tail_estimate = 0;
};

/// Distance from z to 2 pi i Z.
double distance_mod_2pi_i(Complex z);

Complex lhs(const Representation& rep, const BoundaryConfig& bc, double spectral_tol = 1e-6);

TermTable rhs_partial(const Representation& rep, const BoundaryConfig& bc, int max_word_len,
                      const IdentityOptions& opt = {});

/// Throws ExtrapolationUnstable when the fitted decay ratio is >= 1.
double tail_estimate(const Representation& rep, const BoundaryConfig& bc, int N, const IdentityOptions& opt = {},
                     TailDiagnostics* diagnostics = nullptr);

/// An ExtrapolationUnstable failure is reported in the result, not thrown.
IdentityReport verify(const Representation& rep, const BoundaryConfig& bc, int N, double tol,
                      const IdentityOptions& opt = {});

/// Requires a real representation.
GapTable gap_table(const Representation& rep, const BoundaryConfig& bc, std::size_t j, int N,
                   const IdentityOptions& opt = {});

}  // namespace basm
