#pragma once

// Level sums of singular-value ratios, critical exponent estimation and the
// dimension-below-one gate.

#include <string>
#include <vector>

#include "basm/reps.hpp"

namespace basm {

/// log(sigma_2 / sigma_1) of every reduced word, grouped by length 0..N.
struct LevelData {
  int N = 0;
  int rank = 2;
  std::vector<std::vector<double>> log_ratios;
};

LevelData collect_levels(const Representation& rep, int N, unsigned threads = 0);

struct LevelSums {
  double s = 0;
  /// sums[m - 1] = L_m for m = 1..N.
  std::vector<double> sums;
};

LevelSums level_sums(const LevelData& data, double s);
LevelSums level_sums(const Representation& rep, double s, int N, unsigned threads = 0);

struct ExponentEstimate {
  double h = 0;
  double confidence_halfwidth = 0;
  int N = 0;
  std::string method;
  double h_previous = 0;  // same estimator at N - 2
  double slope_stderr = 0;
  /// Per-level growth log(L_{m+1} / L_m) at s = h.
  std::vector<double> growth_at_h;
};

/// Fitted log-growth of L_m(s) over m in [ceil(N/2), N].
double growth_slope(const LevelData& data, double s, int N, double* stderr_out = nullptr);

/// Throws NonHyperbolicData if the fitted growth is not decreasing in s on
/// the probe grid or has no root in [0, 2].
ExponentEstimate critical_exponent(const LevelData& data, double tol = 1e-10);
ExponentEstimate critical_exponent(const Representation& rep, int N, double tol = 1e-10, unsigned threads = 0);

struct GateResult {
  bool inside = false;
  ExponentEstimate estimate;
  /// Set when the level data are not hyperbolic; inside is false then.
  bool non_hyperbolic = false;
  std::string note;
};

/// inside iff h + halfwidth < 1 - margin.
GateResult in_S_less1(const LevelData& data, double margin);
GateResult in_S_less1(const Representation& rep, int N, double margin, unsigned threads = 0);

}  // namespace basm
