#pragma once

// Cross ratios of two hyperplanes and two lines, identity terms and periods.

#include <cstddef>
#include <vector>

#include "basm/matrices.hpp"
#include "basm/reps.hpp"
#include "basm/words.hpp"

namespace basm {

/// Summation index of the identity: boundary indices (0-based) and a RedLex word.
struct TermKey {
  std::size_t j = 0;
  std::size_t q = 0;
  Word w;
  friend bool operator==(const TermKey&, const TermKey&) = default;
};

/// phi(omega) phi'(omega') / (phi(omega') phi'(omega)). Throws
/// TransversalityFailure when a denominator pairing of the unit
/// representatives falls below threshold.
Complex fgw_cross_ratio(const ProjHyperplane& phi, const ProjHyperplane& phi_prime, const ProjLine& omega,
                        const ProjLine& omega_prime, double threshold = 1e-12);

/// log(1 + z) without cancellation for small z.
Complex log1p(Complex z);

struct TermSample {
  Complex value;        // principal log of the cross ratio
  Complex cross_ratio;  // the cross ratio itself
  double min_pairing;   // smallest unit-normalized pairing among the four
  double distance;      // sine of the angle between the two translated lines
};

/// Precomputed boundary flags for batch term evaluation.
class TermEvaluator {
 public:
  TermEvaluator(std::vector<FlagData> boundary_flags, double transversality_tol = 1e-12);
  TermEvaluator(const Representation& rep, const BoundaryConfig& bc, double spectral_tol = 1e-6,
                double transversality_tol = 1e-12);

  /// Term for (j, q) at the element with image m. When the second compound of
  /// m is supplied, the difference C - 1 is computed from exterior products,
  /// which keeps tiny terms accurate to full relative precision.
  TermSample evaluate(std::size_t j, std::size_t q, const CMatrix& m, const CMatrix* compound) const;

  const std::vector<FlagData>& flags() const { return flags_; }

 private:
  std::vector<FlagData> flags_;
  std::vector<CVector> hyperplane_wedges_;  // plus ^ minus hyperplane per boundary
  std::vector<CVector> line_wedges_;        // plus ^ minus line per boundary
  double tol_;
};

Complex identity_term(const Representation& rep, const BoundaryConfig& bc, const TermKey& key,
                      double spectral_tol = 1e-6, double transversality_tol = 1e-12);

/// log of the cross ratio (gamma+, gamma-, x, gamma x). Throws
/// TransversalityFailure when x is (numerically) a fixed line of gamma.
Complex complex_period(const Representation& rep, const Word& gamma, const ProjLine& x,
                       double spectral_tol = 1e-6, double transversality_tol = 1e-12);

}  // namespace basm
