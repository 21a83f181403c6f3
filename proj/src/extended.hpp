#pragma once

// Long double arithmetic for path samples of the Schottky families (n <= 3).
// Along some loops the symmetric-square pairings drop to ~1e-15, which double
// rounding cannot resolve.

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "basm/matrices.hpp"
#include "basm/words.hpp"

namespace basm::ext {

using XComplex = std::complex<long double>;
using XVector = std::vector<XComplex>;

class XMatrix {
 public:
  XMatrix() = default;
  explicit XMatrix(int n) : n_(n) {}
  static XMatrix identity(int n);

  int n() const { return n_; }
  XComplex& operator()(int i, int j) { return a_[static_cast<std::size_t>(3 * i + j)]; }
  XComplex operator()(int i, int j) const { return a_[static_cast<std::size_t>(3 * i + j)]; }

  XMatrix transpose() const;
  XVector apply(const XVector& v) const;
  CMatrix to_double() const;

  friend XMatrix operator*(const XMatrix& lhs, const XMatrix& rhs);

 private:
  int n_ = 0;
  std::array<XComplex, 9> a_{};
};

XMatrix compound2(const XMatrix& a);
XVector wedge(const XVector& u, const XVector& v);
XComplex contract(const XVector& phi, const XVector& v);
long double norm(const XVector& v);
XVector normalized(const XVector& v);

/// Newton refinement of an eigenvalue guess on the characteristic polynomial.
XComplex polish_eigenvalue(const XMatrix& m, XComplex guess);
/// Null vector of m - lambda from the best-conditioned row combination.
XVector right_eigenvector(const XMatrix& m, XComplex lambda);
XVector left_eigenvector(const XMatrix& m, XComplex lambda);

XComplex log1p(XComplex z);

/// Generator images (indexed by letter code) and their second compounds.
class XRepresentation {
 public:
  /// family is "schottky" or "schottky_prime"; root is the double root of
  /// x^2 + Lx + 1 on the wanted sheet and is refined here.
  XRepresentation(const std::string& family, Complex L, Complex root, bool compose_iota);

  int n() const { return n_; }
  XMatrix product(std::span<const Letter> w) const;
  XMatrix compound_product(std::span<const Letter> w) const;

 private:
  int n_ = 2;
  std::vector<XMatrix> images_;
  std::vector<XMatrix> compounds_;
};

}  // namespace basm::ext
