#pragma once

// Small dense complex linear algebra: products, compounds, spectra with
// modulus ordering, singular-value ratios, projective lines and hyperplanes.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace basm {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n)) {}
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(int n);
  static CMatrix diagonal(std::span<const Complex> d);

  int n() const { return n_; }
  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  Complex operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  Complex* data() { return a_.data(); }
  const Complex* data() const { return a_.data(); }

  CMatrix transpose() const;
  CMatrix adjoint() const;
  Complex trace() const;
  Complex det() const;
  /// Gaussian elimination with partial pivoting.
  CMatrix inverse() const;
  double frobenius_norm() const;
  double max_abs() const;
  CMatrix scaled(Complex c) const;
  /// Divides by the principal n-th root of the determinant.
  CMatrix det1_lift() const;
  bool is_real(double tol) const;

  CVector apply(std::span<const Complex> v) const;
  /// Row covector times matrix.
  CVector apply_left(std::span<const Complex> phi) const;

  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
  friend CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs);
  friend CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

/// out = lhs * rhs; out must not alias either factor and must already have size n.
void multiply_into(const CMatrix& lhs, const CMatrix& rhs, CMatrix& out);

/// Largest entrywise modulus of lhs - rhs.
double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs);

/// Second exterior power on the basis e_i ^ e_j, i < j, in lexicographic order.
CMatrix compound2(const CMatrix& a);
/// Coordinates of u ^ v on the same basis.
CVector wedge(std::span<const Complex> u, std::span<const Complex> v);
/// Bilinear pairing <phi ^ psi, u ^ v> = phi(u) psi(v) - phi(v) psi(u), both given by
/// wedge coordinates.
Complex wedge_pair(std::span<const Complex> covectors, std::span<const Complex> vectors);

double norm(std::span<const Complex> v);
CVector normalized(std::span<const Complex> v);
/// Plain bilinear contraction sum_i phi_i v_i.
Complex contract(std::span<const Complex> phi, std::span<const Complex> v);

struct EigenSystem {
  /// Sorted by decreasing modulus.
  std::vector<Complex> values;
  std::vector<CVector> right;
  /// left[i] * A = values[i] * left[i]
  std::vector<CVector> left;
  double gap_1 = 0;  // |l2| / |l1|
  double gap_n = 0;  // |ln| / |l(n-1)|
};

/// Eigenvalues only, sorted by decreasing modulus.
std::vector<Complex> eigenvalues(const CMatrix& a);

/// Throws DegenerateSpectrum when gap_1 or gap_n exceeds 1 - tol.
EigenSystem eigensystem(const CMatrix& a, double tol = 1e-6);

/// Eigenvector for a known eigenvalue by inverse iteration; unit norm.
CVector right_eigenvector(const CMatrix& a, Complex lambda);
CVector left_eigenvector(const CMatrix& a, Complex lambda);

/// sigma_2 / sigma_1; scale invariant.
double singular_ratio(const CMatrix& a);
/// Same, with an independently accumulated second compound of a. Long
/// products keep sigma_1 sigma_2 accurate this way.
double singular_ratio(const CMatrix& a, const CMatrix& compound);
/// Largest eigenvalue of a Hermitian matrix.
double hermitian_max_eigenvalue(const CMatrix& h);

class ProjLine {
 public:
  ProjLine() = default;
  /// Stores v / |v|; throws std::invalid_argument for the zero vector.
  explicit ProjLine(std::span<const Complex> v);
  const CVector& rep() const { return v_; }
  int n() const { return static_cast<int>(v_.size()); }

 private:
  CVector v_;
};

class ProjHyperplane {
 public:
  ProjHyperplane() = default;
  explicit ProjHyperplane(std::span<const Complex> covector);
  const CVector& covector() const { return phi_; }
  int n() const { return static_cast<int>(phi_.size()); }

 private:
  CVector phi_;
};

ProjLine apply(const CMatrix& a, const ProjLine& line);
Complex pair(const ProjHyperplane& phi, const ProjLine& omega);
/// Sine of the angle between the lines.
double grassmann_distance(const ProjLine& u, const ProjLine& v);
bool same_line(const ProjLine& u, const ProjLine& v, double tol);

}  // namespace basm
