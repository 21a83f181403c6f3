#include "basm/matrices.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "basm/errors.hpp"

namespace basm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::size_t idx(int n, int i, int j) { return static_cast<std::size_t>(i * n + j); }

}  // namespace

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(static_cast<int>(rows.size())) {
  a_.reserve(static_cast<std::size_t>(n_ * n_));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw std::invalid_argument("CMatrix must be square");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> d) {
  CMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

Complex CMatrix::trace() const {
  Complex s = 0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

Complex CMatrix::det() const {
  const CMatrix& m = *this;
  if (n_ == 1) return m(0, 0);
  if (n_ == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (n_ == 3) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
  std::vector<Complex> a(a_);
  Complex d = 1.0;
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    for (int i = k + 1; i < n_; ++i)
      if (std::abs(a[idx(n_, i, k)]) > std::abs(a[idx(n_, piv, k)])) piv = i;
    if (a[idx(n_, piv, k)] == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n_; ++j) std::swap(a[idx(n_, k, j)], a[idx(n_, piv, j)]);
      d = -d;
    }
    d *= a[idx(n_, k, k)];
    for (int i = k + 1; i < n_; ++i) {
      const Complex f = a[idx(n_, i, k)] / a[idx(n_, k, k)];
      for (int j = k; j < n_; ++j) a[idx(n_, i, j)] -= f * a[idx(n_, k, j)];
    }
  }
  return d;
}

CMatrix CMatrix::inverse() const {
  const int n = n_;
  CMatrix a(*this);
  CMatrix inv = identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) throw std::domain_error("singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    }
    const Complex p = 1.0 / a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) *= p;
      inv(k, j) *= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const Complex f = a(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

double CMatrix::frobenius_norm() const {
  double s = 0;
  for (const Complex& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0;
  for (const Complex& z : a_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix CMatrix::scaled(Complex c) const {
  CMatrix m(*this);
  for (Complex& z : m.a_) z *= c;
  return m;
}

CMatrix CMatrix::det1_lift() const {
  const Complex d = det();
  if (d == 0.0) throw std::domain_error("singular matrix has no det-1 lift");
  return scaled(1.0 / std::pow(d, 1.0 / n_));
}

bool CMatrix::is_real(double tol) const {
  return std::all_of(a_.begin(), a_.end(), [&](const Complex& z) { return std::abs(z.imag()) <= tol; });
}

CVector CMatrix::apply(std::span<const Complex> v) const {
  CVector out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    Complex s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

CVector CMatrix::apply_left(std::span<const Complex> phi) const {
  CVector out(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    Complex s = 0;
    for (int i = 0; i < n_; ++i) s += phi[static_cast<std::size_t>(i)] * (*this)(i, j);
    out[static_cast<std::size_t>(j)] = s;
  }
  return out;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  CMatrix out(lhs.n());
  multiply_into(lhs, rhs, out);
  return out;
}

CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs) {
  CMatrix out(lhs);
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += rhs.a_[i];
  return out;
}

CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs) {
  CMatrix out(lhs);
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= rhs.a_[i];
  return out;
}

void multiply_into(const CMatrix& lhs, const CMatrix& rhs, CMatrix& out) {
  const int n = lhs.n();
  const Complex* a = lhs.data();
  const Complex* b = rhs.data();
  Complex* c = out.data();
  if (n == 2) {
    c[0] = a[0] * b[0] + a[1] * b[2];
    c[1] = a[0] * b[1] + a[1] * b[3];
    c[2] = a[2] * b[0] + a[3] * b[2];
    c[3] = a[2] * b[1] + a[3] * b[3];
    return;
  }
  if (n == 3) {
    for (int i = 0; i < 3; ++i) {
      const Complex* ai = a + 3 * i;
      for (int j = 0; j < 3; ++j) c[3 * i + j] = ai[0] * b[j] + ai[1] * b[3 + j] + ai[2] * b[6 + j];
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex s = 0;
      for (int k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      c[i * n + j] = s;
    }
  }
}

double max_abs_diff(const CMatrix& lhs, const CMatrix& rhs) {
  double m = 0;
  const int n = lhs.n();
  for (int i = 0; i < n * n; ++i) m = std::max(m, std::abs(lhs.data()[i] - rhs.data()[i]));
  return m;
}

// ---------------------------------------------------------------------------

CMatrix compound2(const CMatrix& a) {
  const int n = a.n();
  const int m = n * (n - 1) / 2;
  CMatrix c(m);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++r) {
      int s = 0;
      for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l, ++s) c(r, s) = a(i, k) * a(j, l) - a(i, l) * a(j, k);
      }
    }
  }
  return c;
}

CVector wedge(std::span<const Complex> u, std::span<const Complex> v) {
  const std::size_t n = u.size();
  CVector w;
  w.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w.push_back(u[i] * v[j] - u[j] * v[i]);
  return w;
}

Complex wedge_pair(std::span<const Complex> covectors, std::span<const Complex> vectors) {
  Complex s = 0;
  for (std::size_t i = 0; i < covectors.size(); ++i) s += covectors[i] * vectors[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

CVector normalized(std::span<const Complex> v) {
  const double r = norm(v);
  CVector out(v.begin(), v.end());
  for (Complex& z : out) z /= r;
  return out;
}

Complex contract(std::span<const Complex> phi, std::span<const Complex> v) {
  Complex s = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) s += phi[i] * v[i];
  return s;
}

// ---------------------------------------------------------------------------
// Spectra

namespace {

bool by_modulus(const Complex& x, const Complex& y) {
  const double ax = std::abs(x), ay = std::abs(y);
  if (ax != ay) return ax > ay;
  if (x.real() != y.real()) return x.real() > y.real();
  return x.imag() > y.imag();
}

// Monic characteristic polynomial of a 2x2 matrix, highest degree first.
std::vector<Complex> charpoly_small(const CMatrix& a) { return {1.0, -a.trace(), a.det()}; }

void horner(const std::vector<Complex>& p, Complex t, Complex& value, Complex& deriv) {
  value = p[0];
  deriv = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    deriv = deriv * t + value;
    value = value * t + p[i];
  }
}

void newton_polish(const std::vector<Complex>& p, Complex& root, int steps) {
  for (int s = 0; s < steps; ++s) {
    Complex v, d;
    horner(p, root, v, d);
    if (d == 0.0 || v == 0.0) return;
    const Complex next = root - v / d;
    Complex v2, d2;
    horner(p, next, v2, d2);
    if (std::abs(v2) <= std::abs(v)) root = next;
  }
}

std::vector<Complex> quadratic_roots(Complex b, Complex c) {
  // t^2 + b t + c
  const Complex disc = std::sqrt(b * b - 4.0 * c);
  const Complex big = std::abs(-b + disc) >= std::abs(-b - disc) ? (-b + disc) / 2.0 : (-b - disc) / 2.0;
  if (big == 0.0) return {0.0, 0.0};
  return {big, c / big};
}

// Householder reduction to upper Hessenberg form.
void hessenberg(CMatrix& h) {
  const int n = h.n();
  for (int k = 0; k + 2 < n; ++k) {
    double alpha_norm = 0;
    for (int i = k + 1; i < n; ++i) alpha_norm += std::norm(h(i, k));
    alpha_norm = std::sqrt(alpha_norm);
    if (alpha_norm == 0) continue;
    CVector v(static_cast<std::size_t>(n - k - 1));
    for (int i = k + 1; i < n; ++i) v[static_cast<std::size_t>(i - k - 1)] = h(i, k);
    const Complex x0 = v[0];
    const Complex phase = x0 == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    v[0] += phase * alpha_norm;
    const double vn = norm(v);
    if (vn == 0) continue;
    for (Complex& z : v) z /= vn;
    // H <- (I - 2 v v*) H (I - 2 v v*)
    for (int j = 0; j < n; ++j) {
      Complex s = 0;
      for (int i = k + 1; i < n; ++i) s += std::conj(v[static_cast<std::size_t>(i - k - 1)]) * h(i, j);
      for (int i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[static_cast<std::size_t>(i - k - 1)] * s;
    }
    for (int i = 0; i < n; ++i) {
      Complex s = 0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[static_cast<std::size_t>(j - k - 1)];
      for (int j = k + 1; j < n; ++j) h(i, j) -= 2.0 * s * std::conj(v[static_cast<std::size_t>(j - k - 1)]);
    }
  }
}

std::vector<Complex> qr_eigenvalues(const CMatrix& a) {
  CMatrix h(a);
  hessenberg(h);
  const int n = h.n();
  std::vector<Complex> values;
  int hi = n - 1;
  int iter = 0;
  std::vector<Complex> cs(static_cast<std::size_t>(n)), sn(static_cast<std::size_t>(n));
  while (hi >= 0) {
    if (hi == 0) {
      values.push_back(h(0, 0));
      break;
    }
    int l = hi;
    while (l > 0) {
      const double scale = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (std::abs(h(l, l - 1)) <= kEps * (scale == 0 ? 1.0 : scale)) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      values.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > 300) throw DegenerateSpectrum("shifted QR failed to converge");
    Complex mu;
    if (iter % 11 == 10) {
      mu = h(hi, hi) + std::abs(h(hi, hi - 1));
    } else {
      const auto r = quadratic_roots(-(h(hi - 1, hi - 1) + h(hi, hi)),
                                     h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1));
      mu = std::abs(r[0] - h(hi, hi)) < std::abs(r[1] - h(hi, hi)) ? r[0] : r[1];
    }
    for (int k = l; k <= hi; ++k) h(k, k) -= mu;
    for (int k = l; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      const Complex c = r == 0 ? Complex(1.0) : x / r;
      const Complex s = r == 0 ? Complex(0.0) : y / r;
      cs[static_cast<std::size_t>(k)] = c;
      sn[static_cast<std::size_t>(k)] = s;
      for (int j = k; j <= hi; ++j) {
        const Complex hk = h(k, j), hk1 = h(k + 1, j);
        h(k, j) = std::conj(c) * hk + std::conj(s) * hk1;
        h(k + 1, j) = -s * hk + c * hk1;
      }
    }
    for (int k = l; k < hi; ++k) {
      const Complex c = cs[static_cast<std::size_t>(k)], s = sn[static_cast<std::size_t>(k)];
      for (int i = l; i <= std::min(k + 1, hi); ++i) {
        const Complex hk = h(i, k), hk1 = h(i, k + 1);
        h(i, k) = hk * c + hk1 * s;
        h(i, k + 1) = -hk * std::conj(s) + hk1 * std::conj(c);
      }
    }
    for (int k = l; k <= hi; ++k) h(k, k) += mu;
  }
  return values;
}

// Solves (A - lambda) x = b repeatedly from a fixed start.
CVector inverse_iteration(const CMatrix& a, Complex lambda) {
  const int n = a.n();
  CMatrix m(a);
  for (int i = 0; i < n; ++i) m(i, i) -= lambda;
  const double floor = kEps * std::max(a.max_abs(), std::abs(lambda)) + std::numeric_limits<double>::min();
  // LU with partial pivoting, tiny pivots lifted to the floor.
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
    }
    if (std::abs(m(k, k)) < floor) m(k, k) = floor;
    for (int i = k + 1; i < n; ++i) {
      const Complex f = m(i, k) / m(k, k);
      m(i, k) = f;
      for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  CVector x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = Complex(1.0 + 0.37 * i, 0.11 * (i % 3));
  for (int it = 0; it < 3; ++it) {
    CVector y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) y[static_cast<std::size_t>(i)] -= m(i, j) * y[static_cast<std::size_t>(j)];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) y[static_cast<std::size_t>(i)] -= m(i, j) * y[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] /= m(i, i);
    }
    x = normalized(y);
  }
  return x;
}

// Null vector of a 2x2 (A - lambda) read off the better-conditioned row.
CVector null_vector_2x2(const CMatrix& a, Complex lambda) {
  const CVector r0 = {a(0, 1), lambda - a(0, 0)};
  const CVector r1 = {lambda - a(1, 1), a(1, 0)};
  return normalized(norm(r0) >= norm(r1) ? r0 : r1);
}

}  // namespace

std::vector<Complex> eigenvalues(const CMatrix& a) {
  std::vector<Complex> values;
  const int n = a.n();
  if (n == 1) {
    values = {a(0, 0)};
  } else if (n == 2) {
    const auto p = charpoly_small(a);
    values = quadratic_roots(p[1], p[2]);
    for (Complex& r : values) newton_polish(p, r, 2);
  } else {
    // From n = 3 on the coefficients of the characteristic polynomial cancel
    // badly for non-normal input (conjugates by long words).
    values = qr_eigenvalues(a);
  }
  std::sort(values.begin(), values.end(), by_modulus);
  return values;
}

CVector right_eigenvector(const CMatrix& a, Complex lambda) {
  if (a.n() == 2) return null_vector_2x2(a, lambda);
  return inverse_iteration(a, lambda);
}

CVector left_eigenvector(const CMatrix& a, Complex lambda) {
  return right_eigenvector(a.transpose(), lambda);
}

EigenSystem eigensystem(const CMatrix& a, double tol) {
  EigenSystem es;
  es.values = eigenvalues(a);
  const std::size_t n = es.values.size();
  es.gap_1 = std::abs(es.values[1]) / std::abs(es.values[0]);
  es.gap_n = std::abs(es.values[n - 1]) / std::abs(es.values[n - 2]);
  if (!(es.gap_1 <= 1.0 - tol) || !(es.gap_n <= 1.0 - tol))
    throw DegenerateSpectrum("eigenvalue moduli are not separated (gap ratios " +
                             std::to_string(es.gap_1) + ", " + std::to_string(es.gap_n) + ")");
  const CMatrix at = a.transpose();
  for (const Complex& l : es.values) {
    es.right.push_back(right_eigenvector(a, l));
    es.left.push_back(right_eigenvector(at, l));
  }
#ifndef NDEBUG
  const double scale = a.frobenius_norm();
  for (std::size_t i = 0; i < n; ++i) {
    const CVector av = a.apply(es.right[i]);
    const CVector pa = a.apply_left(es.left[i]);
    double r1 = 0, r2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
      r1 = std::max(r1, std::abs(av[k] - es.values[i] * es.right[i][k]));
      r2 = std::max(r2, std::abs(pa[k] - es.values[i] * es.left[i][k]));
    }
    assert(r1 <= 1e-10 * scale && r2 <= 1e-10 * scale);
  }
#endif
  return es;
}

// ---------------------------------------------------------------------------
// Singular values

namespace {

double jacobi_max_eigenvalue(CMatrix h) {
  const int n = h.n();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0, diag = 0;
    for (int i = 0; i < n; ++i) {
      diag += std::norm(h(i, i));
      for (int j = i + 1; j < n; ++j) off += std::norm(h(i, j));
    }
    if (off <= kEps * kEps * diag) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex g = h(p, q);
        const double ag = std::abs(g);
        if (ag == 0) continue;
        const Complex e = g / ag;
        const double tau = (h(q, q).real() - h(p, p).real()) / (2 * ag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const Complex hp = h(k, p), hq = h(k, q);
          h(k, p) = hp * e * c - hq * s;
          h(k, q) = hp * e * s + hq * c;
        }
        for (int k = 0; k < n; ++k) {
          const Complex hp = h(p, k), hq = h(q, k);
          h(p, k) = std::conj(e) * c * hp - s * hq;
          h(q, k) = std::conj(e) * s * hp + c * hq;
        }
      }
    }
  }
  double m = h(0, 0).real();
  for (int i = 1; i < n; ++i) m = std::max(m, h(i, i).real());
  return m;
}

}  // namespace

double hermitian_max_eigenvalue(const CMatrix& h) {
  const int n = h.n();
  if (n == 1) return h(0, 0).real();
  if (n == 2) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
  }
  if (n == 3) {
    const double m = (h(0, 0).real() + h(1, 1).real() + h(2, 2).real()) / 3.0;
    CMatrix k(h);
    for (int i = 0; i < 3; ++i) k(i, i) -= m;
    double ss = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ss += std::norm(k(i, j));
    const double p = std::sqrt(ss / 6.0);
    if (p == 0) return m;
    const double r = std::clamp(k.det().real() / (2.0 * p * p * p), -1.0, 1.0);
    return m + 2.0 * p * std::cos(std::acos(r) / 3.0);
  }
  return jacobi_max_eigenvalue(h);
}

namespace {

// sigma_2 / sigma_1 of a 2x2 matrix given sigma_1 sigma_2 = d. The
// discriminant of A A^* is a sum of squares, so nearly conformal matrices
// keep full accuracy (f^2 - 4 d^2 would cancel).
double ratio_2x2(const CMatrix& a, double d) {
  const double r0 = std::norm(a(0, 0)) + std::norm(a(0, 1));
  const double r1 = std::norm(a(1, 0)) + std::norm(a(1, 1));
  const double f = r0 + r1;
  if (f <= 0) return 1.0;
  const Complex off = a(0, 0) * std::conj(a(1, 0)) + a(0, 1) * std::conj(a(1, 1));
  const double disc = (r0 - r1) * (r0 - r1) + 4 * std::norm(off);
  const double top = 0.5 * (f + std::sqrt(disc));
  return std::min(1.0, d / top);
}

}  // namespace

double singular_ratio(const CMatrix& a) {
  if (a.n() == 2) return ratio_2x2(a, std::abs(a.det()));
  return singular_ratio(a, compound2(a));
}

double singular_ratio(const CMatrix& a, const CMatrix& compound) {
  if (a.n() == 2) return ratio_2x2(a, std::abs(compound(0, 0)));
  const double s1sq = hermitian_max_eigenvalue(a.adjoint() * a);
  if (s1sq <= 0) return 1.0;
  const double s12 = std::sqrt(hermitian_max_eigenvalue(compound.adjoint() * compound));
  return std::min(1.0, s12 / s1sq);
}

// ---------------------------------------------------------------------------

ProjLine::ProjLine(std::span<const Complex> v) {
  if (norm(v) == 0) throw std::invalid_argument("zero vector does not span a line");
  v_ = normalized(v);
}

ProjHyperplane::ProjHyperplane(std::span<const Complex> covector) {
  if (norm(covector) == 0) throw std::invalid_argument("zero covector does not define a hyperplane");
  phi_ = normalized(covector);
}

ProjLine apply(const CMatrix& a, const ProjLine& line) { return ProjLine(a.apply(line.rep())); }

Complex pair(const ProjHyperplane& phi, const ProjLine& omega) {
  return contract(phi.covector(), omega.rep());
}

double grassmann_distance(const ProjLine& u, const ProjLine& v) {
  return std::min(1.0, norm(wedge(u.rep(), v.rep())) / (norm(u.rep()) * norm(v.rep())));
}

bool same_line(const ProjLine& u, const ProjLine& v, double tol) { return grassmann_distance(u, v) <= tol; }

}  // namespace basm
