#include "extended.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "basm/errors.hpp"

namespace basm::ext {

XMatrix XMatrix::identity(int n) {
  XMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

XMatrix XMatrix::transpose() const {
  XMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

XVector XMatrix::apply(const XVector& v) const {
  XVector out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    XComplex s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

CMatrix XMatrix::to_double() const {
  CMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = Complex((*this)(i, j));
  return m;
}

XMatrix operator*(const XMatrix& lhs, const XMatrix& rhs) {
  const int n = lhs.n();
  XMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      XComplex s = 0;
      for (int k = 0; k < n; ++k) s += lhs(i, k) * rhs(k, j);
      out(i, j) = s;
    }
  return out;
}

XMatrix compound2(const XMatrix& a) {
  const int n = a.n();
  XMatrix c(n * (n - 1) / 2);
  int r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++r) {
      int s = 0;
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l, ++s) c(r, s) = a(i, k) * a(j, l) - a(i, l) * a(j, k);
    }
  return c;
}

XVector wedge(const XVector& u, const XVector& v) {
  XVector w;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) w.push_back(u[i] * v[j] - u[j] * v[i]);
  return w;
}

XComplex contract(const XVector& phi, const XVector& v) {
  XComplex s = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) s += phi[i] * v[i];
  return s;
}

long double norm(const XVector& v) {
  long double s = 0;
  for (const XComplex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

XVector normalized(const XVector& v) {
  const long double r = norm(v);
  XVector out = v;
  for (auto& z : out) z /= r;
  return out;
}

XComplex polish_eigenvalue(const XMatrix& m, XComplex guess) {
  const int n = m.n();
  // Characteristic polynomial coefficients: lambda^n - c1 lambda^(n-1) + ...
  XComplex c1 = 0, c2 = 0, c3 = 0;
  for (int i = 0; i < n; ++i) c1 += m(i, i);
  if (n == 2) {
    c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  } else if (n == 3) {
    c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) -
         m(1, 2) * m(2, 1);
    c3 = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  } else {
    throw ConfigError("extended precision samples support n = 2 and n = 3 only");
  }
  XComplex x = guess;
  for (int it = 0; it < 4; ++it) {
    XComplex p, dp;
    if (n == 2) {
      p = x * x - c1 * x + c2;
      dp = 2.0L * x - c1;
    } else {
      p = ((x - c1) * x + c2) * x - c3;
      dp = (3.0L * x - 2.0L * c1) * x + c2;
    }
    if (dp == XComplex(0)) break;
    const XComplex step = p / dp;
    x -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<long double>::epsilon() * std::abs(x)) break;
  }
  return x;
}

XVector right_eigenvector(const XMatrix& m, XComplex lambda) {
  const int n = m.n();
  XMatrix s = m;
  for (int i = 0; i < n; ++i) s(i, i) -= lambda;
  std::vector<XVector> candidates;
  if (n == 2) {
    candidates.push_back({s(0, 1), -s(0, 0)});
    candidates.push_back({-s(1, 1), s(1, 0)});
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        candidates.push_back({s(i, 1) * s(j, 2) - s(i, 2) * s(j, 1), s(i, 2) * s(j, 0) - s(i, 0) * s(j, 2),
                              s(i, 0) * s(j, 1) - s(i, 1) * s(j, 0)});
  }
  const XVector* best = &candidates.front();
  for (const auto& c : candidates)
    if (norm(c) > norm(*best)) best = &c;
  if (norm(*best) == 0) throw DegenerateSpectrum("eigenvalue is not simple");
  return normalized(*best);
}

XVector left_eigenvector(const XMatrix& m, XComplex lambda) { return right_eigenvector(m.transpose(), lambda); }

XComplex log1p(XComplex z) {
  const long double x = z.real(), y = z.imag();
  return {0.5L * std::log1p(2 * x + x * x + y * y), std::atan2(y, 1 + x)};
}

namespace {

XMatrix two_by_two(XComplex a, XComplex b, XComplex c, XComplex d) {
  XMatrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Inverse of a determinant-one 2x2 matrix.
XMatrix adjugate(const XMatrix& m) { return two_by_two(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)); }

XMatrix sym_square(const XMatrix& m) {
  const XComplex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const long double r2 = std::numbers::sqrt2_v<long double>;
  XMatrix s(3);
  s(0, 0) = a * a;
  s(0, 1) = r2 * a * b;
  s(0, 2) = b * b;
  s(1, 0) = r2 * a * c;
  s(1, 1) = a * d + b * c;
  s(1, 2) = r2 * b * d;
  s(2, 0) = c * c;
  s(2, 1) = r2 * c * d;
  s(2, 2) = d * d;
  return s;
}

}  // namespace

XRepresentation::XRepresentation(const std::string& family, Complex L, Complex root, bool compose_iota) {
  const XComplex l(L);
  XComplex x(root);
  for (int it = 0; it < 3; ++it) x -= (x * x + l * x + 1.0L) / (2.0L * x + l);
  const XMatrix X = two_by_two(l, 1.0L, -1.0L, 0.0L);
  const XMatrix Y = two_by_two(0.0L, x, -1.0L / x, l);
  XMatrix a, b;
  if (family == "schottky") {
    a = X;
    b = Y;
  } else if (family == "schottky_prime") {
    a = X * X;
    b = X * Y * Y * Y;
  } else {
    throw ConfigError("unknown path family \"" + family + "\" (expected schottky or schottky_prime)");
  }
  images_ = {a, adjugate(a), b, adjugate(b)};
  if (compose_iota) {
    n_ = 3;
    for (auto& m : images_) m = sym_square(m);
  }
  for (const auto& m : images_) compounds_.push_back(compound2(m));
}

XMatrix XRepresentation::product(std::span<const Letter> w) const {
  XMatrix m = XMatrix::identity(n_);
  for (Letter l : w) m = m * images_[static_cast<std::size_t>(l.code())];
  return m;
}

XMatrix XRepresentation::compound_product(std::span<const Letter> w) const {
  XMatrix m = XMatrix::identity(n_ * (n_ - 1) / 2);
  for (Letter l : w) m = m * compounds_[static_cast<std::size_t>(l.code())];
  return m;
}

}  // namespace basm::ext
