#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "basm/errors.hpp"
#include "basm/matrices.hpp"
#include "basm/reps.hpp"

using namespace basm;

namespace {

CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

CVector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(static_cast<std::size_t>(n));
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

double residual(const CMatrix& a, const CVector& v, Complex lambda) {
  const CVector av = a.apply(v);
  double r = 0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(av[i] - lambda * v[i]));
  return r;
}

double left_residual(const CMatrix& a, const CVector& phi, Complex lambda) {
  const CVector pa = a.apply_left(phi);
  double r = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) r = std::max(r, std::abs(pa[i] - lambda * phi[i]));
  return r;
}

}  // namespace

TEST_CASE("eigenvalues of X5") {
  const CMatrix x{{5, 1}, {-1, 0}};
  const EigenSystem es = eigensystem(x);
  CHECK(std::abs(es.values[0] - (5 + std::sqrt(21.0)) / 2) < 1e-13);
  CHECK(std::abs(es.values[1] - (5 - std::sqrt(21.0)) / 2) < 1e-13);
  CHECK(std::abs(es.values[0] - 4.79129) < 1e-5);
  CHECK(std::abs(es.values[1] - 0.20871) < 1e-5);
}

TEST_CASE("equal moduli are degenerate") {
  CHECK_THROWS_AS(eigensystem(CMatrix::identity(2)), DegenerateSpectrum);
  CHECK_THROWS_AS(eigensystem(CMatrix::identity(3)), DegenerateSpectrum);
  const CMatrix rotation{{0, -1}, {1, 0}};
  CHECK_THROWS_AS(eigensystem(rotation), DegenerateSpectrum);
}

TEST_CASE("symmetric square of a diagonal matrix") {
  const double lam = 2.5;
  const CMatrix d{{lam, 0}, {0, 1 / lam}};
  const EigenSystem es = eigensystem(iota3(d));
  CHECK(std::abs(es.values[0] - lam * lam) < 1e-12);
  CHECK(std::abs(es.values[1] - 1.0) < 1e-12);
  CHECK(std::abs(es.values[2] - 1 / (lam * lam)) < 1e-12);
}

TEST_CASE("eigensystem residual contract on random matrices") {
  std::mt19937_64 rng(1);
  int checked = 0;
  for (int n = 2; n <= 8; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix a = random_matrix(n, rng);
      EigenSystem es;
      try {
        es = eigensystem(a, 1e-3);
      } catch (const DegenerateSpectrum&) {
        continue;
      }
      ++checked;
      CAPTURE(n);
      const double scale = a.frobenius_norm();
      Complex prod = 1;
      for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        CHECK(residual(a, es.right[k], es.values[k]) <= 1e-10 * scale);
        CHECK(left_residual(a, es.left[k], es.values[k]) <= 1e-10 * scale);
        CHECK(std::abs(norm(es.right[k]) - 1) < 1e-12);
        prod *= es.values[k];
        if (i > 0) CHECK(std::abs(es.values[k]) <= std::abs(es.values[k - 1]));
      }
      CHECK(std::abs(prod - a.det()) <= 1e-9 * std::abs(a.det()));
    }
  CHECK(checked > 100);
}

TEST_CASE("eigenvalues are similarity invariant") {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix a = random_matrix(n, rng);
      const CMatrix s = random_matrix(n, rng);
      const auto e1 = eigenvalues(a);
      const auto e2 = eigenvalues(s * a * s.inverse());
      for (std::size_t i = 0; i < e1.size(); ++i) CHECK(std::abs(e1[i] - e2[i]) <= 1e-8 * std::abs(e1[0]));
    }
}

TEST_CASE("singular ratio examples") {
  const double c = std::cos(0.7), s = std::sin(0.7);
  const CMatrix u{{c, -s}, {s, c}};
  CHECK(std::abs(singular_ratio(u) - 1) < 1e-14);
  CMatrix prod = CMatrix::identity(2);
  for (int i = 0; i < 40; ++i) prod = prod * u;
  CHECK(std::abs(singular_ratio(prod) - 1) < 1e-14);
  CHECK(std::abs(singular_ratio(CMatrix::identity(3)) - 1) < 1e-14);
  const CMatrix d{{3, 0}, {0, 1.0 / 3}};
  CHECK(std::abs(singular_ratio(d) - 1.0 / 9) < 1e-15);
}

TEST_CASE("singular ratio is scale invariant and survives the symmetric square") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix a = random_matrix(2, rng);
    const double r = singular_ratio(a);
    CHECK(std::abs(singular_ratio(iota3(a)) - r) <= 1e-12);
    CHECK(std::abs(singular_ratio(a.scaled({-2.5, 4.0})) - r) <= 1e-12);
  }
  for (int n = 3; n <= 6; ++n) {
    const CMatrix a = random_matrix(n, rng);
    CHECK(std::abs(singular_ratio(a) - singular_ratio(a, compound2(a))) <= 1e-12);
    CHECK(std::abs(singular_ratio(a.scaled(7.0)) - singular_ratio(a)) <= 1e-12);
  }
}

TEST_CASE("second compound is multiplicative") {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 5; ++n) {
    const CMatrix a = random_matrix(n, rng), b = random_matrix(n, rng);
    CHECK(max_abs_diff(compound2(a * b), compound2(a) * compound2(b)) < 1e-12 * (1 + compound2(a * b).max_abs()));
  }
}

TEST_CASE("grassmann distance examples") {
  const ProjLine e1(CVector{1, 0}), e2(CVector{0, 1}), diag(CVector{1, 1});
  CHECK(grassmann_distance(e1, e1) < 1e-15);
  CHECK(std::abs(grassmann_distance(e1, e2) - 1) < 1e-15);
  CHECK(std::abs(grassmann_distance(e1, diag) - 1 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::abs(grassmann_distance(e1, diag) - 0.70711) < 1e-5);
}

TEST_CASE("grassmann distance is a metric on sampled lines") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      const ProjLine u(random_vector(n, rng)), v(random_vector(n, rng)), w(random_vector(n, rng));
      const double uv = grassmann_distance(u, v), vu = grassmann_distance(v, u);
      CHECK(std::abs(uv - vu) < 1e-12);
      CHECK(uv >= 0);
      CHECK(uv <= 1 + 1e-15);
      CHECK(uv <= grassmann_distance(u, w) + grassmann_distance(w, v) + 1e-12);
      // Scaling a representative changes nothing.
      CVector scaled = u.rep();
      for (auto& z : scaled) z *= Complex(0.3, -2);
      CHECK(grassmann_distance(u, ProjLine(scaled)) < 1e-12);
    }
}

TEST_CASE("pairing examples") {
  CHECK(std::abs(pair(ProjHyperplane(CVector{0, 1}), ProjLine(CVector{1, 0}))) == 0);
  CHECK(std::abs(pair(ProjHyperplane(CVector{1, 0}), ProjLine(CVector{2, 1})) - 2 / std::sqrt(5.0)) < 1e-15);
  CHECK(std::abs(pair(ProjHyperplane(CVector{1, -1}), ProjLine(CVector{3, 1})) - 2 / std::sqrt(20.0)) < 1e-15);
}

TEST_CASE("zero vectors are not projective points") {
  CHECK_THROWS(ProjLine(CVector{0, 0}));
  CHECK_THROWS(ProjHyperplane(CVector{0, 0, 0}));
}

TEST_CASE("matrix basics") {
  std::mt19937_64 rng(6);
  const CMatrix a = random_matrix(4, rng);
  CHECK(max_abs_diff(a * a.inverse(), CMatrix::identity(4)) < 1e-12);
  CHECK(std::abs(a.det1_lift().det() - 1.0) < 1e-12);
  CHECK(std::abs((a * a).det() - a.det() * a.det()) < 1e-10 * std::abs(a.det() * a.det()));
}
