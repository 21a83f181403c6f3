#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "basm/errors.hpp"
#include "basm/identity.hpp"
#include "basm/summation.hpp"

using namespace basm;

namespace {

const double kPi = std::numbers::pi;
const double kLogLambda5 = std::log((5 + std::sqrt(21.0)) / 2);

Representation rotations() {
  const double c1 = std::cos(0.9), s1 = std::sin(0.9), c2 = std::cos(2.1), s2 = std::sin(2.1);
  return Representation(2, {CMatrix{{c1, -s1}, {s1, c1}}, CMatrix{{c2, -s2}, {s2, c2}}}, "rotations");
}

IdentityOptions single_thread() {
  IdentityOptions o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_CASE("left side for the pants words of the L = 5 group") {
  // X5, Y5 and X5 Y5 all have trace 5, so each length is 2 log of the same eigenvalue.
  const BoundaryConfig pants = BoundaryConfig::preset("pants");
  const Complex l = lhs(schottky_gamma(5), pants);
  CHECK(std::abs(l - 6 * kLogLambda5) < 1e-12);
  CHECK(std::abs(lhs(compose_iota(schottky_gamma(5)), pants) - 2.0 * l) < 1e-9);
  CHECK(std::abs(lhs(schottky_gamma(5), BoundaryConfig::preset("torus")) -
                 2 * std::acosh(26.0)) < 1e-10);  // tr [X5, Y5] = -52
}

TEST_CASE("left side of an empty boundary is zero") {
  CHECK(lhs(schottky_gamma(5), BoundaryConfig(2, {})) == Complex(0));
}

TEST_CASE("term table bookkeeping") {
  const BoundaryConfig bc = BoundaryConfig::preset("pants");
  const TermTable t = rhs_partial(schottky_gamma(Complex(4, -2)), bc, 6, single_thread());
  CompensatedComplexSum s;
  for (const Term& term : t.terms) s.add(term.value);
  CHECK(std::abs(s.value() - t.sum) < 1e-12);
  Complex levels = 0;
  for (const Complex& l : t.level_sums) levels += l;
  CHECK(std::abs(levels - t.sum) < 1e-12);
  CHECK(t.level_sums.size() == 7);
  const LetterOrder ord = LetterOrder::standard(2);
  for (std::size_t i = 1; i < t.terms.size(); ++i) {
    const TermKey& a = t.terms[i - 1].key;
    const TermKey& b = t.terms[i].key;
    const bool ordered = a.j < b.j || (a.j == b.j && (a.q < b.q || (a.q == b.q && shortlex_less(a.w, b.w, ord))));
    CHECK(ordered);
  }
  // Summing in reverse order changes nothing at this scale.
  CompensatedComplexSum r;
  for (auto it = t.terms.rbegin(); it != t.terms.rend(); ++it) r.add(it->value);
  CHECK(std::abs(r.value() - t.sum) < 1e-12);
}

TEST_CASE("term tables do not depend on the thread count") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  IdentityOptions many;
  many.threads = 4;
  const TermTable a = rhs_partial(schottky_gamma(5), bc, 7, single_thread());
  const TermTable b = rhs_partial(schottky_gamma(5), bc, 7, many);
  REQUIRE(a.terms.size() == b.terms.size());
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    CHECK(a.terms[i].key == b.terms[i].key);
    CHECK(a.terms[i].value == b.terms[i].value);
  }
  CHECK(a.sum == b.sum);
}

TEST_CASE("length zero pants table holds only the cross cosets") {
  const TermTable t = rhs_partial(schottky_gamma(5), BoundaryConfig::preset("pants"), 0);
  CHECK(t.terms.size() == 6);
  for (const Term& term : t.terms) {
    CHECK(term.key.j != term.key.q);
    CHECK(term.key.w.empty());
  }
}

TEST_CASE("partial sums increase on the real locus") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  for (const Representation& rep : {schottky_gamma(5), compose_iota(schottky_gamma(5))}) {
    const TermTable t = rhs_partial(rep, bc, 9, single_thread());
    double prev = 0;
    for (const Complex& l : t.level_sums) {
      CHECK(l.real() >= 0);
      CHECK(std::abs(l.imag()) < 1e-9);
      CHECK(prev + l.real() >= prev);
      prev += l.real();
    }
    CHECK(prev < lhs(rep, bc).real());
  }
}

TEST_CASE("residual shrinks every two levels for the L = 5 torus") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  const Representation rep = schottky_gamma(5);
  const TermTable t = rhs_partial(rep, bc, 12, single_thread());
  const Complex l = lhs(rep, bc);
  std::vector<double> residual;
  Complex partial = 0;
  for (const Complex& level : t.level_sums) {
    partial += level;
    residual.push_back(std::abs(l - partial));
  }
  for (int N = 4; N + 2 <= 12; ++N) {
    CAPTURE(N);
    CHECK(residual[static_cast<std::size_t>(N + 2)] <= residual[static_cast<std::size_t>(N)]);
  }
  CHECK(residual[12] < 1e-4);
}

TEST_CASE("tail estimate in the contractive regime") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  const Representation rep = schottky_gamma(5);
  TailDiagnostics d;
  const double t6 = tail_estimate(rep, bc, 6, single_thread(), &d);
  CHECK(d.decay_ratio > 0);
  CHECK(d.decay_ratio < 1);
  CHECK(d.delta_hat > 0);
  CHECK(d.c_hat >= d.c_log);
  CHECK(std::isfinite(t6));
  CHECK(t6 > 0);
  const double t8 = tail_estimate(rep, bc, 8, single_thread());
  const double t10 = tail_estimate(rep, bc, 10, single_thread());
  CHECK(t8 < t6);
  CHECK(t10 < t8);
  CHECK_THROWS_AS(tail_estimate(rep, bc, 0), ConfigError);
}

TEST_CASE("unitary representations cannot be extrapolated") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  CHECK_THROWS_AS(tail_estimate(rotations(), bc, 4), ExtrapolationUnstable);
  const IdentityReport r = verify(rotations(), bc, 4, 1e-9);
  CHECK_FALSE(r.pass);
  CHECK(r.error.find("ExtrapolationUnstable") != std::string::npos);
  CHECK(std::isinf(r.tail_estimate));
}

TEST_CASE("verify passes for the L = 5 torus and its symmetric square") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  const IdentityReport r2 = verify(schottky_gamma(5), bc, 10, 1e-9, single_thread());
  const IdentityReport r3 = verify(compose_iota(schottky_gamma(5)), bc, 10, 1e-9, single_thread());
  CHECK(r2.pass);
  CHECK(r3.pass);
  CHECK(r2.real_locus);
  CHECK(r2.error.empty());
  CHECK(std::abs(r2.rhs_partial + r2.residual - r2.lhs) < 1e-12);
  REQUIRE(r2.terms.size() == r3.terms.size());
  for (std::size_t i = 0; i < r2.terms.size(); ++i) {
    CHECK(r2.terms[i].key == r3.terms[i].key);
    CHECK(std::abs(r3.terms[i].value - 2.0 * r2.terms[i].value) <= 1e-9 * std::abs(r2.terms[i].value));
  }
  CHECK(std::abs(r3.residual - 2.0 * r2.residual) < 1e-9);
}

TEST_CASE("pants words on the L = 5 group agree only mod 2 pi i") {
  // The pants words are not boundary classes of this torus group: two terms
  // are logs of negative numbers and the defect is one full turn.
  const IdentityReport r = verify(schottky_gamma(5), BoundaryConfig::preset("pants"), 10, 1e-9, single_thread());
  CHECK(r.residual_mod < 1e-3);
  CHECK(std::abs(std::abs(r.residual) - 2 * kPi) < 1e-3);
}

TEST_CASE("residual mod 2 pi i ignores the branch of a single term") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  const IdentityReport r = verify(schottky_gamma(Complex(4, -2)), bc, 6, 1e-9, single_thread());
  for (int shift : {-1, 1, 3}) {
    const Complex moved = r.residual - Complex(0, 2 * kPi * shift);
    CHECK(std::abs(distance_mod_2pi_i(moved) - r.residual_mod) < 1e-12);
  }
  CHECK(distance_mod_2pi_i(Complex(0.25, 2 * kPi)) == doctest::Approx(0.25));
}

TEST_CASE("gap tables of the L = 5 torus") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  const Representation rep = schottky_gamma(5);
  const GapTable g6 = gap_table(rep, bc, 0, 6, single_thread());
  const GapTable g8 = gap_table(rep, bc, 0, 8, single_thread());
  CHECK(std::abs(g6.circle_length - complex_length(rep, bc[0])) < 1e-12);
  for (const GapTable* g : {&g6, &g8}) {
    for (const Term& t : g->gaps) CHECK(t.value.real() > 0);
    CHECK(g->gap_sum.real() < g->circle_length.real());
    CHECK(g->deficit > 0);
    CHECK(g->deficit <= g->tail_estimate);
  }
  std::set<std::string> finer;
  for (const Term& t : g8.gaps) finer.insert(t.key.w.str());
  for (const Term& t : g6.gaps) CHECK(finer.count(t.key.w.str()) == 1);
  CHECK(g8.gaps.size() > g6.gaps.size());
  CHECK_THROWS_AS(gap_table(schottky_gamma(Complex(4, -2)), bc, 0, 4), ConfigError);
  CHECK_THROWS_AS(gap_table(rep, bc, 3, 4), ConfigError);
}
