#include <doctest.h>

#include <cmath>
#include <numbers>

#include "basm/continuation.hpp"
#include "basm/errors.hpp"

using namespace basm;

namespace {

const double kPi = std::numbers::pi;

PathSpec circle(const std::string& family, bool iota, int samples = 128) {
  PathSpec s;
  s.family = family;
  s.compose_iota = iota;
  s.L_path.kind = LPath::Kind::circle;
  s.L_path.center = 0;
  s.L_path.radius = 5;
  s.L_path.turns = 1;
  s.samples = samples;
  return s;
}

PathSpec polyline(std::vector<Complex> points, bool iota = false, int samples = 32) {
  PathSpec s;
  s.compose_iota = iota;
  s.L_path.kind = LPath::Kind::polyline;
  s.L_path.points = std::move(points);
  s.samples = samples;
  return s;
}

Quantity term(std::size_t j, std::size_t q, const char* w) {
  Quantity out;
  out.kind = Quantity::Kind::term;
  out.key = TermKey{j, q, Word::parse(w)};
  return out;
}

Quantity length(std::size_t j) {
  Quantity out;
  out.kind = Quantity::Kind::boundary_length;
  out.j = j;
  return out;
}

const BoundaryConfig kTorus = BoundaryConfig::preset("schottky-he");

}  // namespace

TEST_CASE("paths") {
  const PathSpec c = circle("schottky", false);
  CHECK(c.L_path.closed());
  CHECK(c.L_at(0) == c.L_at(1));
  CHECK(std::abs(c.L_at(0.25) - Complex(0, 5)) < 1e-14);
  const PathSpec p = polyline({5, 7, Complex(7, 1)});
  CHECK_FALSE(p.L_path.closed());
  CHECK(std::abs(p.L_at(0.25) - Complex(6)) < 1e-14);
  CHECK(std::abs(p.L_at(0.75) - Complex(7, 0.5)) < 1e-14);
  PathSpec r = p;
  r.reversed = true;
  CHECK(std::abs(r.L_at(0) - Complex(7, 1)) < 1e-14);
}

TEST_CASE("constant path leaves every value fixed") {
  const PathSpec p = polyline({Complex(4, -1), Complex(4, -1)});
  const auto qs = identity_quantities(kTorus, 2, LetterOrder::standard(2));
  const TrackResult r = track(p, kTorus, qs);
  REQUIRE(r.tracks.size() == qs.size());
  for (const BranchTrack& b : r.tracks) {
    CAPTURE(b.id);
    CHECK(b.winding == 0.0);
    for (const Complex& v : b.values) CHECK(v == b.values.front());
  }
}

TEST_CASE("real segment keeps terms real") {
  const PathSpec p = polyline({5, 9}, true);
  const auto qs = identity_quantities(kTorus, 3, LetterOrder::standard(2));
  const TrackResult r = track(p, kTorus, qs);
  for (const BranchTrack& b : r.tracks) {
    CAPTURE(b.id);
    CHECK(std::abs(b.winding) < 1e-12);
    for (const Complex& v : b.values) {
      CHECK(std::abs(v.imag()) < 1e-9);
      CHECK(v.real() > 0);
    }
  }
}

TEST_CASE("generator term winds twice around the symmetric square loop") {
  const BranchTrack b = track(circle("schottky", true), kTorus, term(0, 0, "a"));
  CHECK(std::abs(b.winding - 2) < 1e-6);
  CHECK(std::abs(b.values.back().imag() - b.values.front().imag() - 4 * kPi) < 1e-6);
}

TEST_CASE("monodromy tables of the two loops") {
  const MonodromyTable g = loop_monodromy(circle("schottky", true), kTorus, 2);
  for (const char* w : {"a", "b", "A", "B", "ab", "AB"}) {
    CAPTURE(std::string(w));
    CHECK(g.of(w) == 2);
  }
  CHECK(g.of("aB") == 0);
  CHECK(g.of("bA") == 0);
  CHECK(g.total == 12);
  CHECK(g.consistent);
  CHECK(g.max_integrality_error < 1e-6);

  const MonodromyTable gp = loop_monodromy(circle("schottky_prime", true), kTorus, 2);
  CHECK(gp.of("a") == 10);
  CHECK(gp.of("A") == 10);
  CHECK(gp.of("b") == 6);
  CHECK(gp.of("B") == 6);
  CHECK(gp.of("ab") == 0);
  CHECK(gp.of("AB") == 0);
  CHECK(gp.of("aB") == 2);
  CHECK(gp.of("bA") == 2);
  CHECK(gp.total == 36);
  CHECK(gp.consistent);
  CHECK(gp.max_integrality_error < 1e-6);

  CHECK_FALSE(same_monodromy(g, gp));
  CHECK(same_monodromy(g, g));
}

TEST_CASE("monodromy does not change under refinement") {
  const MonodromyTable coarse = loop_monodromy(circle("schottky", true, 64), kTorus, 3);
  const MonodromyTable fine = loop_monodromy(circle("schottky", true, 128), kTorus, 3);
  CHECK(same_monodromy(coarse, fine));
  REQUIRE(coarse.terms.size() == fine.terms.size());
  for (std::size_t i = 0; i < coarse.terms.size(); ++i) CHECK(coarse.terms[i].monodromy == fine.terms[i].monodromy);
}

TEST_CASE("final values are stable when the base grid doubles") {
  const std::vector<Quantity> qs = {length(0), term(0, 0, "a"), term(0, 0, "ab"), term(0, 0, "bA")};
  const TrackResult coarse = track(circle("schottky", false, 64), kTorus, qs);
  const TrackResult fine = track(circle("schottky", false, 128), kTorus, qs);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CAPTURE(qs[i].id());
    CHECK(std::abs(coarse.tracks[i].values.back() - fine.tracks[i].values.back()) < 1e-8);
  }
}

TEST_CASE("going out and back returns every branch") {
  const PathSpec out = polyline({5, Complex(4, 3), Complex(-1, 4.5)}, true, 48);
  const auto qs = identity_quantities(kTorus, 2, LetterOrder::standard(2));
  const TrackResult forward = track(out, kTorus, qs);
  PathSpec back = out;
  back.reversed = true;
  TrackStart start;
  start.root = forward.base.back().root;
  for (const BranchTrack& b : forward.tracks) start.values.push_back(b.values.back());
  const TrackResult home = track(back, kTorus, qs, start);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CAPTURE(qs[i].id());
    CHECK(std::abs(home.tracks[i].values.back() - forward.tracks[i].values.front()) < 1e-8);
  }
  CHECK(std::abs(home.base.back().root - forward.base.front().root) < 1e-12);
}

TEST_CASE("closed real loop has no monodromy") {
  const MonodromyTable t = loop_monodromy(polyline({5, 9, 5}, true), kTorus, 3);
  for (const MonodromyRow& r : t.rows) CHECK(r.monodromy == 0);
  CHECK(t.total == 0);
  CHECK(t.violations.empty());
}

TEST_CASE("loops must close") {
  CHECK_THROWS_AS(loop_monodromy(polyline({5, 7}), kTorus, 1), ConfigError);
}

TEST_CASE("crossing the cusp leaves the domain") {
  // At L = 3 the commutator is parabolic.
  CHECK_THROWS_AS(track(polyline({5, 2.5}), kTorus, length(0)), PathLeavesDomain);
}

TEST_CASE("continued identity along the loop") {
  ContinuedIdentityOptions opt;
  opt.identity.threads = 1;
  opt.dimension_len = 6;
  opt.report_every = 32;
  const PathSpec p = circle("schottky", false, 128);
  const ContinuedIdentity c = continued_identity(p, kTorus, 8, 1e-9, opt);
  REQUIRE(c.samples.size() >= 4);
  const IdentityReport direct = verify(schottky_gamma(5), kTorus, 8, 1e-9, opt.identity);
  CHECK(std::abs(c.samples.front().report.lhs - direct.lhs) < 1e-12);
  CHECK(std::abs(c.samples.front().report.rhs_partial - direct.rhs_partial) < 1e-9);
  for (const SampleReport& s : c.samples) {
    CAPTURE(s.t);
    CHECK(s.report.residual_mod <= s.report.tail_estimate + 1e-9);
    CHECK(s.report.lhs.real() > 0);
    CHECK(s.dimension < 1);
  }
  REQUIRE(c.table.has_value());
  CHECK(c.table->consistent);
}
