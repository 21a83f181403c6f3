#include "basm/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "basm/errors.hpp"
#include "basm/summation.hpp"
#include "extended.hpp"

namespace basm {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_phase(double a) { return std::remainder(a, kTwoPi); }

}  // namespace

Complex LPath::at(double t) const {
  if (kind == Kind::circle) {
    // Reduce to one turn first so that whole turns land exactly on the start.
    const double u = turns * t;
    return center + std::polar(radius, kTwoPi * (u - std::floor(u)));
  }
  if (points.empty()) throw ConfigError("polyline path has no points");
  if (points.size() == 1) return points.front();
  const double segs = static_cast<double>(points.size() - 1);
  const double u = std::clamp(t, 0.0, 1.0) * segs;
  const std::size_t i = std::min(static_cast<std::size_t>(u), points.size() - 2);
  const double f = u - static_cast<double>(i);
  return points[i] + f * (points[i + 1] - points[i]);
}

bool LPath::closed() const {
  const Complex a = at(0.0), b = at(1.0);
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

Complex PathSpec::L_at(double t) const { return L_path.at(reversed ? 1.0 - t : t); }

std::string PathSpec::label() const {
  std::string s = compose_iota ? "iota o " + family : family;
  if (L_path.kind == LPath::Kind::circle) {
    s += " L=" + std::to_string(L_path.center.real()) + "+" + std::to_string(L_path.radius) + "e^(2 pi i " +
         std::to_string(L_path.turns) + " t)";
  } else {
    s += " polyline(" + std::to_string(L_path.points.size()) + " points)";
  }
  if (reversed) s += " reversed";
  return s;
}

Representation representation_at(const PathSpec& spec, Complex L, Complex root) {
  Representation rep = [&] {
    if (spec.family == "schottky") return schottky_gamma(L, root);
    if (spec.family == "schottky_prime") return schottky_gamma_prime(L, root);
    throw ConfigError("unknown path family \"" + spec.family + "\" (expected schottky or schottky_prime)");
  }();
  return spec.compose_iota ? compose_iota(rep) : rep;
}

std::string Quantity::id() const {
  if (kind == Kind::boundary_length) return "length[" + std::to_string(j + 1) + "]";
  return "term[" + std::to_string(key.j + 1) + "," + std::to_string(key.q + 1) + "," + key.w.str() + "]";
}

std::vector<Quantity> identity_quantities(const BoundaryConfig& bc, int N, const LetterOrder& ord) {
  std::vector<Quantity> out;
  for (std::size_t j = 0; j < bc.size(); ++j) {
    Quantity q;
    q.kind = Quantity::Kind::boundary_length;
    q.j = j;
    out.push_back(q);
  }
  for (std::size_t j = 0; j < bc.size(); ++j)
    for (std::size_t q = 0; q < bc.size(); ++q)
      for (Word& w : redlex_reps(j, q, bc, ord, N)) {
        Quantity qt;
        qt.kind = Quantity::Kind::term;
        qt.key = TermKey{j, q, std::move(w)};
        out.push_back(std::move(qt));
      }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Sample {
  double t = 0;
  Complex L;
  Complex root;
  std::vector<Complex> raw;   // underlying quantity (cross ratio or eigenvalue ratio)
  std::vector<Complex> logs;  // its principal log, computed accurately
  std::vector<std::pair<Complex, Complex>> extremes;  // (lambda_1, lambda_n) per boundary
};

struct BoundaryFlags {
  ext::XComplex lambda_1, inv_lambda_1;
  ext::XVector plus_line, minus_line, plus_hyperplane, minus_hyperplane;
  ext::XVector hyperplane_wedge, line_wedge;
};

class Tracker {
 public:
  Tracker(const PathSpec& spec, const BoundaryConfig& bc, const std::vector<Quantity>& qs, const TrackOptions& opt)
      : spec_(spec), bc_(bc), qs_(qs), opt_(opt) {}

  Sample evaluate(double t, std::optional<Complex> hint, const Sample* prev) {
    ++evaluations_;
    if (evaluations_ > spec_.refine_budget)
      throw RefinementBudgetExceeded("continuation exceeded its sample budget of " +
                                         std::to_string(spec_.refine_budget),
                                     t);
    Sample s;
    s.t = t;
    s.L = spec_.L_at(t);
    try {
      s.root = schottky_root(s.L, hint);
    } catch (const BranchPointError& e) {
      throw PathLeavesDomain(e.what(), t);
    }
    const ext::XRepresentation rep(spec_.family, s.L, s.root, spec_.compose_iota);
    std::vector<BoundaryFlags> flags;
    for (std::size_t j = 0; j < bc_.size(); ++j) {
      const ext::XMatrix m = rep.product(bc_[j].letters());
      const ext::XMatrix m_inv = rep.product(bc_[j].inverse().letters());
      const auto values = eigenvalues(m.to_double());
      const auto inv_values = eigenvalues(m_inv.to_double());
      const double gap = 1.0 - std::max(std::abs(values[1]) / std::abs(values[0]),
                                        std::abs(inv_values[1]) / std::abs(inv_values[0]));
      if (gap < opt_.pairing_fail)
        throw PathLeavesDomain("spectral gap of boundary word \"" + bc_[j].str() + "\" closed", t);
      Complex top = values.front(), inv_top = inv_values.front();
      if (gap < opt_.pairing_guard && prev) {
        const auto nearest = [](const std::vector<Complex>& vs, Complex target) {
          return *std::min_element(vs.begin(), vs.end(), [&](Complex a, Complex b) {
            return std::abs(a - target) < std::abs(b - target);
          });
        };
        top = nearest(values, prev->extremes[j].first);
        inv_top = nearest(inv_values, 1.0 / prev->extremes[j].second);
      }
      BoundaryFlags f;
      f.lambda_1 = ext::polish_eigenvalue(m, top);
      f.inv_lambda_1 = ext::polish_eigenvalue(m_inv, inv_top);
      f.plus_line = ext::right_eigenvector(m, f.lambda_1);
      f.minus_hyperplane = ext::normalized(ext::left_eigenvector(m, f.lambda_1));
      f.minus_line = ext::right_eigenvector(m_inv, f.inv_lambda_1);
      f.plus_hyperplane = ext::normalized(ext::left_eigenvector(m_inv, f.inv_lambda_1));
      if (std::abs(ext::contract(f.plus_hyperplane, f.minus_line)) < 1e-10L ||
          std::abs(ext::contract(f.minus_hyperplane, f.plus_line)) < 1e-10L)
        throw PathLeavesDomain("attracting and repelling flags of \"" + bc_[j].str() + "\" are not transverse", t);
      f.hyperplane_wedge = ext::wedge(f.plus_hyperplane, f.minus_hyperplane);
      f.line_wedge = ext::wedge(f.plus_line, f.minus_line);
      s.extremes.emplace_back(Complex(f.lambda_1), Complex(1.0L / f.inv_lambda_1));
      flags.push_back(std::move(f));
    }
    for (const Quantity& q : qs_) {
      if (q.kind == Quantity::Kind::boundary_length) {
        const BoundaryFlags& f = flags[q.j];
        const ext::XComplex ratio = f.lambda_1 * f.inv_lambda_1;
        s.raw.push_back(Complex(ratio));
        s.logs.push_back(Complex(std::log(ratio)));
        continue;
      }
      const auto [raw, value] = term(flags[q.key.j], flags[q.key.q], rep, q.key.w, q, t);
      s.raw.push_back(raw);
      s.logs.push_back(value);
    }
    return s;
  }

  // Cross ratio and its log for one identity term, in long double. The
  // transversality threshold is scaled to the working precision.
  std::pair<Complex, Complex> term(const BoundaryFlags& fj, const BoundaryFlags& fq, const ext::XRepresentation& rep,
                                   const Word& w, const Quantity& q, double t) const {
    const ext::XMatrix m = rep.product(w.letters());
    const ext::XVector omega = m.apply(fq.plus_line);
    const ext::XVector omega_prime = m.apply(fq.minus_line);
    const ext::XComplex num1 = ext::contract(fj.plus_hyperplane, omega);
    const ext::XComplex num2 = ext::contract(fj.minus_hyperplane, omega_prime);
    const ext::XComplex den1 = ext::contract(fj.plus_hyperplane, omega_prime);
    const ext::XComplex den2 = ext::contract(fj.minus_hyperplane, omega);
    const long double p_den = std::min(std::abs(den1) / ext::norm(omega_prime), std::abs(den2) / ext::norm(omega));
    if (!(p_den >= static_cast<long double>(opt_.transversality_tol)))
      throw PathLeavesDomain("cross ratio denominator vanishes (normalized pairing " +
                                 std::to_string(static_cast<double>(p_den)) + ") for " + q.id(),
                             t);
    const ext::XVector lines = rep.compound_product(w.letters()).apply(fq.line_wedge);
    const ext::XComplex delta = ext::contract(fj.hyperplane_wedge, lines) / (den1 * den2);
    if (std::abs(delta) < 0.5L) return {Complex(1.0L + delta), Complex(ext::log1p(delta))};
    const ext::XComplex c = num1 * num2 / (den1 * den2);
    if (c == ext::XComplex(0)) throw PathLeavesDomain("cross ratio vanishes for " + q.id(), t);
    return {Complex(c), Complex(std::log(c))};
  }

  // A step is kept when the root stays on its sheet and no quantity turns by
  // a quarter turn or more. Returns the offending quantity, qs_.size() for
  // the root, or -1.
  std::ptrdiff_t rejection(const Sample& a, const Sample& b) const {
    const Complex other = 1.0 / b.root;
    if (std::abs(b.root - a.root) > 0.5 * std::abs(other - a.root)) return static_cast<std::ptrdiff_t>(qs_.size());
    for (std::size_t i = 0; i < a.raw.size(); ++i)
      if (!(std::abs(std::arg(b.raw[i] / a.raw[i])) < 0.5 * std::numbers::pi)) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  void advance(const Sample& a, double t1, Sample& out, std::vector<Complex>& values, int depth) {
    Sample b = evaluate(t1, a.root, &a);
    const std::ptrdiff_t bad = rejection(a, b);
    if (bad < 0) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        const Complex d = b.logs[i] - a.logs[i];
        values[i] += Complex(d.real(), wrap_phase(d.imag()));
      }
      ++accepted_;
      out = std::move(b);
      return;
    }
    if (depth > 40) {
      const std::string what =
          bad == static_cast<std::ptrdiff_t>(qs_.size()) ? std::string("the root") : qs_[static_cast<std::size_t>(bad)].id();
      throw RefinementBudgetExceeded("step size underflow while following " + what, a.t);
    }
    const double mid = 0.5 * (a.t + t1);
    Sample m;
    advance(a, mid, m, values, depth + 1);
    advance(m, t1, out, values, depth + 1);
  }

  TrackResult run(const TrackStart& start) {
    if (spec_.samples < 1) throw ConfigError("path needs at least one sample");
    TrackResult r;
    Sample cur = evaluate(0.0, start.root, nullptr);
    std::vector<Complex> values = cur.logs;
    if (!start.values.empty()) {
      if (start.values.size() != qs_.size()) throw ConfigError("initial branch count does not match quantities");
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (distance_mod_2pi_i(start.values[i] - cur.logs[i]) > 1e-6 * std::max(1.0, std::abs(cur.logs[i])))
          throw ConfigError("initial branch of " + qs_[i].id() + " is not a logarithm of its value");
        values[i] = start.values[i];
      }
    }
    r.tracks.resize(qs_.size());
    for (std::size_t i = 0; i < qs_.size(); ++i) r.tracks[i].id = qs_[i].id();
    auto record = [&](const Sample& s) {
      r.base.push_back(PathPoint{s.t, s.L, s.root});
      for (std::size_t i = 0; i < qs_.size(); ++i) {
        r.tracks[i].t.push_back(s.t);
        r.tracks[i].values.push_back(values[i]);
      }
    };
    record(cur);
    for (int k = 1; k <= spec_.samples; ++k) {
      const double t1 = static_cast<double>(k) / spec_.samples;
      Sample next;
      advance(cur, t1, next, values, 0);
      cur = std::move(next);
      record(cur);
    }
    for (auto& tr : r.tracks) tr.winding = (tr.values.back().imag() - tr.values.front().imag()) / kTwoPi;
    r.evaluations = evaluations_;
    r.accepted_steps = accepted_;
    return r;
  }

 private:
  const PathSpec& spec_;
  const BoundaryConfig& bc_;
  const std::vector<Quantity>& qs_;
  const TrackOptions& opt_;
  int evaluations_ = 0;
  int accepted_ = 0;
};

}  // namespace

TrackResult track(const PathSpec& spec, const BoundaryConfig& bc, const std::vector<Quantity>& quantities,
                  const TrackStart& start, const TrackOptions& opt) {
  if (bc.rank() != 2) throw ConfigError("path families are rank-2 groups");
  return Tracker(spec, bc, quantities, opt).run(start);
}

BranchTrack track(const PathSpec& spec, const BoundaryConfig& bc, const Quantity& quantity,
                  std::optional<Complex> initial_branch, const TrackOptions& opt) {
  TrackStart start;
  if (initial_branch) start.values = {*initial_branch};
  return track(spec, bc, std::vector<Quantity>{quantity}, start, opt).tracks.front();
}

// ---------------------------------------------------------------------------

long long MonodromyTable::of(const std::string& word) const {
  for (const auto& r : rows)
    if (r.word == word) return r.monodromy;
  return 0;
}

bool same_monodromy(const MonodromyTable& lhs, const MonodromyTable& rhs) {
  if (lhs.rows.size() != rhs.rows.size() || lhs.boundary != rhs.boundary) return false;
  for (std::size_t i = 0; i < lhs.rows.size(); ++i)
    if (lhs.rows[i].word != rhs.rows[i].word || lhs.rows[i].monodromy != rhs.rows[i].monodromy) return false;
  return true;
}

namespace {

void check_closed_representation(const PathSpec& spec, const TrackResult& tr) {
  const PathPoint& a = tr.base.front();
  const PathPoint& b = tr.base.back();
  const Representation ra = representation_at(spec, a.L, a.root);
  const Representation rb = representation_at(spec, b.L, b.root);
  for (int g = 0; g < ra.rank(); ++g) {
    if (max_abs_diff(ra.generator(g), rb.generator(g)) > 1e-10 * std::max(1.0, ra.generator(g).max_abs()))
      throw ConfigError("path is not closed in representation space (the root of x^2 + Lx + 1 changed sheets)");
  }
}

MonodromyTable build_table(const PathSpec& spec, const std::vector<Quantity>& qs, const TrackResult& tr, int N,
                           const LetterOrder& ord) {
  MonodromyTable table;
  table.label = spec.label();
  table.max_word_len = N;
  table.evaluations = tr.evaluations;
  std::map<std::string, std::pair<Word, double>> by_word;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double w = tr.tracks[i].winding;
    const long long m = std::llround(w);
    table.max_integrality_error = std::max(table.max_integrality_error, std::abs(w - static_cast<double>(m)));
    if (qs[i].kind == Quantity::Kind::boundary_length) {
      table.boundary.push_back(m);
      table.boundary_total += m;
      continue;
    }
    table.terms.push_back(TermWinding{qs[i].key, w, m});
    auto& entry = by_word[qs[i].key.w.str()];
    entry.first = qs[i].key.w;
    entry.second += w;
    if (static_cast<int>(qs[i].key.w.size()) == N && m != 0) table.violations.push_back(qs[i].id());
  }
  std::vector<std::pair<Word, double>> rows;
  for (auto& [_, v] : by_word) rows.push_back(v);
  std::sort(rows.begin(), rows.end(),
            [&](const auto& a, const auto& b) { return shortlex_less(a.first, b.first, ord); });
  for (const auto& [w, wind] : rows) {
    MonodromyRow r;
    r.word = w.str();
    r.winding = wind;
    r.monodromy = std::llround(wind);
    table.total += r.monodromy;
    table.rows.push_back(r);
  }
  table.consistent = table.total == table.boundary_total;
  return table;
}

}  // namespace

MonodromyTable loop_monodromy(const PathSpec& spec, const BoundaryConfig& bc, int N, const ContinuationOptions& opt) {
  if (!spec.L_path.closed()) throw ConfigError("monodromy needs a closed path: L(0) != L(1)");
  const auto qs = identity_quantities(bc, N, opt.order);
  const TrackResult tr = track(spec, bc, qs, {}, opt.track);
  check_closed_representation(spec, tr);
  return build_table(spec, qs, tr, N, opt.order);
}

ContinuedIdentity continued_identity(const PathSpec& spec, const BoundaryConfig& bc, int N, double tol,
                                     const ContinuedIdentityOptions& opt) {
  const auto qs = identity_quantities(bc, N, opt.continuation.order);
  ContinuedIdentity out;
  out.track = track(spec, bc, qs, {}, opt.continuation.track);
  if (spec.L_path.closed()) {
    check_closed_representation(spec, out.track);
    out.table = build_table(spec, qs, out.track, N, opt.continuation.order);
  }
  const std::size_t count = out.track.base.size();
  const std::size_t stride = static_cast<std::size_t>(std::max(1, opt.report_every));
  IdentityOptions iopt = opt.identity;
  iopt.order = opt.continuation.order;
  for (std::size_t s = 0; s < count; ++s) {
    if (s % stride != 0 && s + 1 != count) continue;
    const PathPoint& p = out.track.base[s];
    const Representation rep = representation_at(spec, p.L, p.root);
    SampleReport sr;
    sr.t = p.t;
    sr.L = p.L;
    const GateResult gate = in_S_less1(rep, opt.dimension_len, opt.margin, iopt.threads);
    sr.dimension = gate.estimate.h;
    sr.dimension_halfwidth = gate.estimate.confidence_halfwidth;
    if (!gate.inside)
      throw DomainViolation("dimension gate failed at t = " + std::to_string(p.t) +
                                (gate.non_hyperbolic ? " (" + gate.note + ")" : ""),
                            p.t);
    IdentityReport& r = sr.report;
    r.max_word_len = N;
    r.real_locus = rep.is_real();
    CompensatedComplexSum lhs_sum, rhs_sum;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const Complex v = out.track.tracks[i].values[s];
      if (qs[i].kind == Quantity::Kind::boundary_length) {
        lhs_sum.add(v);
        continue;
      }
      rhs_sum.add(v);
      Term t;
      t.key = qs[i].key;
      t.value = v;
      r.terms.push_back(std::move(t));
    }
    r.lhs = lhs_sum.value();
    r.rhs_partial = rhs_sum.value();
    r.residual = r.lhs - r.rhs_partial;
    r.residual_mod = distance_mod_2pi_i(r.residual);
    try {
      r.tail_estimate = tail_estimate(rep, bc, N, iopt, &r.tail);
    } catch (const ExtrapolationUnstable& e) {
      r.error = std::string("ExtrapolationUnstable: ") + e.what();
      r.tail_estimate = std::numeric_limits<double>::infinity();
    } catch (const TransversalityFailure& e) {
      // The tail scan runs in double; the tracked values above do not depend on it.
      r.error = std::string("TransversalityFailure: ") + e.what();
      r.tail_estimate = std::numeric_limits<double>::infinity();
    }
    r.pass = r.error.empty() && r.residual_mod <= r.tail_estimate + tol;
    out.samples.push_back(std::move(sr));
  }
  return out;
}

}  // namespace basm
