#include "basm/identity.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>

#include "basm/errors.hpp"
#include "basm/summation.hpp"

namespace basm {

double distance_mod_2pi_i(Complex z) {
  const double period = 2 * std::numbers::pi;
  const double k = std::round(z.imag() / period);
  return std::abs(z - Complex(0.0, k * period));
}

Complex lhs(const Representation& rep, const BoundaryConfig& bc, double spectral_tol) {
  CompensatedComplexSum s;
  for (const Word& a : bc.words()) s.add(complex_length(rep, a, spectral_tol));
  return s.value();
}

namespace {

LetterOrder order_for(const BoundaryConfig& bc, const IdentityOptions& opt) {
  return opt.order ? *opt.order : LetterOrder::standard(bc.rank());
}

struct ScanSink {
  const RedLexTester* tester = nullptr;
  const TermEvaluator* evaluator = nullptr;  // null: terms are skipped
  int max_len = 0;
  std::size_t k = 0;
  std::vector<Term> terms;
  std::vector<CompensatedSum> tail_levels;

  void operator()(std::span<const Letter> w, const CMatrix& m, const CMatrix* compound) {
    const int len = static_cast<int>(w.size());
    if (len <= max_len) {
      if (!evaluator) return;
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t q = 0; q < k; ++q) {
          if (!tester->is_redlex(w, j, q)) continue;
          Term t;
          t.key = TermKey{j, q, reduce(w)};
          try {
            const TermSample s = evaluator->evaluate(j, q, m, compound);
            t.value = s.value;
            t.min_pairing = s.min_pairing;
            t.distance = s.distance;
          } catch (const TransversalityFailure& e) {
            throw TransversalityFailure(std::string(e.what()) + " at term (" + std::to_string(j + 1) + ", " +
                                        std::to_string(q + 1) + ", \"" + t.key.w.str() + "\")");
          }
          t.singular_ratio = compound ? singular_ratio(m, *compound) : singular_ratio(m);
          terms.push_back(std::move(t));
        }
      }
      return;
    }
    double ratio = -1;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t q = 0; q < k; ++q) {
        if (!tester->is_redlex(w, j, q)) continue;
        if (ratio < 0) ratio = compound ? singular_ratio(m, *compound) : singular_ratio(m);
        tail_levels[static_cast<std::size_t>(len - max_len - 1)].add(ratio);
      }
    }
  }
};

struct Scan {
  std::vector<Term> terms;
  std::vector<double> tail_levels;
  std::vector<FlagData> flags;
  std::exception_ptr flag_error;
};

Scan scan(const Representation& rep, const BoundaryConfig& bc, int N, int horizon, const IdentityOptions& opt) {
  if (N < 0) throw ConfigError("maximal word length must be non-negative");
  if (rep.rank() != bc.rank()) throw ConfigError("boundary rank does not match representation rank");
  const LetterOrder ord = order_for(bc, opt);
  const RedLexTester tester(bc, ord);
  Scan out;
  std::optional<TermEvaluator> evaluator;
  try {
    evaluator.emplace(rep, bc, opt.spectral_tol, opt.transversality_tol);
    out.flags = evaluator->flags();
  } catch (const DegenerateSpectrum&) {
    out.flag_error = std::current_exception();
  } catch (const TransversalityFailure&) {
    out.flag_error = std::current_exception();
  }
  if (out.flag_error && horizon == 0) std::rethrow_exception(out.flag_error);

  ScanSink proto;
  proto.tester = &tester;
  proto.evaluator = evaluator ? &*evaluator : nullptr;
  proto.max_len = N;
  proto.k = bc.size();
  proto.tail_levels.resize(static_cast<std::size_t>(horizon));

  WalkOptions wo;
  wo.max_len = N + horizon;
  wo.with_compound = true;
  wo.threads = opt.threads;
  auto sinks = walk_words(rep, ord, wo, proto);

  std::vector<CompensatedSum> levels(static_cast<std::size_t>(horizon));
  for (auto& s : sinks) {
    for (auto& t : s.terms) out.terms.push_back(std::move(t));
    for (std::size_t i = 0; i < levels.size(); ++i) levels[i].add(s.tail_levels[i]);
  }
  for (const auto& l : levels) out.tail_levels.push_back(l.value());
  std::sort(out.terms.begin(), out.terms.end(), [&](const Term& a, const Term& b) {
    if (a.key.j != b.key.j) return a.key.j < b.key.j;
    if (a.key.q != b.key.q) return a.key.q < b.key.q;
    return shortlex_less(a.key.w, b.key.w, ord);
  });
  return out;
}

void fill_sums(const std::vector<Term>& terms, int N, Complex& sum, std::vector<Complex>& levels) {
  CompensatedComplexSum total;
  std::vector<CompensatedComplexSum> per_level(static_cast<std::size_t>(N + 1));
  for (const Term& t : terms) {
    total.add(t.value);
    per_level[t.key.w.size()].add(t.value);
  }
  sum = total.value();
  levels.clear();
  for (const auto& l : per_level) levels.push_back(l.value());
}

double tail_from_scan(const Scan& sc, int N, TailDiagnostics& d) {
  d.level_sums = sc.tail_levels;
  // Log-linear fit of the level sums against word length.
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sc.tail_levels.size(); ++i) {
    if (sc.tail_levels[i] > 0) {
      xs.push_back(static_cast<double>(N + 1 + static_cast<int>(i)));
      ys.push_back(std::log(sc.tail_levels[i]));
    }
  }
  if (xs.empty()) {
    d.decay_ratio = 0;
  } else if (xs.size() == 1) {
    throw ExtrapolationUnstable("a single nonempty tail level cannot be extrapolated; increase the horizon");
  } else {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    d.decay_ratio = std::exp(sxy / sxx);
  }
  if (d.decay_ratio >= 1.0)
    throw ExtrapolationUnstable("singular-ratio level sums do not decay (fitted ratio " +
                                std::to_string(d.decay_ratio) + ")");
  if (sc.flag_error) std::rethrow_exception(sc.flag_error);

  double delta = 1.0;
  for (std::size_t j = 0; j < sc.flags.size(); ++j) {
    for (std::size_t q = 0; q < sc.flags.size(); ++q) {
      const FlagData& a = sc.flags[j];
      const FlagData& b = sc.flags[q];
      delta = std::min({delta, std::abs(pair(a.plus_hyperplane, b.minus_line)),
                        std::abs(pair(a.minus_hyperplane, b.plus_line))});
      if (j != q) {
        delta = std::min({delta, std::abs(pair(a.plus_hyperplane, b.plus_line)),
                          std::abs(pair(a.minus_hyperplane, b.minus_line))});
      }
    }
  }
  double c_log = 1.0, c_log_all = 1.0;
  for (const Term& t : sc.terms) {
    delta = std::min(delta, t.min_pairing);
    if (t.distance <= 0) continue;
    const double r = std::abs(t.value) / t.distance;
    const double c = std::max(r, 1.0 / r);
    c_log_all = std::max(c_log_all, c);
    if (t.key.w.size() >= 4) c_log = std::max(c_log, c);
  }
  if (N < 4) c_log = c_log_all;
  d.delta_hat = delta;
  d.c_log = c_log;
  d.c_hat = 2.0 / delta * c_log;

  CompensatedSum explicit_sum;
  for (double s : sc.tail_levels) explicit_sum.add(s);
  const double last = sc.tail_levels.empty() ? 0.0 : sc.tail_levels.back();
  d.extrapolated = last * d.decay_ratio / (1.0 - d.decay_ratio);
  explicit_sum.add(d.extrapolated);
  return d.c_hat * explicit_sum.value();
}

}  // namespace

TermTable rhs_partial(const Representation& rep, const BoundaryConfig& bc, int max_word_len,
                      const IdentityOptions& opt) {
  Scan sc = scan(rep, bc, max_word_len, 0, opt);
  TermTable table;
  table.terms = std::move(sc.terms);
  fill_sums(table.terms, max_word_len, table.sum, table.level_sums);
  return table;
}

double tail_estimate(const Representation& rep, const BoundaryConfig& bc, int N, const IdentityOptions& opt,
                     TailDiagnostics* diagnostics) {
  if (N < 1) throw ConfigError("tail estimate needs N >= 1");
  if (opt.horizon < 2) throw ConfigError("tail horizon must be at least 2");
  const Scan sc = scan(rep, bc, N, opt.horizon, opt);
  TailDiagnostics d;
  const double tail = tail_from_scan(sc, N, d);
  if (diagnostics) *diagnostics = d;
  return tail;
}

IdentityReport verify(const Representation& rep, const BoundaryConfig& bc, int N, double tol,
                      const IdentityOptions& opt) {
  if (opt.horizon < 2) throw ConfigError("tail horizon must be at least 2");
  Scan sc = scan(rep, bc, N, opt.horizon, opt);
  IdentityReport r;
  r.max_word_len = N;
  r.real_locus = rep.is_real();
  try {
    r.tail_estimate = N >= 1 ? tail_from_scan(sc, N, r.tail) : std::numeric_limits<double>::infinity();
  } catch (const ExtrapolationUnstable& e) {
    r.error = std::string("ExtrapolationUnstable: ") + e.what();
    r.tail_estimate = std::numeric_limits<double>::infinity();
    if (sc.flag_error) return r;
  }
  r.lhs = lhs(rep, bc, opt.spectral_tol);
  r.terms = std::move(sc.terms);
  fill_sums(r.terms, N, r.rhs_partial, r.level_term_sums);
  r.residual = r.lhs - r.rhs_partial;
  r.residual_mod = distance_mod_2pi_i(r.residual);
  const double measure = r.real_locus ? std::abs(r.residual) : r.residual_mod;
  r.pass = r.error.empty() && measure <= r.tail_estimate + tol;
  return r;
}

GapTable gap_table(const Representation& rep, const BoundaryConfig& bc, std::size_t j, int N,
                   const IdentityOptions& opt) {
  if (j >= bc.size()) throw ConfigError("boundary index out of range");
  if (!rep.is_real()) throw ConfigError("gap tables are defined on the real locus only");
  const IdentityReport r = verify(rep, bc, N, 0.0, opt);
  if (!r.error.empty()) throw ExtrapolationUnstable(r.error);
  GapTable g;
  g.j = j;
  g.circle_length = complex_length(rep, bc[j], opt.spectral_tol);
  CompensatedComplexSum s;
  for (const Term& t : r.terms) {
    if (t.key.j != j) continue;
    g.gaps.push_back(t);
    s.add(t.value);
  }
  g.gap_sum = s.value();
  g.deficit = (g.circle_length - g.gap_sum).real();
  g.tail_estimate = r.tail_estimate;
  return g;
}

}  // namespace basm
