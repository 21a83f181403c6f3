#include "basm/dimension.hpp"

#include <cmath>

#include "basm/errors.hpp"
#include "basm/summation.hpp"

namespace basm {

namespace {

struct LevelSink {
  std::vector<std::vector<double>> levels;
  void operator()(std::span<const Letter> w, const CMatrix& m, const CMatrix* compound) {
    const double r = compound ? singular_ratio(m, *compound) : singular_ratio(m);
    if (!(r > 0) || !std::isfinite(r))
      throw NonHyperbolicData("singular values of \"" + reduce(w).str() + "\" are not resolvable");
    levels[w.size()].push_back(std::log(r));
  }
};

double level_sum(const std::vector<double>& log_ratios, double s) {
  CompensatedSum sum;
  for (double lr : log_ratios) sum.add(std::exp(s * lr));
  return sum.value();
}

int fit_start(int N) { return (N + 1) / 2; }

// Root of the growth slope in s for levels up to N.
double slope_root(const LevelData& data, int N, double tol) {
  constexpr int kGrid = 8;
  constexpr double kTop = 2.0;
  double prev = growth_slope(data, 0.0, N);
  double lo = 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double s = kTop * i / kGrid;
    const double cur = growth_slope(data, s, N);
    if (!(cur < prev - 1e-9 * (1.0 + std::abs(prev))))
      throw NonHyperbolicData("level growth is not decreasing in the exponent near s = " + std::to_string(s));
    if (cur <= 0) {
      double hi = s;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (growth_slope(data, mid, N) > 0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    lo = s;
    prev = cur;
  }
  throw NonHyperbolicData("level growth stays positive up to s = 2");
}

}  // namespace

LevelData collect_levels(const Representation& rep, int N, unsigned threads) {
  if (N < 1) throw ConfigError("level sums need N >= 1");
  LevelSink proto;
  proto.levels.resize(static_cast<std::size_t>(N + 1));
  WalkOptions wo;
  wo.max_len = N;
  wo.with_compound = true;
  wo.threads = threads;
  auto sinks = walk_words(rep, LetterOrder::standard(rep.rank()), wo, proto);
  LevelData data;
  data.N = N;
  data.rank = rep.rank();
  data.log_ratios.resize(static_cast<std::size_t>(N + 1));
  for (auto& s : sinks)
    for (int m = 0; m <= N; ++m) {
      auto& dst = data.log_ratios[static_cast<std::size_t>(m)];
      auto& src = s.levels[static_cast<std::size_t>(m)];
      dst.insert(dst.end(), src.begin(), src.end());
    }
  return data;
}

LevelSums level_sums(const LevelData& data, double s) {
  LevelSums out;
  out.s = s;
  for (int m = 1; m <= data.N; ++m) out.sums.push_back(level_sum(data.log_ratios[static_cast<std::size_t>(m)], s));
  return out;
}

LevelSums level_sums(const Representation& rep, double s, int N, unsigned threads) {
  if (s < 0) throw ConfigError("exponent must be non-negative");
  return level_sums(collect_levels(rep, N, threads), s);
}

double growth_slope(const LevelData& data, double s, int N, double* stderr_out) {
  const int a = fit_start(N);
  std::vector<double> xs, ys;
  for (int m = a; m <= N; ++m) {
    xs.push_back(m);
    ys.push_back(std::log(level_sum(data.log_ratios[static_cast<std::size_t>(m)], s)));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  if (stderr_out) {
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (my + slope * (xs[i] - mx));
      rss += r * r;
    }
    *stderr_out = k > 2 ? std::sqrt(rss / (k - 2) / sxx) : 0.0;
  }
  return slope;
}

ExponentEstimate critical_exponent(const LevelData& data, double tol) {
  const int N = data.N;
  if (N < 4) throw ConfigError("critical exponent needs N >= 4");
  ExponentEstimate e;
  e.N = N;
  e.method = "root of the fitted level growth over lengths " + std::to_string(fit_start(N)) + ".." +
             std::to_string(N);
  e.h = slope_root(data, N, tol);
  e.h_previous = slope_root(data, N - 2, tol);
  growth_slope(data, e.h, N, &e.slope_stderr);
  const double ds = 1e-4;
  const double deriv = (growth_slope(data, e.h + ds, N) - growth_slope(data, std::max(0.0, e.h - ds), N)) /
                       (e.h + ds - std::max(0.0, e.h - ds));
  e.confidence_halfwidth = std::abs(e.h - e.h_previous) + 2.0 * e.slope_stderr / std::abs(deriv);
  const LevelSums at_h = level_sums(data, e.h);
  for (std::size_t m = 0; m + 1 < at_h.sums.size(); ++m) e.growth_at_h.push_back(std::log(at_h.sums[m + 1] / at_h.sums[m]));
  return e;
}

ExponentEstimate critical_exponent(const Representation& rep, int N, double tol, unsigned threads) {
  if (N < 4) throw ConfigError("critical exponent needs N >= 4");
  return critical_exponent(collect_levels(rep, N, threads), tol);
}

GateResult in_S_less1(const LevelData& data, double margin) {
  GateResult g;
  try {
    g.estimate = critical_exponent(data);
  } catch (const NonHyperbolicData& e) {
    g.non_hyperbolic = true;
    g.note = e.what();
    g.estimate.N = data.N;
    return g;
  }
  g.inside = g.estimate.h + g.estimate.confidence_halfwidth < 1.0 - margin;
  return g;
}

GateResult in_S_less1(const Representation& rep, int N, double margin, unsigned threads) {
  if (N < 4) throw ConfigError("dimension gate needs N >= 4");
  return in_S_less1(collect_levels(rep, N, threads), margin);
}

}  // namespace basm
