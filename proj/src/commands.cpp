#include "basm/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "basm/continuation.hpp"
#include "basm/dimension.hpp"
#include "basm/errors.hpp"
#include "basm/identity.hpp"

namespace basm {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

// Non-finite values are not JSON numbers.
json num(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

class Output {
 public:
  explicit Output(const SessionConfig& c) : dir_(c.output.dir), json_(c.output.format == "json") {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
    fs::remove(dir_ / "error.json", ec);  // stale from an earlier failed run
  }

  bool json_format() const { return json_; }

  void write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw ConfigError("cannot write " + p.string());
    files_.push_back(p.string());
  }

  // Either a CSV or the JSON rows, depending on the configured format.
  void table(const std::string& stem, const Csv& csv, const json& rows) {
    if (json_) {
      write(stem + ".json", rows.dump(2) + "\n");
    } else {
      write(stem + ".csv", csv.str());
    }
  }

  CommandResult finish(json summary, int code) {
    CommandResult r;
    r.exit_code = code;
    summary["exit_code"] = code;
    r.summary = summary.dump(2) + "\n";
    write("summary.json", r.summary);
    r.files = files_;
    return r;
  }

 private:
  fs::path dir_;
  bool json_;
  std::vector<std::string> files_;
};

json tail_json(const TailDiagnostics& t) {
  json levels = json::array();
  for (double v : t.level_sums) levels.push_back(num(v));
  return {{"delta_hat", num(t.delta_hat)},      {"c_log", num(t.c_log)},
          {"c_hat", num(t.c_hat)},              {"level_sums", levels},
          {"decay_ratio", num(t.decay_ratio)},  {"extrapolated", num(t.extrapolated)}};
}

json report_json(const IdentityReport& r) {
  json levels = json::array();
  for (Complex z : r.level_term_sums) levels.push_back(cjson(z));
  return {{"lhs", cjson(r.lhs)},
          {"rhs_partial", cjson(r.rhs_partial)},
          {"residual", cjson(r.residual)},
          {"residual_abs", num(std::abs(r.residual))},
          {"residual_mod", num(r.residual_mod)},
          {"tail_estimate", num(r.tail_estimate)},
          {"max_word_len", r.max_word_len},
          {"term_count", r.terms.size()},
          {"level_term_sums", levels},
          {"real_locus", r.real_locus},
          {"pass", r.pass},
          {"error", r.error},
          {"tail", tail_json(r.tail)}};
}

void term_table(Output& out, const std::string& stem, const std::vector<Term>& terms) {
  Csv csv({"j", "q", "word", "len", "re", "im", "singular_ratio", "min_pairing", "distance"});
  json rows = json::array();
  for (const Term& t : terms) {
    const std::string w = t.key.w.str();
    csv.row({std::to_string(t.key.j + 1), std::to_string(t.key.q + 1), w, std::to_string(t.key.w.size()),
             fmt(t.value.real()), fmt(t.value.imag()), fmt(t.singular_ratio), fmt(t.min_pairing), fmt(t.distance)});
    rows.push_back({{"j", t.key.j + 1},
                    {"q", t.key.q + 1},
                    {"word", w},
                    {"len", t.key.w.size()},
                    {"value", cjson(t.value)},
                    {"singular_ratio", num(t.singular_ratio)},
                    {"min_pairing", num(t.min_pairing)},
                    {"distance", num(t.distance)}});
  }
  out.table(stem, csv, rows);
}

json estimate_json(const ExponentEstimate& e) {
  json growth = json::array();
  for (double g : e.growth_at_h) growth.push_back(num(g));
  return {{"h", num(e.h)},
          {"halfwidth", num(e.confidence_halfwidth)},
          {"N", e.N},
          {"method", e.method},
          {"h_previous", num(e.h_previous)},
          {"slope_stderr", num(e.slope_stderr)},
          {"growth_at_h", growth}};
}

json header(const std::string& command, const SessionConfig& c) {
  const RepresentationConfig& r = c.representation;
  json h;
  h["command"] = command;
  h["representation"] = {{"family", r.family}, {"n", r.n}, {"compose_iota", r.compose_iota}};
  if (r.family != "explicit") h["representation"]["L"] = cjson(r.L);
  h["boundary"] = json::array();
  const BoundaryConfig bc = c.boundary();
  for (const Word& w : bc.words()) h["boundary"].push_back(w.str());
  h["letter_order"] = c.letter_order;
  h["seed"] = c.seed;
  return h;
}

}  // namespace

std::string error_summary(const std::string& kind, const std::string& message, int exit_code) {
  json j = {{"status", "error"}, {"kind", kind}, {"message", message}, {"exit_code", exit_code}};
  return j.dump(2) + "\n";
}

CommandResult cmd_enumerate(const SessionConfig& c) {
  Output out(c);
  const BoundaryConfig bc = c.boundary();
  const LetterOrder ord = c.order();
  Csv csv({"p", "q", "word", "len"});
  json rows = json::array();
  json counts = json::array();
  std::size_t total = 0;
  for (std::size_t p = 0; p < bc.size(); ++p)
    for (std::size_t q = 0; q < bc.size(); ++q) {
      const auto reps = redlex_reps(p, q, bc, ord, c.max_word_len);
      for (const Word& w : reps) {
        csv.row({std::to_string(p + 1), std::to_string(q + 1), w.str(), std::to_string(w.size())});
        rows.push_back({{"p", p + 1}, {"q", q + 1}, {"word", w.str()}, {"len", w.size()}});
      }
      counts.push_back({{"p", p + 1}, {"q", q + 1}, {"count", reps.size()}});
      total += reps.size();
    }
  out.table("cosets", csv, rows);
  json s = header("enumerate", c);
  s["max_word_len"] = c.max_word_len;
  s["counts"] = counts;
  s["total"] = total;
  s["status"] = "pass";
  return out.finish(s, exit_pass);
}

CommandResult cmd_verify(const SessionConfig& c) {
  Output out(c);
  const Representation rep = c.build_representation();
  const BoundaryConfig bc = c.boundary();
  const IdentityReport r = verify(rep, bc, c.max_word_len, c.tolerances.identity, c.identity_options());
  json s = header("verify", c);
  s["tol"] = c.tolerances.identity;
  s["report"] = report_json(r);
  if (!r.error.empty()) {
    // The tail does not converge: the representation is outside the domain.
    s["status"] = "error";
    s["kind"] = "ExtrapolationUnstable";
    s["message"] = r.error;
    return out.finish(s, exit_domain_violation);
  }
  term_table(out, "terms", r.terms);
  s["status"] = r.pass ? "pass" : "fail";
  return out.finish(s, r.pass ? exit_pass : exit_gate_failed);
}

CommandResult cmd_dimension(const SessionConfig& c) {
  Output out(c);
  const Representation rep = c.build_representation();
  json s = header("dimension", c);
  s["margin"] = c.tolerances.margin;
  const LevelData data = collect_levels(rep, c.dimension_len, c.threads);
  const GateResult g = in_S_less1(data, c.tolerances.margin);
  s["inside"] = g.inside;
  if (g.non_hyperbolic) {
    s["status"] = "error";
    s["kind"] = "NonHyperbolicData";
    s["message"] = g.note;
    return out.finish(s, exit_domain_violation);
  }
  const ExponentEstimate& e = g.estimate;
  const LevelSums ls = level_sums(data, e.h);
  json report = estimate_json(e);
  json levels = json::array();
  Csv csv({"m", "level_sum_at_h", "word_count"});
  for (std::size_t m = 0; m < ls.sums.size(); ++m) {
    levels.push_back(num(ls.sums[m]));
    csv.row({std::to_string(m + 1), fmt(ls.sums[m]), std::to_string(data.log_ratios[m + 1].size())});
  }
  report["levels"] = levels;
  out.write("dimension.json", report.dump(2) + "\n");
  if (!out.json_format()) out.write("levels.csv", csv.str());
  s["estimate"] = report;
  if (g.inside) {
    s["status"] = "pass";
    return out.finish(s, exit_pass);
  }
  // Clearly above one is outside the domain; otherwise the gate is inconclusive.
  const bool outside = e.h - e.confidence_halfwidth >= 1.0;
  s["status"] = outside ? "error" : "fail";
  if (outside) s["kind"] = "DomainViolation";
  return out.finish(s, outside ? exit_domain_violation : exit_gate_failed);
}

CommandResult cmd_monodromy(const SessionConfig& c) {
  const PathSpec spec = c.path_spec();
  if (!spec.L_path.closed())
    throw ConfigError("config field 'path': monodromy needs a closed path, but the endpoints differ (L(0) = " +
                      fmt(spec.L_at(0).real()) + "+" + fmt(spec.L_at(0).imag()) + "i, L(1) = " +
                      fmt(spec.L_at(1).real()) + "+" + fmt(spec.L_at(1).imag()) + "i)");
  Output out(c);
  const BoundaryConfig bc = c.boundary();
  ContinuedIdentityOptions opt;
  opt.continuation.order = c.order();
  opt.continuation.track.spectral_tol = c.tolerances.spectral;
  opt.continuation.track.transversality_tol = c.tolerances.track_transversality;
  opt.identity = c.identity_options();
  opt.dimension_len = c.path->dimension_len;
  opt.margin = c.tolerances.margin;
  opt.report_every = c.path->report_every;
  const ContinuedIdentity ci = continued_identity(spec, bc, c.max_word_len, c.tolerances.identity, opt);
  const MonodromyTable& t = *ci.table;

  Csv rows_csv({"word", "winding", "monodromy", "change_over_pi"});
  json rows = json::array();
  for (const MonodromyRow& r : t.rows) {
    rows_csv.row({r.word, fmt(r.winding), std::to_string(r.monodromy), std::to_string(2 * r.monodromy)});
    rows.push_back({{"word", r.word},
                    {"winding", num(r.winding)},
                    {"monodromy", r.monodromy},
                    {"change_over_pi", 2 * r.monodromy}});
  }
  out.table("monodromy", rows_csv, rows);

  Csv terms_csv({"j", "q", "word", "winding", "monodromy"});
  json terms = json::array();
  for (const TermWinding& w : t.terms) {
    terms_csv.row({std::to_string(w.key.j + 1), std::to_string(w.key.q + 1), w.key.w.str(), fmt(w.winding),
                   std::to_string(w.monodromy)});
    terms.push_back({{"j", w.key.j + 1},
                     {"q", w.key.q + 1},
                     {"word", w.key.w.str()},
                     {"winding", num(w.winding)},
                     {"monodromy", w.monodromy}});
  }
  out.table("monodromy_terms", terms_csv, terms);

  Csv log_csv({"t", "L_re", "L_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual_mod", "tail_estimate", "pass",
               "dimension", "dimension_halfwidth"});
  json log = json::array();
  std::size_t samples_failed = 0;
  for (const SampleReport& sr : ci.samples) {
    const IdentityReport& r = sr.report;
    if (!r.pass) ++samples_failed;
    log_csv.row({fmt(sr.t), fmt(sr.L.real()), fmt(sr.L.imag()), fmt(r.lhs.real()), fmt(r.lhs.imag()),
                 fmt(r.rhs_partial.real()), fmt(r.rhs_partial.imag()), fmt(r.residual_mod), fmt(r.tail_estimate),
                 r.pass ? "1" : "0", fmt(sr.dimension), fmt(sr.dimension_halfwidth)});
    log.push_back({{"t", sr.t},
                   {"L", cjson(sr.L)},
                   {"lhs", cjson(r.lhs)},
                   {"rhs_partial", cjson(r.rhs_partial)},
                   {"residual_mod", num(r.residual_mod)},
                   {"tail_estimate", num(r.tail_estimate)},
                   {"pass", r.pass},
                   {"error", r.error},
                   {"dimension", num(sr.dimension)},
                   {"dimension_halfwidth", num(sr.dimension_halfwidth)}});
  }
  out.table("samples", log_csv, log);

  json s = header("monodromy", c);
  s["label"] = t.label;
  s["max_word_len"] = t.max_word_len;
  s["boundary_monodromy"] = t.boundary;
  s["total"] = t.total;
  s["boundary_total"] = t.boundary_total;
  s["consistent"] = t.consistent;
  s["max_integrality_error"] = num(t.max_integrality_error);
  s["violations"] = t.violations;
  s["evaluations"] = t.evaluations;
  s["samples_reported"] = ci.samples.size();
  s["samples_failed"] = samples_failed;
  // The gate is the table; per-sample identity checks are logged only.
  const bool pass = t.consistent && t.max_integrality_error <= 1e-6;
  s["status"] = pass ? "pass" : "fail";
  return out.finish(s, pass ? exit_pass : exit_gate_failed);
}

CommandResult cmd_gaps(const SessionConfig& c) {
  Output out(c);
  const Representation rep = c.build_representation();
  const BoundaryConfig bc = c.boundary();
  std::vector<std::size_t> which;
  for (int g : c.gap_boundaries) which.push_back(static_cast<std::size_t>(g - 1));
  if (which.empty())
    for (std::size_t j = 0; j < bc.size(); ++j) which.push_back(j);

  Csv csv({"j", "q", "word", "len", "gap_re", "gap_im", "singular_ratio"});
  json rows = json::array();
  json tables = json::array();
  for (std::size_t j : which) {
    const GapTable g = gap_table(rep, bc, j, c.max_word_len, c.identity_options());
    for (const Term& t : g.gaps) {
      csv.row({std::to_string(j + 1), std::to_string(t.key.q + 1), t.key.w.str(), std::to_string(t.key.w.size()),
               fmt(t.value.real()), fmt(t.value.imag()), fmt(t.singular_ratio)});
      rows.push_back({{"j", j + 1},
                      {"q", t.key.q + 1},
                      {"word", t.key.w.str()},
                      {"len", t.key.w.size()},
                      {"gap", cjson(t.value)},
                      {"singular_ratio", num(t.singular_ratio)}});
    }
    tables.push_back({{"j", j + 1},
                      {"boundary_word", bc[j].str()},
                      {"circle_length", cjson(g.circle_length)},
                      {"gap_sum", cjson(g.gap_sum)},
                      {"gap_count", g.gaps.size()},
                      {"deficit", num(g.deficit)},
                      {"tail_estimate", num(g.tail_estimate)}});
  }
  out.table("gaps", csv, rows);
  json s = header("gaps", c);
  s["max_word_len"] = c.max_word_len;
  s["boundaries"] = tables;
  s["status"] = "pass";
  return out.finish(s, exit_pass);
}

CommandResult run_command(const std::string& name, const SessionConfig& config) {
  auto fail = [&](const std::string& kind, const std::string& message, int code) {
    CommandResult r;
    r.exit_code = code;
    r.summary = error_summary(kind, message, code);
    std::error_code ec;
    fs::create_directories(config.output.dir, ec);
    const fs::path p = fs::path(config.output.dir) / "error.json";
    std::ofstream out(p, std::ios::binary);
    if (!ec && (out << r.summary)) r.files.push_back(p.string());
    return r;
  };
  try {
    if (name == "enumerate") return cmd_enumerate(config);
    if (name == "verify") return cmd_verify(config);
    if (name == "dimension") return cmd_dimension(config);
    if (name == "monodromy") return cmd_monodromy(config);
    if (name == "gaps") return cmd_gaps(config);
    return fail("ConfigError", "unknown command \"" + name + "\"", exit_config_error);
  } catch (const ConfigError& e) {
    return fail("ConfigError", e.what(), exit_config_error);
  } catch (const DomainViolation& e) {
    return fail("DomainViolation", e.what(), exit_domain_violation);
  } catch (const PathLeavesDomain& e) {
    return fail("PathLeavesDomain", e.what(), exit_domain_violation);
  } catch (const DegenerateSpectrum& e) {
    return fail("DegenerateSpectrum", e.what(), exit_domain_violation);
  } catch (const TransversalityFailure& e) {
    return fail("TransversalityFailure", e.what(), exit_domain_violation);
  } catch (const NonHyperbolicData& e) {
    return fail("NonHyperbolicData", e.what(), exit_domain_violation);
  } catch (const ExtrapolationUnstable& e) {
    return fail("ExtrapolationUnstable", e.what(), exit_domain_violation);
  } catch (const BranchPointError& e) {
    return fail("BranchPointError", e.what(), exit_domain_violation);
  } catch (const RefinementBudgetExceeded& e) {
    return fail("RefinementBudgetExceeded", e.what(), exit_gate_failed);
  }
}

}  // namespace basm
