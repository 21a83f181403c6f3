#include "basm/session.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "basm/errors.hpp"

namespace basm {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) fail(join(path, k), "unknown field");
}

double as_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& field) {
  if (!j.is_boolean()) fail(field, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

// [re, im], or a bare real number.
Complex as_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(field, "expected a complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

CMatrix as_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a square matrix as a list of rows");
  const int n = static_cast<int>(j.size());
  CMatrix m(n);
  for (int r = 0; r < n; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) fail(row_field, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c)
      m(r, c) = as_complex(row[static_cast<std::size_t>(c)], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.n(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.n(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

RepresentationConfig parse_representation(const json& j, const std::string& path) {
  check_keys(j, path, {"family", "n", "rank", "matrices", "L", "compose_iota", "root"});
  RepresentationConfig rc;
  if (j.contains("family")) rc.family = as_string(j["family"], join(path, "family"));
  if (j.contains("rank")) rc.rank = as_int(j["rank"], join(path, "rank"));
  if (j.contains("compose_iota")) rc.compose_iota = as_bool(j["compose_iota"], join(path, "compose_iota"));
  if (j.contains("L")) rc.L = as_complex(j["L"], join(path, "L"));
  if (j.contains("root")) rc.root = as_complex(j["root"], join(path, "root"));
  if (j.contains("matrices")) {
    const std::string f = join(path, "matrices");
    if (!j["matrices"].is_array()) fail(f, "expected a list of matrices");
    for (std::size_t i = 0; i < j["matrices"].size(); ++i)
      rc.matrices.push_back(as_matrix(j["matrices"][i], f + "[" + std::to_string(i) + "]"));
  }
  // n defaults to what the family produces.
  const int base = rc.family == "explicit" && !rc.matrices.empty() ? rc.matrices.front().n() : 2;
  rc.n = rc.compose_iota ? 3 : base;
  if (j.contains("n")) rc.n = as_int(j["n"], join(path, "n"));
  return rc;
}

ToleranceConfig parse_tolerances(const json& j, const std::string& path) {
  check_keys(j, path, {"identity", "spectral", "transversality", "track_transversality", "margin"});
  ToleranceConfig t;
  if (j.contains("identity")) t.identity = as_number(j["identity"], join(path, "identity"));
  if (j.contains("spectral")) t.spectral = as_number(j["spectral"], join(path, "spectral"));
  if (j.contains("transversality")) t.transversality = as_number(j["transversality"], join(path, "transversality"));
  if (j.contains("track_transversality"))
    t.track_transversality = as_number(j["track_transversality"], join(path, "track_transversality"));
  if (j.contains("margin")) t.margin = as_number(j["margin"], join(path, "margin"));
  return t;
}

PathConfig parse_path(const json& j, const std::string& path) {
  check_keys(j, path,
             {"kind", "center", "radius", "turns", "points", "samples", "refine_budget", "reversed", "report_every",
              "dimension_len"});
  PathConfig p;
  if (j.contains("kind")) p.kind = as_string(j["kind"], join(path, "kind"));
  if (j.contains("center")) p.center = as_complex(j["center"], join(path, "center"));
  if (j.contains("radius")) p.radius = as_number(j["radius"], join(path, "radius"));
  if (j.contains("turns")) p.turns = as_number(j["turns"], join(path, "turns"));
  if (j.contains("points")) {
    const std::string f = join(path, "points");
    if (!j["points"].is_array()) fail(f, "expected a list of complex numbers");
    for (std::size_t i = 0; i < j["points"].size(); ++i)
      p.points.push_back(as_complex(j["points"][i], f + "[" + std::to_string(i) + "]"));
  }
  if (j.contains("samples")) p.samples = as_int(j["samples"], join(path, "samples"));
  if (j.contains("refine_budget")) p.refine_budget = as_int(j["refine_budget"], join(path, "refine_budget"));
  if (j.contains("reversed")) p.reversed = as_bool(j["reversed"], join(path, "reversed"));
  if (j.contains("report_every")) p.report_every = as_int(j["report_every"], join(path, "report_every"));
  if (j.contains("dimension_len")) p.dimension_len = as_int(j["dimension_len"], join(path, "dimension_len"));
  return p;
}

OutputConfig parse_output(const json& j, const std::string& path) {
  check_keys(j, path, {"dir", "format"});
  OutputConfig o;
  if (j.contains("dir")) o.dir = as_string(j["dir"], join(path, "dir"));
  if (j.contains("format")) o.format = as_string(j["format"], join(path, "format"));
  return o;
}

}  // namespace

SessionConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // The message carries line and column.
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "",
             {"representation", "boundary_preset", "boundary_words", "letter_order", "max_word_len", "horizon",
              "dimension_len", "gap_boundaries", "tolerances", "path", "output", "threads", "seed"});
  SessionConfig c;
  if (j.contains("representation")) c.representation = parse_representation(j["representation"], "representation");
  if (j.contains("boundary_preset")) c.boundary_preset = as_string(j["boundary_preset"], "boundary_preset");
  if (j.contains("boundary_words")) {
    if (!j["boundary_words"].is_array()) fail("boundary_words", "expected a list of words");
    for (std::size_t i = 0; i < j["boundary_words"].size(); ++i)
      c.boundary_words.push_back(as_string(j["boundary_words"][i], "boundary_words[" + std::to_string(i) + "]"));
  }
  if (j.contains("letter_order")) c.letter_order = as_string(j["letter_order"], "letter_order");
  if (j.contains("max_word_len")) c.max_word_len = as_int(j["max_word_len"], "max_word_len");
  if (j.contains("horizon")) c.horizon = as_int(j["horizon"], "horizon");
  if (j.contains("dimension_len")) c.dimension_len = as_int(j["dimension_len"], "dimension_len");
  if (j.contains("gap_boundaries")) {
    if (!j["gap_boundaries"].is_array()) fail("gap_boundaries", "expected a list of 1-based indices");
    for (std::size_t i = 0; i < j["gap_boundaries"].size(); ++i)
      c.gap_boundaries.push_back(as_int(j["gap_boundaries"][i], "gap_boundaries[" + std::to_string(i) + "]"));
  }
  if (j.contains("tolerances")) c.tolerances = parse_tolerances(j["tolerances"], "tolerances");
  if (j.contains("path") && !j["path"].is_null()) c.path = parse_path(j["path"], "path");
  if (j.contains("output")) c.output = parse_output(j["output"], "output");
  if (j.contains("threads")) {
    const int t = as_int(j["threads"], "threads");
    if (t < 0) fail("threads", "must be non-negative");
    c.threads = static_cast<unsigned>(t);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  validate(c);
  return c;
}

SessionConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const SessionConfig& c) {
  json j;
  const RepresentationConfig& r = c.representation;
  json rep;
  rep["family"] = r.family;
  rep["n"] = r.n;
  rep["rank"] = r.rank;
  rep["matrices"] = json::array();
  for (const CMatrix& m : r.matrices) rep["matrices"].push_back(matrix_json(m));
  rep["L"] = complex_json(r.L);
  rep["compose_iota"] = r.compose_iota;
  if (r.root) rep["root"] = complex_json(*r.root);
  j["representation"] = rep;
  j["boundary_preset"] = c.boundary_preset;
  j["boundary_words"] = c.boundary_words;
  j["letter_order"] = c.letter_order;
  j["max_word_len"] = c.max_word_len;
  j["horizon"] = c.horizon;
  j["dimension_len"] = c.dimension_len;
  j["gap_boundaries"] = c.gap_boundaries;
  j["tolerances"] = {{"identity", c.tolerances.identity},
                     {"spectral", c.tolerances.spectral},
                     {"transversality", c.tolerances.transversality},
                     {"track_transversality", c.tolerances.track_transversality},
                     {"margin", c.tolerances.margin}};
  if (c.path) {
    const PathConfig& p = *c.path;
    json pts = json::array();
    for (Complex z : p.points) pts.push_back(complex_json(z));
    j["path"] = {{"kind", p.kind},
                 {"center", complex_json(p.center)},
                 {"radius", p.radius},
                 {"turns", p.turns},
                 {"points", pts},
                 {"samples", p.samples},
                 {"refine_budget", p.refine_budget},
                 {"reversed", p.reversed},
                 {"report_every", p.report_every},
                 {"dimension_len", p.dimension_len}};
  } else {
    j["path"] = nullptr;
  }
  j["output"] = {{"dir", c.output.dir}, {"format", c.output.format}};
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

void validate(const SessionConfig& c) {
  const RepresentationConfig& r = c.representation;
  if (r.rank < 1) fail("representation.rank", "must be at least 1");
  if (r.family == "explicit") {
    if (static_cast<int>(r.matrices.size()) != r.rank)
      fail("representation.matrices", "expected " + std::to_string(r.rank) + " generator matrices");
    for (std::size_t i = 0; i < r.matrices.size(); ++i)
      if (r.matrices[i].n() != r.matrices.front().n())
        fail("representation.matrices[" + std::to_string(i) + "]", "all generators must have the same size");
    if (r.compose_iota && r.matrices.front().n() != 2)
      fail("representation.compose_iota", "the embedding takes 2x2 generators");
    const int expected = r.compose_iota ? 3 : r.matrices.front().n();
    if (r.n != expected) fail("representation.n", "is " + std::to_string(r.n) + " but the generators give " +
                                                      std::to_string(expected));
  } else if (r.family == "schottky" || r.family == "schottky_prime") {
    if (r.rank != 2) fail("representation.rank", "Schottky families have rank 2");
    if (!r.matrices.empty()) fail("representation.matrices", "only the explicit family takes matrices");
    if (r.n != (r.compose_iota ? 3 : 2)) fail("representation.n", "does not match the family and compose_iota");
  } else {
    fail("representation.family", "unknown family \"" + r.family + "\" (explicit, schottky, schottky_prime)");
  }
  if (c.max_word_len < 0) fail("max_word_len", "must be non-negative");
  if (c.horizon < 2) fail("horizon", "must be at least 2");
  if (c.dimension_len < 4) fail("dimension_len", "must be at least 4");
  if (c.output.format != "csv" && c.output.format != "json") fail("output.format", "expected csv or json");
  if (!(c.tolerances.identity >= 0)) fail("tolerances.identity", "must be non-negative");
  if (!(c.tolerances.spectral > 0 && c.tolerances.spectral < 1)) fail("tolerances.spectral", "must lie in (0, 1)");
  if (!(c.tolerances.transversality >= 0)) fail("tolerances.transversality", "must be non-negative");
  if (!(c.tolerances.track_transversality >= 0)) fail("tolerances.track_transversality", "must be non-negative");
  if (!(c.tolerances.margin >= 0 && c.tolerances.margin < 1)) fail("tolerances.margin", "must lie in [0, 1)");
  try {
    const LetterOrder ord = c.order();
    if (ord.rank() != r.rank) fail("letter_order", "rank does not match the representation");
    const BoundaryConfig bc = c.boundary();
    if (bc.rank() != r.rank) fail(c.boundary_words.empty() ? "boundary_preset" : "boundary_words",
                                  "rank does not match the representation");
    for (int g : c.gap_boundaries)
      if (g < 1 || g > static_cast<int>(bc.size()))
        fail("gap_boundaries", "index " + std::to_string(g) + " is out of range");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("config field", 0) == 0) throw;
    fail(c.boundary_words.empty() ? "boundary_preset/letter_order" : "boundary_words/letter_order", msg);
  }
  if (c.path) {
    const PathConfig& p = *c.path;
    if (p.kind != "circle" && p.kind != "polyline") fail("path.kind", "expected circle or polyline");
    if (p.kind == "polyline" && p.points.empty()) fail("path.points", "a polyline needs at least one point");
    if (p.samples < 1) fail("path.samples", "must be positive");
    if (p.refine_budget < p.samples + 1) fail("path.refine_budget", "must exceed the number of samples");
    if (p.report_every < 1) fail("path.report_every", "must be positive");
    if (p.dimension_len < 4) fail("path.dimension_len", "must be at least 4");
  }
}

BoundaryConfig SessionConfig::boundary() const {
  if (boundary_words.empty()) return BoundaryConfig::preset(boundary_preset);
  std::vector<Word> words;
  for (const auto& s : boundary_words) words.push_back(Word::parse(s));
  return BoundaryConfig(representation.rank, std::move(words));
}

LetterOrder SessionConfig::order() const { return LetterOrder::parse(letter_order); }

Representation SessionConfig::build_representation() const {
  const RepresentationConfig& r = representation;
  Representation rep = [&] {
    if (r.family == "explicit") return Representation(r.rank, r.matrices, "explicit");
    if (r.family == "schottky") return schottky_gamma(r.L, r.root);
    return schottky_gamma_prime(r.L, r.root);
  }();
  return r.compose_iota ? compose_iota(rep) : rep;
}

IdentityOptions SessionConfig::identity_options() const {
  IdentityOptions o;
  o.horizon = horizon;
  o.spectral_tol = tolerances.spectral;
  o.transversality_tol = tolerances.transversality;
  o.threads = threads;
  o.order = order();
  return o;
}

PathSpec SessionConfig::path_spec() const {
  if (!path) throw ConfigError("config field 'path': the monodromy command needs a path");
  if (representation.family == "explicit")
    throw ConfigError("config field 'representation.family': paths run through the Schottky families only");
  PathSpec s;
  s.family = representation.family;
  s.compose_iota = representation.compose_iota;
  s.L_path.kind = path->kind == "circle" ? LPath::Kind::circle : LPath::Kind::polyline;
  s.L_path.center = path->center;
  s.L_path.radius = path->radius;
  s.L_path.turns = path->turns;
  s.L_path.points = path->points;
  s.samples = path->samples;
  s.refine_budget = path->refine_budget;
  s.reversed = path->reversed;
  return s;
}

}  // namespace basm
