#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "basm/commands.hpp"
#include "basm/errors.hpp"
#include "basm/session.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<int> max_len;
  std::optional<double> tol;
  std::optional<double> margin;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
};

void add_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON session config (defaults apply when omitted)");
  sub->add_option("--max-len", o.max_len, "maximal word length N (level length for dimension)")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol", o.tol, "identity residual tolerance")->check(CLI::NonNegativeNumber);
  sub->add_option("--margin", o.margin, "dimension gate margin")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--seed", o.seed, "seed recorded in reports (default 0)");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--format", o.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

basm::SessionConfig resolve(const std::string& command, const Overrides& o) {
  basm::SessionConfig c = o.config.empty() ? basm::SessionConfig{} : basm::load_config(o.config);
  // For the dimension command N is the level-sum length.
  if (o.max_len) (command == "dimension" ? c.dimension_len : c.max_word_len) = *o.max_len;
  if (o.tol) c.tolerances.identity = *o.tol;
  if (o.margin) c.tolerances.margin = *o.margin;
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.output.dir = *o.out;
  if (o.format) c.output.format = *o.format;
  if (o.threads) c.threads = *o.threads;
  basm::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthospectrum identities for Anosov representations of free groups"};
  app.require_subcommand(1);
  Overrides o;
  const char* names[][2] = {
      {"enumerate", "RedLex double coset representatives"},
      {"verify", "evaluate and check the identity"},
      {"dimension", "critical exponent and the dimension gate"},
      {"monodromy", "continue the identity around a closed path"},
      {"gaps", "per-boundary gap tables on the real locus"},
  };
  for (auto& [name, help] : names) add_flags(app.add_subcommand(name, help), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << basm::error_summary("UsageError", e.what(), basm::exit_config_error);
    return basm::exit_config_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  basm::SessionConfig config;
  try {
    config = resolve(command, o);
  } catch (const basm::ConfigError& e) {
    std::cerr << basm::error_summary("ConfigError", e.what(), basm::exit_config_error);
    return basm::exit_config_error;
  }
  const basm::CommandResult r = basm::run_command(command, config);
  (r.exit_code == basm::exit_pass || r.exit_code == basm::exit_gate_failed ? std::cout : std::cerr) << r.summary;
  return r.exit_code;
}
