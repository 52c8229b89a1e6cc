#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

using namespace sqv::cli;

namespace {

struct Flags {
  std::string config;
  std::string q;
  std::string relations;
  std::string out;
  std::string format;
  std::string families;
  std::optional<unsigned> jobs;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Run configuration file")->required();
  cmd->add_option("--q", f.q, "Primes, e.g. \"2,3,5\"");
  cmd->add_option("--relations", f.relations, "Relation names or all, pointwise, image_lemmas, lemmas");
  cmd->add_option("--out", f.out, "Report path (default: stdout)");
  cmd->add_option("--format", f.format, "json or csv");
  cmd->add_option("--jobs", f.jobs, "Worker threads (0: hardware concurrency)");
  cmd->add_option("--seed", f.seed, "Recorded in the report");
}

RunConfig resolve(const Flags& f, bool needs_frame) {
  RunConfig cfg = load_config(f.config);
  if (!f.q.empty()) cfg.primes = parse_prime_list(f.q);
  if (!f.relations.empty()) cfg.relations = parse_name_list(f.relations);
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.format.empty()) cfg.format = f.format;
  if (!f.families.empty()) cfg.families = f.families;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.seed) cfg.seed = *f.seed;
  if (needs_frame) validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sigma quiver variety workbench"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Flags flags;
  auto* enumerate = app.add_subcommand("enumerate", "Stratum point counts per prime");
  auto* verify = app.add_subcommand("verify", "Verify relations as fiberwise identities");
  auto* chi = app.add_subcommand("chi", "Euler characteristics of fiber families");
  auto* dump_kan = app.add_subcommand("dump-kan", "Structure data of the Kan extension");
  auto* dump_paths = app.add_subcommand("dump-paths", "Bases of the path category");
  for (auto* c : {enumerate, verify, chi, dump_kan, dump_paths}) add_common(c, flags);
  chi->add_option("--families", flags.families, "Family specification file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  RunConfig cfg;
  std::vector<NamedFamily> families;
  try {
    const bool is_chi = chi->parsed();
    cfg = resolve(flags, !is_chi);
    if (is_chi) {
      if (cfg.families.empty()) throw ConfigError("chi needs --families or 'families' in the config");
      std::ifstream in(cfg.families);
      if (!in) throw ConfigError("cannot open families file '" + cfg.families + "'");
      families = parse_families(in);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (cfg.format == "csv" && !enumerate->parsed()) {
    std::cerr << "configuration error: csv output is only available for enumerate\n";
    return kExitConfig;
  }

  std::ostringstream report;
  int code = kExitPass;
  if (enumerate->parsed()) code = cmd_enumerate(cfg, report, std::cerr);
  else if (verify->parsed()) code = cmd_verify(cfg, report, std::cerr);
  else if (chi->parsed()) code = cmd_chi(cfg, families, report, std::cerr);
  else if (dump_kan->parsed()) code = cmd_dump_kan(cfg, report, std::cerr);
  else code = cmd_dump_paths(cfg, report, std::cerr);

  if (cfg.out.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << cfg.out << "'\n";
      return kExitConfig;
    }
    out << report.str();
  }
  return code;
}
