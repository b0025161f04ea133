#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dqw/cli/commands.hpp"
#include "dqw/version.hpp"

namespace {

struct Flags {
  std::string config;
  std::vector<std::pair<std::string, std::string>> settings;
};

void add_common(CLI::App& sub, Flags& flags) {
  sub.add_option("--config", flags.config, "key = value file; flags override it");
  const std::pair<const char*, const char*> keys[] = {
      {"omega", "hopping energy"},
      {"diss", "dissipation constant D"},
      {"t", "comma-separated times"},
      {"t-range", "times as start:stop:step"},
      {"tol", "truncation tolerance"},
      {"window", "fixed lattice window radius"},
      {"format", "csv or json"},
      {"out", "output path"},
      {"threads", "worker threads"},
      {"s-max", "largest site or mirror label reported"},
      {"k-points", "momentum grid points per axis"},
      {"delta-k", "momentum difference for a Wigner slice"},
      {"r-d", "comma-separated dissipation ratios (sweep, validate)"},
      {"suite", "validate: desk or point"},
  };
  for (const auto& [key, help] : keys) {
    const std::string k = key;
    sub.add_option_function<std::string>(
        "--" + k, [&flags, k](const std::string& v) { flags.settings.emplace_back(k, v); }, help);
  }
  sub.add_flag_function(
      "--full", [&flags](std::int64_t) { flags.settings.emplace_back("full", "true"); },
      "also write the full density matrix (evolve, single time)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two dissipative quantum walkers sharing a bath"};
  app.set_version_flag("--version", dqw::kVersion);
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"evolve", "site probability grids and density matrices"},
      {"measures", "purity, entropy, coherence and mirror correlations"},
      {"gqd", "geometric discord over mirror bipartitions"},
      {"wigner", "Wigner function grids"},
      {"sweep", "measures and discord over time and dissipation ratio"},
      {"validate", "oracle and invariant checks"},
  };
  for (const auto& [name, help] : commands) add_common(*app.add_subcommand(name, help), flags);
  CLI11_PARSE(app, argc, argv);

  dqw::cli::RunConfig cfg;
  try {
    if (!flags.config.empty()) {
      std::ifstream f(flags.config);
      if (!f) throw dqw::cli::UsageError("cannot read config file " + flags.config);
      std::stringstream buf;
      buf << f.rdbuf();
      cfg = dqw::cli::parse_config_text(buf.str());
    }
    cfg.command = app.get_subcommands().front()->get_name();
    bool point = false, suite = false;
    for (const auto& [k, v] : flags.settings) {
      dqw::cli::apply_setting(cfg, k, v);
      point = point || dqw::cli::is_point_key(k);
      suite = suite || k == "suite";
    }
    if (point && !suite) cfg.suite = "point";
  } catch (const dqw::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return dqw::cli::run_command(cfg, std::cout, std::cerr);
}
