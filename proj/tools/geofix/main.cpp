#include "geofix/harness/commands.hpp"
#include "geofix/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace fs = std::filesystem;
using geofix::harness::json;

namespace {

struct Flags {
  std::string config;
  std::string out = "geofix-out";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::uint64_t> samples;
};

void add_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "Experiment config (JSON)")->required();
  cmd->add_option("--seed", flags.seed, "Override the config seed");
  cmd->add_option("--out", flags.out, "Output directory")->capture_default_str();
  cmd->add_option("--tol", flags.tol, "Override the config tolerance");
  cmd->add_option("--samples", flags.samples, "Override the config sample count");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geofix: checks and fixed-point experiments on W-hyperbolic spaces"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"axioms", "Sample the W1-W4 axioms on a space"},
      {"hyperbolicity", "Four-point and base-point delta of a finite sample"},
      {"km", "Krasnoselskii-Mann iteration against the rate bound"},
      {"ucheck", "Sample the uniform convexity implication for a modulus"},
  };
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : geofix::harness::kUsageError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  json config;
  try {
    config = json::parse(geofix::read_text_file(flags.config));
  } catch (const std::exception& e) {
    std::cerr << "geofix " << name << ": cannot read config: " << e.what() << "\n";
    return geofix::harness::kUsageError;
  }

  geofix::harness::Overrides overrides{flags.seed, flags.tol, flags.samples};
  geofix::harness::RunContext ctx;
  ctx.base_dir = fs::path(flags.config).parent_path();
  if (ctx.base_dir.empty()) ctx.base_dir = ".";
  ctx.out_dir = flags.out;
  return geofix::harness::run_command(name, config, overrides, ctx, std::cerr);
}
