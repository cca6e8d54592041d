#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace geofix::harness {

using nlohmann::json;

/// Exit statuses shared by every command.
enum ExitCode : int { kPass = 0, kViolation = 1, kUsageError = 2 };

/// Malformed or inconsistent experiment configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::uint64_t> samples;
};

/// Where a command reads relative paths from and writes its files to.
struct RunContext {
  std::filesystem::path base_dir = ".";
  std::filesystem::path out_dir = ".";
};

/// Typed accessors that raise ConfigError with the offending key.
double get_number(const json& obj, const char* key);
double get_number(const json& obj, const char* key, double fallback);
std::uint64_t get_count(const json& obj, const char* key, std::uint64_t fallback);
std::string get_string(const json& obj, const char* key, const std::string& fallback);

/// config with seed, tol and samples overridden and per-command defaults
/// filled in; tol must stay positive.
json resolve_common(json config, const Overrides& overrides, double default_tol,
                    std::uint64_t default_samples, std::uint64_t default_seed = 0);

std::filesystem::path resolve_path(const RunContext& ctx, const std::string& path);

/// Writes text (byte-exact, '\n' line endings) under ctx.out_dir.
void write_output(const RunContext& ctx, const std::string& name, const std::string& text);

/// Stable JSON rendering used for every output document.
std::string render(const json& doc);

/// manifest.json: the command name and the full resolved config.
void write_manifest(const RunContext& ctx, const std::string& command, const json& resolved);

}  // namespace geofix::harness
