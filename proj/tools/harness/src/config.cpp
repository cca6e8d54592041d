#include "geofix/harness/config.hpp"

#include <cmath>
#include <fstream>

namespace geofix::harness {

double get_number(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(std::string("missing \"") + key + "\"");
  if (!it->is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  const double x = it->get<double>();
  if (!std::isfinite(x)) throw ConfigError(std::string("\"") + key + "\" must be finite");
  return x;
}

double get_number(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? get_number(obj, key) : fallback;
}

std::uint64_t get_count(const json& obj, const char* key, std::uint64_t fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
    throw ConfigError(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return it->get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) throw ConfigError(std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

json resolve_common(json config, const Overrides& overrides, double default_tol,
                    std::uint64_t default_samples, std::uint64_t default_seed) {
  if (config.is_null()) config = json::object();
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  if (overrides.seed) config["seed"] = *overrides.seed;
  if (overrides.tol) config["tol"] = *overrides.tol;
  if (overrides.samples) config["samples"] = *overrides.samples;
  config["seed"] = get_count(config, "seed", default_seed);
  config["samples"] = get_count(config, "samples", default_samples);
  const double tol = get_number(config, "tol", default_tol);
  if (!(tol > 0)) throw ConfigError("tol must be positive");
  config["tol"] = tol;
  return config;
}

std::filesystem::path resolve_path(const RunContext& ctx, const std::string& path) {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : ctx.base_dir / p;
}

void write_output(const RunContext& ctx, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(ctx.out_dir);
  const auto path = ctx.out_dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

void write_manifest(const RunContext& ctx, const std::string& command, const json& resolved) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = resolved;
  manifest["tool"] = "geofix";
  write_output(ctx, "manifest.json", render(manifest));
}

}  // namespace geofix::harness
