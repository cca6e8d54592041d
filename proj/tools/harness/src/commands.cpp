#include "geofix/harness/commands.hpp"

#include "geofix/convexity_modulus.hpp"
#include "geofix/fixed_point.hpp"
#include "geofix/io.hpp"
#include "geofix/harness/km_run.hpp"
#include "geofix/harness/spaces.hpp"
#include "geofix/metric_core.hpp"

#include <sstream>
#include <type_traits>

namespace geofix::harness {

namespace {

template <class S>
inline constexpr bool is_exact_tree_v = std::is_same_v<S, ExactTree>;

Modulus make_modulus(const json& spec, const RunContext& ctx) {
  if (spec.is_string()) {
    const auto name = spec.get<std::string>();
    if (name == "cat0") return cat0_modulus();
    throw ConfigError("unknown modulus \"" + name + "\"");
  }
  if (!spec.is_object()) throw ConfigError("\"modulus\" must be \"cat0\" or a table");
  std::string text;
  if (spec.contains("table")) {
    const json& t = spec["table"];
    text = t.is_string() ? read_text_file(resolve_path(ctx, t.get<std::string>())) : t.dump();
  } else {
    text = spec.dump();
  }
  return table_modulus(parse_modulus_table(text), get_string(spec, "name", "table"));
}

LambdaSchedule make_schedule(const json& spec) {
  try {
    if (spec.is_number()) return LambdaSchedule::constant(spec.get<double>());
    if (!spec.is_object()) throw ConfigError("\"schedule\" must be a number or an object");
    std::vector<double> values;
    if (spec.contains("values")) {
      if (!spec["values"].is_array()) throw ConfigError("schedule \"values\" must be an array");
      for (const auto& v : spec["values"]) {
        if (!v.is_number()) throw ConfigError("schedule values must be numbers");
        values.push_back(v.get<double>());
      }
    }
    std::optional<double> tail;
    if (spec.contains("tail")) tail = get_number(spec, "tail");
    return LambdaSchedule(std::move(values), tail);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ThetaWitness make_theta_from(const json& spec, const LambdaSchedule& schedule) {
  if (spec.is_string() && spec.get<std::string>() == "minimal") return make_theta(schedule);
  if (spec.is_object() && spec.contains("linear")) {
    return linear_theta(get_count(spec, "linear", 0));
  }
  throw ConfigError("\"theta\" must be \"minimal\" or {\"linear\": k}");
}

std::vector<double> make_epsilons(const json& config) {
  if (!config.contains("epsilons") || !config["epsilons"].is_array() ||
      config["epsilons"].empty()) {
    throw ConfigError("\"epsilons\" must be a nonempty array");
  }
  std::vector<double> out;
  for (const auto& e : config["epsilons"]) {
    if (!e.is_number() || !(e.get<double>() > 0)) throw ConfigError("epsilons must be positive");
    out.push_back(e.get<double>());
  }
  return out;
}

const json& require(const json& config, const char* key) {
  auto it = config.find(key);
  if (it == config.end()) throw ConfigError(std::string("missing \"") + key + "\"");
  return *it;
}

template <class Space, class Point>
json violation_json(const Space& s, const UcViolation<Point>& v, bool discrete) {
  json j;
  j["a"] = point_json(s, v.a);
  j["x"] = point_json(s, v.x);
  j["y"] = point_json(s, v.y);
  j["r"] = v.r;
  if (discrete) {
    j["k"] = v.k;
  } else {
    j["eps"] = v.eps;
  }
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  return j;
}

template <class Space, class Point>
json violations_json(const Space& s, const UcResult<Point>& res, std::size_t samples,
                     bool discrete, const std::string& modulus) {
  constexpr std::size_t kMaxExamples = 10;
  json j;
  j["modulus"] = modulus;
  const auto& vs = res.violations;
  j["samples"] = samples;
  j["tested"] = res.tested;
  j["violations"] = vs.size();
  j["examples"] = json::array();
  for (std::size_t i = 0; i < vs.size() && i < kMaxExamples; ++i) {
    j["examples"].push_back(violation_json(s, vs[i], discrete));
  }
  return j;
}

std::string trace_csv(std::span<const double> residuals, std::uint64_t phi, double eps) {
  const std::string tail = "," + std::to_string(phi) + "," + format_double(eps) + "\n";
  std::string out = "n,residual,bound_phi,epsilon\n";
  out.reserve(out.size() + residuals.size() * (tail.size() + 28));
  for (std::size_t n = 0; n < residuals.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_double(residuals[n]);
    out += tail;
  }
  return out;
}

template <class Scalar>
json scalar_json(const Scalar& x) {
  return to_double(x);
}

template <class Scalar>
int write_hyperbolicity(const BasicFiniteSample<Scalar>& sample, const HyperbolicityOptions& opts,
                        const RunContext& ctx, json extra) {
  const auto report = hyperbolicity_report(sample, opts);
  json j = std::move(extra);
  j["size"] = sample.size();
  j["points"] = sample.labels();
  j["delta"] = scalar_json(report.delta_four_point);
  if constexpr (is_exact_v<Scalar>) j["delta_exact"] = geofix::to_string(report.delta_four_point);
  if (report.witness) {
    json w = json::array();
    for (auto i : *report.witness) w.push_back(sample.labels()[i]);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["per_basepoint"] = json::array();
  for (const auto& d : report.per_basepoint_delta) j["per_basepoint"].push_back(scalar_json(d));
  j["doubling_ok"] = report.doubling_ok;
  write_output(ctx, "hyperbolicity.json", render(j));
  return report.doubling_ok ? kPass : kViolation;
}

}  // namespace

json axiom_report_json(const AxiomReport& report, double threshold, const std::string& space) {
  json j;
  j["space"] = space;
  j["W1"] = report.w1;
  j["W2"] = report.w2;
  j["W3"] = report.w3;
  j["W4"] = report.w4;
  j["seed"] = report.seed;
  j["samples"] = report.samples;
  j["exact"] = report.exact;
  j["exact_zero"] = report.exact_zero;
  j["threshold"] = threshold;
  j["passed"] = report.passed(threshold) && (!report.exact || report.exact_zero);
  return j;
}

int cmd_axioms(const json& config, const Overrides& overrides, const RunContext& ctx) {
  json resolved = resolve_common(config, overrides, 1e-7, 1000);
  json space_spec;
  const AnySpace any = make_space(require(resolved, "space"), ctx, &space_spec);
  resolved["space"] = space_spec;
  const auto seed = resolved["seed"].get<std::uint64_t>();
  const auto samples = resolved["samples"].get<std::uint64_t>();
  const double tol = resolved["tol"].get<double>();
  write_manifest(ctx, "axioms", resolved);
  return std::visit(
      [&](const auto& space) {
        const auto draw = default_sampler(space, space_spec);
        ConvexStructure cs(space);
        const AxiomReport report = run_axiom_suite(cs, draw, seed, samples);
        const json j = axiom_report_json(report, tol, space.label());
        write_output(ctx, "axioms.json", render(j));
        return j["passed"].get<bool>() ? kPass : kViolation;
      },
      any);
}

int cmd_hyperbolicity(const json& config, const Overrides& overrides, const RunContext& ctx) {
  json resolved = resolve_common(config, overrides, kDefaultTol, 8);
  HyperbolicityOptions opts;
  opts.tol = resolved["tol"].get<double>();
  opts.max_points = get_count(resolved, "max_points", opts.max_points);
  resolved["max_points"] = opts.max_points;

  if (resolved.contains("matrix")) {
    const json& m = resolved["matrix"];
    const std::string text =
        m.is_string() ? read_text_file(resolve_path(ctx, m.get<std::string>())) : m.dump();
    const bool exact = resolved.value("exact", false);
    resolved["exact"] = exact;
    write_manifest(ctx, "hyperbolicity", resolved);
    if (exact) return write_hyperbolicity(parse_distance_matrix_exact(text), opts, ctx, json::object());
    return write_hyperbolicity(parse_distance_matrix(text, opts.tol), opts, ctx, json::object());
  }

  json space_spec;
  const AnySpace any = make_space(require(resolved, "space"), ctx, &space_spec);
  resolved["space"] = space_spec;
  write_manifest(ctx, "hyperbolicity", resolved);
  return std::visit(
      [&](const auto& space) {
        using S = std::decay_t<decltype(space)>;
        using Point = typename S::Point;
        using Scalar = typename S::Scalar;
        std::vector<Point> pts;
        if (resolved.contains("positions")) {
          for (const auto& p : resolved["positions"]) pts.push_back(parse_point(space, p));
        } else {
          Rng rng(resolved["seed"].get<std::uint64_t>());
          const auto draw = default_sampler(space, space_spec);
          const auto n = resolved["samples"].get<std::uint64_t>();
          if (n > opts.max_points) throw SampleTooLarge(n, opts.max_points);
          for (std::uint64_t i = 0; i < n; ++i) pts.push_back(draw(rng));
        }
        if (pts.size() > opts.max_points) throw SampleTooLarge(pts.size(), opts.max_points);
        std::vector<std::string> labels;
        json coords = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
          labels.push_back("p" + std::to_string(i));
          coords.push_back(point_json(space, pts[i]));
        }
        const auto sample = BasicFiniteSample<Scalar>::from_points(
            space, std::span<const Point>(pts), labels, opts.tol);
        json extra;
        extra["space"] = space.label();
        extra["coordinates"] = coords;
        return write_hyperbolicity(sample, opts, ctx, extra);
      },
      any);
}

int cmd_km(const json& config, const Overrides& overrides, const RunContext& ctx) {
  json resolved = resolve_common(config, overrides, kDefaultTol, 1000);
  json space_spec;
  const AnySpace any = make_space(require(resolved, "space"), ctx, &space_spec);
  resolved["space"] = space_spec;
  const std::string map_name = get_string(resolved, "map", "");
  if (map_name.empty()) throw ConfigError("missing \"map\"");
  if (!resolved.contains("schedule")) resolved["schedule"] = 0.5;
  if (!resolved.contains("theta")) resolved["theta"] = "minimal";
  if (!resolved.contains("modulus")) resolved["modulus"] = "cat0";
  const LambdaSchedule schedule = make_schedule(resolved["schedule"]);
  const ThetaWitness theta = make_theta_from(resolved["theta"], schedule);
  const Modulus modulus = make_modulus(resolved["modulus"], ctx);
  const double b = get_number(resolved, "b");
  if (!(b > 0)) throw ConfigError("\"b\" must be positive");
  const std::vector<double> epsilons = make_epsilons(resolved);

  KmLimits limits;
  limits.tol = resolved["tol"].get<double>();
  limits.max_iterations = get_count(resolved, "max_iterations", limits.max_iterations);
  limits.margin = get_count(resolved, "margin", limits.margin);
  resolved["max_iterations"] = limits.max_iterations;
  resolved["margin"] = limits.margin;

  // a user-supplied theta must satisfy the witness inequality where it is used
  if (theta.label != "minimal") {
    for (double eps : epsilons) {
      if (!(eps < 2 * b)) continue;
      const std::uint64_t n = rate_inner_argument(eps, b, modulus);
      if (schedule_prefix_sum(schedule, theta(n)) < Rational(n)) {
        throw ConfigError("theta " + theta.label + " is not a witness for the schedule at n = " +
                          std::to_string(n));
      }
    }
    if (!theta_is_witness(theta, schedule, 1000)) {
      throw ConfigError("theta " + theta.label + " is not a witness for the schedule");
    }
  }

  write_manifest(ctx, "km", resolved);
  return std::visit(
      [&](const auto& space) -> int {
        using S = std::decay_t<decltype(space)>;
        if constexpr (is_exact_tree_v<S>) {
          throw ConfigError("km runs on floating spaces; set \"exact\": false");
        } else {
          const auto reg = make_map(space, map_name);
          const auto x0 = parse_point(space, require(resolved, "x0"));
          ConvexStructure cs(space);

          Rng rng(resolved["seed"].get<std::uint64_t>());
          const double stretch =
              check_nonexpansive(space, reg.map, default_sampler(space, space_spec), rng,
                                 resolved["samples"].get<std::uint64_t>());

          const auto outcome =
              run_km(cs, reg.map, reg.fixed_points, x0, schedule, theta, b, epsilons, modulus, limits);

          json j;
          j["space"] = space.label();
          j["map"] = map_name;
          j["x0"] = point_json(space, x0);
          j["b"] = b;
          j["theta"] = theta.label;
          j["iterations"] = outcome.trace.last_index();
          j["max_iterations"] = limits.max_iterations;
          j["capped"] = outcome.capped;
          j["monotone"] = outcome.monotone;
          j["max_stretch"] = stretch;
          j["fixed_point_gap"] = outcome.fixed_point_gap;
          j["epsilons"] = json::array();
          for (std::size_t k = 0; k < outcome.verdicts.size(); ++k) {
            const auto& v = outcome.verdicts[k];
            const std::string file = "trace_eps_" + std::to_string(k) + ".csv";
            write_output(ctx, file, trace_csv(outcome.trace.residuals, v.phi, v.eps));
            json e;
            e["epsilon"] = v.eps;
            e["phi"] = v.phi;
            e["checked_index"] = v.checked_index;
            e["checked_residual"] = v.checked_residual;
            e["status"] = to_string(v.status);
            e["trace"] = file;
            j["epsilons"].push_back(e);
          }
          const bool nonexpansive = stretch <= limits.tol;
          const bool hypothesis = outcome.fixed_point_gap <= limits.tol;
          j["hypothesis_certified"] = hypothesis;
          j["passed"] = outcome.passed() && nonexpansive && hypothesis;
          write_output(ctx, "km.json", render(j));
          if (!hypothesis) {
            throw ConfigError("no approximate fixed point within b = " + format_double(b) +
                              " of x0");
          }
          return j["passed"].get<bool>() ? kPass : kViolation;
        }
      },
      any);
}

int cmd_ucheck(const json& config, const Overrides& overrides, const RunContext& ctx) {
  json resolved = resolve_common(config, overrides, kDefaultTol, 10000);
  json space_spec;
  const AnySpace any = make_space(require(resolved, "space"), ctx, &space_spec);
  resolved["space"] = space_spec;
  if (!resolved.contains("modulus")) resolved["modulus"] = "cat0";
  const Modulus modulus = make_modulus(resolved["modulus"], ctx);
  const DiscreteModulus discrete = bridge_to_discrete(modulus);
  UcSampling sampling;
  sampling.r_min = get_number(resolved, "r_min", sampling.r_min);
  sampling.r_max = get_number(resolved, "r_max", sampling.r_max);
  sampling.k_max = get_count(resolved, "k_max", sampling.k_max);
  if (!(sampling.r_min > 0 && sampling.r_max >= sampling.r_min)) {
    throw ConfigError("need 0 < r_min <= r_max");
  }
  resolved["r_min"] = sampling.r_min;
  resolved["r_max"] = sampling.r_max;
  resolved["k_max"] = sampling.k_max;
  const auto seed = resolved["seed"].get<std::uint64_t>();
  const auto samples = resolved["samples"].get<std::uint64_t>();
  const double tol = resolved["tol"].get<double>();
  write_manifest(ctx, "ucheck", resolved);

  return std::visit(
      [&](const auto& space) {
        using S = std::decay_t<decltype(space)>;
        ConvexStructure cs(space);
        const auto draw = default_sampler(space, space_spec);
        auto point_at = [&space](const typename S::Point& a, double s, Rng& rng) {
          return random_point_at(space, a, s, rng);
        };
        Rng rng_c(seed);
        const auto cont = uc_implication_check(cs, modulus, draw, point_at, rng_c, samples, tol, sampling);
        Rng rng_d(seed + 1);
        const auto disc = discrete_uc_check(cs, discrete, draw, point_at, rng_d, samples, tol, sampling);
        json j;
        j["space"] = space.label();
        j["continuous"] = violations_json(space, cont, samples, false, modulus.name());
        j["discrete"] = violations_json(space, disc, samples, true, discrete.name());
        const bool passed = cont.passed() && disc.passed();
        j["passed"] = passed;
        write_output(ctx, "ucheck.json", render(j));
        return passed ? kPass : kViolation;
      },
      any);
}

int run_command(const std::string& name, const json& config, const Overrides& overrides,
                const RunContext& ctx, std::ostream& err) {
  try {
    if (name == "axioms") return cmd_axioms(config, overrides, ctx);
    if (name == "hyperbolicity") return cmd_hyperbolicity(config, overrides, ctx);
    if (name == "km") return cmd_km(config, overrides, ctx);
    if (name == "ucheck") return cmd_ucheck(config, overrides, ctx);
    err << "unknown command '" << name << "'\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "geofix " << name << ": " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace geofix::harness
