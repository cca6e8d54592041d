#pragma once

#include "geofix/geodesic_convexity.hpp"
#include "geofix/harness/config.hpp"

#include <ostream>
#include <string>

namespace geofix::harness {

/// Each command resolves config, writes its report plus manifest.json under
/// ctx.out_dir and returns an ExitCode. ConfigError, FormatError and the
/// library's domain errors propagate; run_command maps them to exit status 2.
int cmd_axioms(const json& config, const Overrides& overrides, const RunContext& ctx);
int cmd_hyperbolicity(const json& config, const Overrides& overrides, const RunContext& ctx);
int cmd_km(const json& config, const Overrides& overrides, const RunContext& ctx);
int cmd_ucheck(const json& config, const Overrides& overrides, const RunContext& ctx);

/// Dispatches by name and converts exceptions to exit status 2, reporting the
/// message on err.
int run_command(const std::string& name, const json& config, const Overrides& overrides,
                const RunContext& ctx, std::ostream& err);

/// The axiom report document: {"W1".."W4", "seed", "samples", "exact",
/// "exact_zero", "threshold", "passed", "space"}.
json axiom_report_json(const AxiomReport& report, double threshold, const std::string& space);

/// Axiom run against any W-space, including test doubles. Writes axioms.json
/// and returns kPass iff every residual is within threshold.
template <WHyperbolicSpace Space>
int run_axioms(const Space& space, const PointSampler<Space>& draw, std::uint64_t seed,
               std::size_t samples, double threshold, const RunContext& ctx) {
  ConvexStructure<Space> cs(space);
  const AxiomReport report = run_axiom_suite(cs, draw, seed, samples);
  write_output(ctx, "axioms.json", render(axiom_report_json(report, threshold, space.label())));
  return report.passed(threshold) ? kPass : kViolation;
}

}  // namespace geofix::harness
