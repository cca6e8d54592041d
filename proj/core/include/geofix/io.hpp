#pragma once

#include "geofix/convexity_modulus.hpp"
#include "geofix/metric_core.hpp"
#include "geofix/real_tree.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geofix {

/// Malformed input document.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string read_text_file(const std::filesystem::path& path);

/// {"points": [labels], "dist": [[row], ...]}. "points" may be omitted.
FiniteSample parse_distance_matrix(std::string_view json, double tol = kDefaultTol);

/// Same format with exact entries: numbers are read as their shortest decimal,
/// strings as "p/q" or decimal literals.
ExactSample parse_distance_matrix_exact(std::string_view json);

/// {"vertices": [labels], "edges": [[u, v, length], ...]}. Lengths are numbers
/// or strings such as "1/3".
FloatTree parse_tree(std::string_view json);
ExactTree parse_tree_exact(std::string_view json);

/// {"r": [...], "eps": [...], "eta": [[...], ...]}.
ModulusTable parse_modulus_table(std::string_view json);

/// Shortest round-trip decimal, locale independent. Non-finite values print
/// as "inf", "-inf" and "nan".
std::string format_double(double x);

}  // namespace geofix
