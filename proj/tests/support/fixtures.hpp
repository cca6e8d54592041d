#pragma once

#include "geofix/io.hpp"

#include <filesystem>
#include <string>

namespace testing_support {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(GEOFIX_FIXTURE_DIR) / name;
}

inline std::string fixture_text(const std::string& name) {
  return geofix::read_text_file(fixture_path(name));
}

inline geofix::FloatTree float_tree(const std::string& name) {
  return geofix::parse_tree(fixture_text(name));
}

inline geofix::ExactTree exact_tree(const std::string& name) {
  return geofix::parse_tree_exact(fixture_text(name));
}

}  // namespace testing_support
