#include "geofix/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace geofix {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object()) throw FormatError("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw FormatError(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(std::string(what) + " must be finite");
  return x;
}

Rational exact_number(const json& v, const char* what) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string(what) + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  return rational_from_decimal_double(number(v, what));
}

std::vector<double> number_array(const json& v, const char* what) {
  if (!v.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, what));
  return out;
}

std::vector<std::string> labels_of(const json& doc, const char* key) {
  std::vector<std::string> labels;
  auto it = doc.find(key);
  if (it == doc.end()) return labels;
  if (!it->is_array()) throw FormatError(std::string("\"") + key + "\" must be an array");
  for (const auto& l : *it) {
    if (l.is_string()) {
      labels.push_back(l.get<std::string>());
    } else if (l.is_number_integer()) {
      labels.push_back(std::to_string(l.get<long long>()));
    } else {
      throw FormatError("labels must be strings or integers");
    }
  }
  return labels;
}

template <class Scalar, class Read>
BasicFiniteSample<Scalar> matrix_from(std::string_view text, double tol, Read read) {
  const json doc = parse_document(text);
  const json& dist = require(doc, "dist");
  if (!dist.is_array()) throw FormatError("\"dist\" must be an array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : dist) {
    if (!row.is_array()) throw FormatError("\"dist\" rows must be arrays");
    auto& out = rows.emplace_back();
    for (const auto& x : row) out.push_back(read(x));
  }
  try {
    return BasicFiniteSample<Scalar>(labels_of(doc, "points"), rows, tol);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

template <class Scalar, class Read>
RealTree<Scalar> tree_from(std::string_view text, Read read) {
  const json doc = parse_document(text);
  std::vector<std::string> vertices = labels_of(doc, "vertices");
  const json& edges = require(doc, "edges");
  require(doc, "vertices");
  if (!edges.is_array()) throw FormatError("\"edges\" must be an array");
  std::vector<typename RealTree<Scalar>::EdgeSpec> specs;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 3) throw FormatError("each edge must be [u, v, length]");
    auto label = [](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      throw FormatError("edge endpoints must be vertex labels");
    };
    specs.push_back({label(e[0]), label(e[1]), read(e[2])});
  }
  try {
    return RealTree<Scalar>(std::move(vertices), specs);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteSample parse_distance_matrix(std::string_view json_text, double tol) {
  return matrix_from<double>(json_text, tol, [](const json& v) { return number(v, "distance"); });
}

ExactSample parse_distance_matrix_exact(std::string_view json_text) {
  return matrix_from<Rational>(json_text, 0.0,
                               [](const json& v) { return exact_number(v, "distance"); });
}

FloatTree parse_tree(std::string_view json_text) {
  return tree_from<double>(json_text, [](const json& v) {
    return v.is_string() ? to_double(exact_number(v, "edge length")) : number(v, "edge length");
  });
}

ExactTree parse_tree_exact(std::string_view json_text) {
  return tree_from<Rational>(json_text,
                             [](const json& v) { return exact_number(v, "edge length"); });
}

ModulusTable parse_modulus_table(std::string_view json_text) {
  const json doc = parse_document(json_text);
  ModulusTable table;
  table.r = number_array(require(doc, "r"), "r");
  table.eps = number_array(require(doc, "eps"), "eps");
  const json& eta = require(doc, "eta");
  if (!eta.is_array()) throw FormatError("\"eta\" must be an array of rows");
  for (const auto& row : eta) table.eta.push_back(number_array(row, "eta"));
  return table;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace geofix
