#include "geofix/convexity_modulus.hpp"

#include <algorithm>
#include <stdexcept>

namespace geofix {

Modulus::Modulus(std::string name, Fn eta, bool monotone_in_r)
    : name_(std::move(name)), eta_(std::move(eta)), monotone_in_r_(monotone_in_r) {
  if (!eta_) throw std::invalid_argument("modulus needs a function");
}

double Modulus::operator()(double r, double eps) const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::domain_error("modulus radius must be positive, got " + std::to_string(r));
  }
  if (!(eps > 0.0 && eps <= 2.0)) {
    throw std::domain_error("modulus eps must lie in (0, 2], got " + std::to_string(eps));
  }
  const double value = eta_(r, eps);
  if (!(value > 0.0 && value <= 1.0)) {
    throw std::domain_error("modulus '" + name_ + "' evaluated outside (0, 1]: " +
                            std::to_string(value));
  }
  return value;
}

Modulus cat0_modulus() {
  return Modulus("cat0", [](double, double eps) { return eps * eps / 8.0; }, true);
}

namespace {

std::size_t lower_cell(const std::vector<double>& axis, double x) {
  // index i with axis[i] <= x < axis[i + 1], x already clamped into range
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  std::size_t i = static_cast<std::size_t>(it - axis.begin());
  if (i == 0) return 0;
  return std::min(i - 1, axis.size() - 2);
}

double interpolate(const ModulusTable& t, double r, double eps) {
  const double rc = std::clamp(r, t.r.front(), t.r.back());
  const double ec = std::clamp(eps, t.eps.front(), t.eps.back());
  std::size_t i = 0;
  std::size_t j = 0;
  double fr = 0.0;
  double fe = 0.0;
  if (t.r.size() > 1) {
    i = lower_cell(t.r, rc);
    fr = (rc - t.r[i]) / (t.r[i + 1] - t.r[i]);
  }
  if (t.eps.size() > 1) {
    j = lower_cell(t.eps, ec);
    fe = (ec - t.eps[j]) / (t.eps[j + 1] - t.eps[j]);
  }
  const std::size_t i1 = t.r.size() > 1 ? i + 1 : i;
  const std::size_t j1 = t.eps.size() > 1 ? j + 1 : j;
  const double v00 = t.eta[i][j];
  const double v01 = t.eta[i][j1];
  const double v10 = t.eta[i1][j];
  const double v11 = t.eta[i1][j1];
  return (1 - fr) * ((1 - fe) * v00 + fe * v01) + fr * ((1 - fe) * v10 + fe * v11);
}

void require_increasing(const std::vector<double>& axis, const char* what) {
  if (axis.empty()) throw std::invalid_argument(std::string("modulus table has an empty ") + what + " axis");
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) {
      throw std::invalid_argument(std::string("modulus table ") + what + " axis must be strictly increasing");
    }
  }
}

}  // namespace

Modulus table_modulus(const ModulusTable& table, std::string name) {
  require_increasing(table.r, "r");
  require_increasing(table.eps, "eps");
  if (!(table.r.front() > 0.0)) throw std::invalid_argument("modulus table radii must be positive");
  if (!(table.eps.front() > 0.0 && table.eps.back() <= 2.0)) {
    throw std::invalid_argument("modulus table eps values must lie in (0, 2]");
  }
  if (table.eta.size() != table.r.size()) {
    throw std::invalid_argument("modulus table needs one eta row per radius");
  }
  bool monotone = true;
  for (std::size_t i = 0; i < table.eta.size(); ++i) {
    if (table.eta[i].size() != table.eps.size()) {
      throw std::invalid_argument("modulus table row length must match the eps axis");
    }
    for (std::size_t j = 0; j < table.eps.size(); ++j) {
      const double v = table.eta[i][j];
      if (!(v > 0.0 && v <= 1.0)) {
        throw std::domain_error("modulus table value outside (0, 1] at row " + std::to_string(i));
      }
      if (i > 0 && v > table.eta[i - 1][j]) monotone = false;
    }
  }
  return Modulus(std::move(name), [table](double r, double eps) { return interpolate(table, r, eps); },
                 monotone);
}

DiscreteModulus::DiscreteModulus(std::string name, Fn eta_d)
    : name_(std::move(name)), eta_d_(std::move(eta_d)) {
  if (!eta_d_) throw std::invalid_argument("discrete modulus needs a function");
}

std::uint64_t DiscreteModulus::operator()(double r, std::uint64_t k) const {
  if (!(r > 0.0)) throw std::domain_error("discrete modulus radius must be positive");
  const std::uint64_t v = eta_d_(r, k);
  if (v == 0) throw std::domain_error("discrete modulus '" + name_ + "' returned 0");
  return v;
}

std::int64_t ceil_neg_log2(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("ceil_neg_log2 needs x in (0, 1]");
  // x = m 2^e with m in [0.5, 1): -log2 x = -e - log2 m, and -log2 m is in (0, 1]
  int e = 0;
  std::frexp(x, &e);
  return 1 - static_cast<std::int64_t>(e);
}

DiscreteModulus bridge_to_discrete(const Modulus& m) {
  return DiscreteModulus("bridged-" + m.name(), [m](double r, std::uint64_t k) -> std::uint64_t {
    if (k > 1074) throw std::domain_error("k too large for a binary64 eps = 2^-k");
    const double eps = std::ldexp(1.0, -static_cast<int>(k));
    const std::int64_t v = ceil_neg_log2(m(r, eps)) + 1;
    return static_cast<std::uint64_t>(std::max<std::int64_t>(v, 1));
  });
}

bool check_monotone(const Modulus& m, std::span<const MonotoneGridEntry> grid) {
  if (grid.empty()) throw std::invalid_argument("monotonicity grid is empty");
  for (const auto& e : grid) {
    if (!(e.r1 > 0.0 && e.r2 > 0.0) || e.r1 > e.r2 || !(e.eps > 0.0 && e.eps <= 2.0)) {
      throw std::invalid_argument("invalid monotonicity grid entry");
    }
  }
  return std::all_of(grid.begin(), grid.end(),
                     [&](const MonotoneGridEntry& e) { return m(e.r1, e.eps) >= m(e.r2, e.eps); });
}

std::vector<MonotoneGridEntry> default_monotone_grid() {
  const std::vector<double> radii{1e-2, 1e-1, 0.5, 1.0, 2.0, 5.0, 10.0, 1e2};
  std::vector<MonotoneGridEntry> grid;
  for (int p = -10; p <= 1; ++p) {
    const double eps = std::ldexp(1.0, p);
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) grid.push_back({radii[i], radii[i + 1], eps});
  }
  return grid;
}

}  // namespace geofix
