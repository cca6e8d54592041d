#include "geofix/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace geofix {

LambdaSchedule::LambdaSchedule(std::vector<double> values, std::optional<double> tail)
    : values_(std::move(values)), tail_(tail) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("schedule value outside [0, 1]");
  }
  if (tail_ && !(*tail_ >= 0.0 && *tail_ <= 1.0)) {
    throw std::invalid_argument("schedule tail outside [0, 1]");
  }
}

double LambdaSchedule::operator[](std::uint64_t n) const {
  if (n < values_.size()) return values_[static_cast<std::size_t>(n)];
  if (!tail_) throw ScheduleExhausted("schedule exhausted at step " + std::to_string(n));
  return *tail_;
}

namespace {

Rational term(double lambda) {
  const Rational l(lambda);
  return l * (1 - l);
}

}  // namespace

Rational schedule_prefix_sum(const LambdaSchedule& schedule, std::uint64_t m) {
  Rational sum = 0;
  const auto& values = schedule.values();
  const std::uint64_t listed = std::min<std::uint64_t>(m + 1, values.size());
  for (std::uint64_t i = 0; i < listed; ++i) sum += term(values[static_cast<std::size_t>(i)]);
  if (m + 1 > values.size()) {
    if (!schedule.tail()) throw ScheduleExhausted("schedule has no tail value");
    sum += Rational(m + 1 - values.size()) * term(*schedule.tail());
  }
  return sum;
}

ThetaWitness make_theta(const LambdaSchedule& schedule) {
  if (!schedule.tail()) throw NoThetaWitness("schedule without a tail has no theta witness");
  const Rational tail_term = term(*schedule.tail());
  if (tail_term == 0) {
    throw NoThetaWitness("tail lambda in {0, 1}: sum lambda (1 - lambda) does not diverge");
  }
  auto prefix = std::make_shared<std::vector<Rational>>();
  Rational running = 0;
  for (double v : schedule.values()) {
    running += term(v);
    prefix->push_back(running);
  }
  ThetaWitness theta;
  theta.label = "minimal";
  theta.fn = [prefix, tail_term](std::uint64_t n) -> std::uint64_t {
    if (n == 0) return 0;
    const Rational target(n);
    auto it = std::lower_bound(prefix->begin(), prefix->end(), target);
    if (it != prefix->end()) return static_cast<std::uint64_t>(it - prefix->begin());
    const Rational listed_sum = prefix->empty() ? Rational(0) : prefix->back();
    // least m >= L with listed_sum + (m - L + 1) c >= n
    const std::uint64_t steps = ceil_to_u64((target - listed_sum) / tail_term);
    const std::uint64_t listed = prefix->size();
    if (steps > std::numeric_limits<std::uint64_t>::max() - listed) {
      throw std::overflow_error("theta value exceeds 64-bit range");
    }
    return listed + steps - 1;
  };
  return theta;
}

ThetaWitness linear_theta(std::uint64_t factor) {
  ThetaWitness theta;
  theta.label = "linear:" + std::to_string(factor);
  theta.fn = [factor](std::uint64_t n) -> std::uint64_t {
    if (factor != 0 && n > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw std::overflow_error("theta value exceeds 64-bit range");
    }
    return factor * n;
  };
  return theta;
}

bool theta_is_witness(const ThetaWitness& theta, const LambdaSchedule& schedule,
                      std::uint64_t n_max) {
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    if (schedule_prefix_sum(schedule, theta(n)) < Rational(n)) return false;
  }
  return true;
}

std::uint64_t rate_inner_argument(double eps, double b, const Modulus& m) {
  const double b1 = b + 1.0;
  const double denom = eps * m(b1, eps / b1);
  const double q = b1 / denom;
  if (!std::isfinite(q) || q >= 0x1.0p63) throw std::overflow_error("rate bound argument overflows");
  const Rational exact = Rational(b1) / Rational(denom);
  if (denominator(exact) == 1) return ceil_to_u64(exact);
  return static_cast<std::uint64_t>(std::ceil(std::nextafter(q, std::numeric_limits<double>::infinity())));
}

std::uint64_t rate_bound(double eps, const ThetaWitness& theta, double b, const Modulus& m) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::domain_error("eps must be positive");
  if (!(b > 0.0) || !std::isfinite(b)) throw std::domain_error("b must be positive");
  if (!(eps < 2.0 * b)) return 0;
  const auto grid = default_monotone_grid();
  if (!check_monotone(m, grid)) {
    throw std::domain_error("modulus '" + m.name() + "' is not nonincreasing in r");
  }
  return theta(rate_inner_argument(eps, b, m));
}

bool residual_monotone(std::span<const double> residuals, double tol) {
  if (residuals.empty()) throw std::invalid_argument("empty residual sequence");
  for (std::size_t n = 0; n + 1 < residuals.size(); ++n) {
    if (residuals[n + 1] > residuals[n] + tol) return false;
  }
  return true;
}

bool check_rate(std::span<const double> residuals, std::uint64_t phi, double eps, double tol) {
  if (residuals.size() < phi + 1) {
    throw std::length_error("trace of length " + std::to_string(residuals.size()) +
                            " ends before Phi = " + std::to_string(phi));
  }
  return std::all_of(residuals.begin() + static_cast<std::ptrdiff_t>(phi), residuals.end(),
                     [&](double r) { return r <= eps + tol; });
}

}  // namespace geofix
