#include "rankstream/mallows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rankstream {
namespace {

void require_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("theta must be finite and non-negative, got " +
                                std::to_string(theta));
  }
}

// Mean of the truncated geometric on {0..a-1} with P(r) proportional to e^{-theta r}.
double truncated_geometric_mean(int a, double theta) {
  const double x = a * theta;
  if (x < 1e-2) {
    // Series of 1/expm1(theta) - a/expm1(a theta) around zero.
    const double a2 = static_cast<double>(a) * a;
    return (a - 1) / 2.0 - theta * (a2 - 1.0) / 12.0 + theta * theta * theta * (a2 * a2 - 1.0) / 720.0;
  }
  return 1.0 / std::expm1(theta) - a / std::expm1(x);
}

int sample_truncated_geometric(int a, double theta, Rng& rng) {
  const double u = uniform01(rng);
  double r;
  if (theta < kThetaZero) {
    r = std::floor(u * a);
  } else {
    const double mass = -std::expm1(-a * theta);
    r = std::floor(-std::log1p(-u * mass) / theta);
  }
  return std::clamp(static_cast<int>(r), 0, a - 1);
}

}  // namespace

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

MallowsModel::MallowsModel(Permutation center, double theta)
    : center_(std::move(center)), theta_(theta), log_psi_(0.0) {
  require_theta(theta);
  log_psi_ = log_psi(center_.size(), theta_);
}

double MallowsModel::log_pmf(const Permutation& s) const {
  return -theta_ * static_cast<double>(kendall_distance(s, center_)) - log_psi_;
}

double MallowsModel::pmf(const Permutation& s) const { return std::exp(log_pmf(s)); }

Permutation MallowsModel::sample(Rng& rng) const {
  const std::size_t n = size();
  const auto code = sample_inversion_vector(n, theta_, rng);
  // Decode the Lehmer code into tau (relative to the identity), then relabel by the center.
  std::vector<int> remaining(n);
  for (std::size_t k = 0; k < n; ++k) remaining[k] = static_cast<int>(k + 1);
  std::vector<int> tau(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t pick = k + 1 < n ? static_cast<std::size_t>(code[k]) : 0;
    tau[k] = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::vector<int> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    ranks[i] = tau[static_cast<std::size_t>(center_.ranks()[i] - 1)];
  }
  return Permutation(Permutation::Unchecked{}, std::move(ranks));
}

std::vector<double> MallowsModel::expected_rank_vector() const {
  const std::size_t n = size();
  if (n > kMaxExactExpectationSize) {
    throw std::invalid_argument("expected_rank_vector enumerates S_n; n=" + std::to_string(n) +
                                " exceeds " + std::to_string(kMaxExactExpectationSize));
  }
  std::vector<double> expected(n, 0.0);
  for_each_permutation(n, [&](const Permutation& s) {
    const double p = pmf(s);
    for (std::size_t i = 0; i < n; ++i) expected[i] += p * s.ranks()[i];
  });
  return expected;
}

double log_psi(std::size_t n, double theta) {
  require_theta(theta);
  double total = 0.0;
  if (theta < kThetaZero) {
    for (std::size_t a = 2; a <= n; ++a) total += std::log(static_cast<double>(a));
    return total;
  }
  const double denom = std::expm1(-theta);
  for (std::size_t a = 2; a <= n; ++a) {
    total += std::log(std::expm1(-static_cast<double>(a) * theta) / denom);
  }
  return total;
}

double expected_distance(std::size_t n, double theta) {
  require_theta(theta);
  if (theta < kThetaZero) return static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 4.0;
  double total = 0.0;
  for (std::size_t a = 2; a <= n; ++a) total += truncated_geometric_mean(static_cast<int>(a), theta);
  return total;
}

double calibrate_theta(std::size_t n, double target_distance) {
  const double uniform_mean = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 4.0;
  if (!(target_distance > 0.0) || !(target_distance < uniform_mean)) {
    throw std::invalid_argument("calibrate_theta: target " + std::to_string(target_distance) +
                                " outside (0, " + std::to_string(uniform_mean) + ")");
  }
  double lo = kThetaZero;
  double hi = 50.0;
  if (expected_distance(n, lo) <= target_distance) return lo;
  while (expected_distance(n, hi) > target_distance) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw std::invalid_argument("calibrate_theta: target too small");
  }
  // expected_distance is strictly decreasing in theta.
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (expected_distance(n, mid) > target_distance) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double d_lo = std::abs(expected_distance(n, lo) - target_distance);
  const double d_hi = std::abs(expected_distance(n, hi) - target_distance);
  return d_lo <= d_hi ? lo : hi;
}

std::vector<int> sample_inversion_vector(std::size_t n, double theta, Rng& rng) {
  require_theta(theta);
  std::vector<int> code(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    code[k] = sample_truncated_geometric(static_cast<int>(n - k), theta, rng);
  }
  return code;
}

}  // namespace rankstream
