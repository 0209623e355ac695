#include "rankstream/drift_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rankstream {
namespace {

void require_open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1), got " +
                                std::to_string(value));
  }
}

double guarded(double denominator) {
  constexpr double kFloor = 1e-15;
  if (std::abs(denominator) >= kFloor) return denominator;
  return denominator < 0.0 ? -kFloor : kFloor;
}

}  // namespace

ExpectedRankGap delta_ij(const MallowsModel& model, int i, int j) {
  const std::size_t n = model.size();
  ItemPair{i, j}.validate(n);
  if (n > kMaxExactExpectationSize) {
    throw std::invalid_argument("delta_ij enumerates S_n; n=" + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxExactExpectationSize));
  }
  ExpectedRankGap gap;
  const auto expected = model.expected_rank_vector();
  gap.from_expected_ranks = expected[static_cast<std::size_t>(j - 1)] -
                            expected[static_cast<std::size_t>(i - 1)];

  double sum = 0.0;
  for_each_permutation(n, [&](const Permutation& s) {
    if (s.rank(i) < s.rank(j)) {
      const double spread = s.rank(j) - s.rank(i);
      sum += spread * (model.pmf(s) - model.pmf(swap_items(s, i, j)));
    }
  });
  gap.from_pair_sum = sum;
  return gap;
}

double epsilon(std::size_t n, double rho, double delta, std::uint64_t r, WindowEnd s) {
  require_open_unit(rho, "rho");
  require_open_unit(delta, "delta");
  if (n == 0) throw std::invalid_argument("epsilon: n must be at least 1");
  if (!s.is_infinite() && s.index() < r) {
    throw std::invalid_argument("epsilon: window start exceeds window end");
  }
  const double head = std::pow(rho, 2.0 * static_cast<double>(r));
  const double tail = s.is_infinite() ? 0.0 : std::pow(rho, 2.0 * static_cast<double>(s.index()));
  const double radicand = std::max(0.0, (head - tail) / (2.0 * (1.0 - rho * rho)) * std::log(2.0 / delta));
  return (static_cast<double>(n) - 1.0) * (1.0 - rho) * std::sqrt(radicand);
}

double expected_recovery_bound(double rho) {
  require_open_unit(rho, "rho");
  return std::log(0.5) / std::log(rho);
}

double expected_score_gap(double rho, std::uint64_t m, double gap) {
  require_open_unit(rho, "rho");
  const double rho_m = std::pow(rho, static_cast<double>(m));
  return gap * (1.0 - 2.0 * rho_m) / (1.0 - rho);
}

void DriftBoundInputs::validate() const {
  if (n < 2) throw std::invalid_argument("bounds need n >= 2");
  require_open_unit(rho, "rho");
  require_open_unit(delta, "delta");
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("theta must be finite and non-negative");
  }
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  pair.validate(n);
}

double bound_gap(const DriftBoundInputs& inputs) {
  inputs.validate();
  if (inputs.gap_override) return *inputs.gap_override;
  const auto center = Permutation::identity(inputs.n);
  if (std::abs(center.rank(inputs.pair.i) - center.rank(inputs.pair.j)) != 1 ||
      center.rank(inputs.pair.i) > center.rank(inputs.pair.j)) {
    throw std::invalid_argument("pair must be (k, k+1): the drift swaps adjacent ranks");
  }
  return delta_ij(MallowsModel(center, inputs.theta), inputs.pair.i, inputs.pair.j).value();
}

HighProbabilityBound hp_recovery_bound(std::size_t n, double rho, double delta, double gap) {
  require_open_unit(rho, "rho");
  require_open_unit(delta, "delta");
  if (!(gap > 0.0)) {
    throw std::invalid_argument("hp_recovery_bound requires a positive expected-rank gap, got " +
                                std::to_string(gap));
  }
  HighProbabilityBound bound;
  bound.gap = gap;
  const double scale = -(1.0 - rho) * (1.0 - rho) / std::sqrt(1.0 - rho * rho);
  bound.argument =
      scale * (static_cast<double>(n) * std::sqrt(0.5 * std::log(1.0 / delta)) / gap) + 0.5;
  if (bound.argument <= 0.0) {
    bound.status = HighProbabilityBound::Status::kInfeasible;
  } else if (bound.argument >= 1.0) {
    bound.status = HighProbabilityBound::Status::kImmediate;
    bound.samples = 0.0;
  } else {
    bound.status = HighProbabilityBound::Status::kFeasible;
    bound.samples = std::log(bound.argument) / std::log(rho);
  }
  return bound;
}

HighProbabilityBound hp_recovery_bound(const DriftBoundInputs& inputs) {
  return hp_recovery_bound(inputs.n, inputs.rho, inputs.delta, bound_gap(inputs));
}

double f_objective(double rho, std::uint64_t m) {
  require_open_unit(rho, "rho");
  if (m < 1) throw std::invalid_argument("f_objective: m must be at least 1");
  rho = std::min(rho, 1.0 - 1e-9);
  const double md = static_cast<double>(m);
  const double rho_m = std::pow(rho, md);
  const double rho_2m = rho_m * rho_m;
  const double one_minus_rho2 = 1.0 - rho * rho;

  const double margin = (2.0 * rho_m - 1.0) / guarded(rho - 1.0);
  // Scale-free deviation radii: window [m, inf) then window [0, m).
  const double before = std::sqrt(std::max(0.0, rho_2m / one_minus_rho2)) * (1.0 - rho) / guarded(rho_m);
  const double after = std::sqrt(std::max(0.0, (rho_2m - 1.0) / guarded(rho * rho - 1.0))) *
                       (rho - 1.0) / guarded(rho_m - 1.0);
  return margin / guarded(before + after);
}

double optimal_rho(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("optimal_rho: m must be at least 1");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = kRhoSearchLow;
  double b = kRhoSearchHigh;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f_objective(c, m);
  double fd = f_objective(d, m);
  while (b - a > 1e-10) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f_objective(c, m);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f_objective(d, m);
    }
  }
  const double mid = 0.5 * (a + b);
  // The maximiser can sit on the interval edge (m = 1); compare against the endpoints.
  double best = mid;
  double best_value = f_objective(mid, m);
  for (double edge : {kRhoSearchLow, kRhoSearchHigh}) {
    const double value = f_objective(edge, m);
    if (value > best_value) {
      best = edge;
      best_value = value;
    }
  }
  return best;
}

double failure_probability_closed_form(std::size_t n, double f_value, double gap) {
  if (!(f_value != 0.0) || !(gap != 0.0)) {
    throw std::invalid_argument("failure_probability_closed_form: f and gap must be non-zero");
  }
  const double ratio = 2.0 * static_cast<double>(n) * std::sqrt(2.0) / (f_value * gap);
  return std::exp(ratio * ratio);
}

}  // namespace rankstream
