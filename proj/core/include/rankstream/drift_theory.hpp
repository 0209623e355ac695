#pragma once

// Recovery guarantees for the fading-factor Borda after a single adjacent-swap
// drift of the modal ranking: expected-rank gaps, Hoeffding-style deviation
// radii, sample-complexity bounds and the fading factor that maximises the
// recovery margin.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rankstream/mallows.hpp"
#include "rankstream/permutation.hpp"

namespace rankstream {

/// Gap E[s(j)] - E[s(i)] under a Mallows model, evaluated two independent ways.
struct ExpectedRankGap {
  double from_expected_ranks = 0.0;  // difference of expected_rank_vector entries
  double from_pair_sum = 0.0;        // sum over {s : s(i) < s(j)} of (s(j)-s(i)) (p(s) - p(s tau))

  double value() const noexcept { return from_expected_ranks; }
};

/// Requires n <= kMaxExactExpectationSize and distinct valid items.
ExpectedRankGap delta_ij(const MallowsModel& model, int i, int j);

/// End of a summation window; either a finite index or +infinity.
class WindowEnd {
 public:
  static constexpr WindowEnd infinite() noexcept { return WindowEnd(); }
  static constexpr WindowEnd at(std::uint64_t s) noexcept { return WindowEnd(s); }

  constexpr bool is_infinite() const noexcept { return !finite_; }
  constexpr std::uint64_t index() const noexcept { return index_; }

 private:
  constexpr WindowEnd() noexcept = default;
  constexpr explicit WindowEnd(std::uint64_t s) noexcept : index_(s), finite_(true) {}

  std::uint64_t index_ = 0;
  bool finite_ = false;
};

/// Deviation radius of the normalised fading score over window [r, s]:
///   (n-1)(1-rho) sqrt((rho^{2r} - rho^{2s}) / (2(1-rho^2)) * log(2/delta)),
/// with rho^{2s} = 0 when s is infinite. Requires rho, delta in (0,1) and r <= s.
double epsilon(std::size_t n, double rho, double delta, std::uint64_t r, WindowEnd s);

/// log(0.5) / log(rho): the fading score recovers the new ranking in expectation
/// once more than this many rankings followed the drift.
double expected_recovery_bound(double rho);

/// Expected fading-score gap E[B(i) - B(j)] of the swapped pair m rankings after
/// the drift, for a stream that was infinitely long before it:
/// gap * (sum_{t<m} rho^t - sum_{t>=m} rho^t). Positive means the new order.
double expected_score_gap(double rho, std::uint64_t m, double gap);

struct DriftBoundInputs {
  std::size_t n = 0;
  double rho = 0.0;
  double theta = 0.0;
  double delta = 0.0;  // failure probability
  ItemPair pair;       // items whose adjacent ranks swap at the drift
  std::uint64_t m = 1; // rankings since the drift
  /// Explicit expected-rank gap; otherwise computed exactly under MM(identity, theta).
  std::optional<double> gap_override;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct HighProbabilityBound {
  enum class Status { kFeasible, kImmediate, kInfeasible };

  Status status = Status::kInfeasible;
  double samples = 0.0;   // log_rho(argument) when feasible, 0 when immediate
  double argument = 0.0;  // argument of log_rho
  double gap = 0.0;       // expected-rank gap used

  bool feasible() const noexcept { return status != Status::kInfeasible; }
  /// True when m strictly exceeds the bound (never for an infeasible bound).
  bool satisfied_by(std::uint64_t m) const noexcept {
    return feasible() && static_cast<double>(m) > samples;
  }
};

/// High-probability sample complexity for gap > 0:
///   argument = -(1-rho)^2 / sqrt(1-rho^2) * n sqrt(0.5 log(1/delta)) / gap + 0.5.
/// Infeasible when argument <= 0, immediate (0) when argument >= 1.
HighProbabilityBound hp_recovery_bound(std::size_t n, double rho, double delta, double gap);
HighProbabilityBound hp_recovery_bound(const DriftBoundInputs& inputs);

/// Expected-rank gap implied by the inputs (override or exact enumeration).
double bound_gap(const DriftBoundInputs& inputs);

/// Recovery margin as a function of the fading factor for m post-drift rankings:
/// the margin (2 rho^m - 1)/(rho - 1) divided by the summed scale-free deviation
/// radii of the post-drift and pre-drift windows. Requires rho in (0,1), m >= 1.
/// Arguments above 1 - 1e-9 are evaluated at 1 - 1e-9.
double f_objective(double rho, std::uint64_t m);

/// Inclusive search interval used by optimal_rho.
inline constexpr double kRhoSearchLow = 1e-4;
inline constexpr double kRhoSearchHigh = 1.0 - 1e-6;

/// argmax of f_objective(., m) on [kRhoSearchLow, kRhoSearchHigh] by golden-section
/// search, to 1e-6 or better in rho.
double optimal_rho(std::uint64_t m);

/// Experimental: delta = exp((2 n sqrt(2) / (f gap))^2). The exponent is positive,
/// so the value always exceeds 1 and is not a usable failure probability; a sign
/// appears to be missing from this back-out.
double failure_probability_closed_form(std::size_t n, double f_value, double gap);

}  // namespace rankstream
