#pragma once

// Evolving Mallows streams with abrupt drifts of the modal ranking, and the
// test-then-train evaluation of the fading-factor Borda over them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rankstream/aggregation.hpp"
#include "rankstream/mallows.hpp"
#include "rankstream/permutation.hpp"

namespace rankstream {

struct Segment {
  Permutation center;
  std::size_t length = 0;
};

struct DriftSchedule {
  std::vector<Segment> segments;
  double theta = 0.0;

  /// Throws std::invalid_argument on empty/mixed-size segments, zero lengths or bad theta.
  void validate() const;
  std::size_t items() const { return segments.front().center.size(); }
  std::size_t total_length() const;
  std::size_t drift_count() const { return segments.empty() ? 0 : segments.size() - 1; }
};

/// theta whose expected distance is one third of the uniform mean n(n-1)/4.
double one_third_uniform_theta(std::size_t n);

/// Adjacent-transposition path from identity(n) to reverse(n): bubble sort of the
/// preference order, left-to-right passes, each swap a new segment of length T.
/// Yields n(n-1)/2 + 1 segments (n(n-1)/2 drifts).
DriftSchedule incremental_reversal_schedule(std::size_t n, std::size_t T, double theta);
DriftSchedule incremental_reversal_schedule(std::size_t n, std::size_t T);

struct StreamItem {
  Permutation ranking;
  Permutation truth;
  std::size_t step = 0;         // global 0-based index
  std::size_t segment = 0;
  std::size_t since_drift = 0;  // index within the current segment
};

/// Lazily draws i.i.d. rankings from each segment's Mallows model in turn.
class StreamGenerator {
 public:
  StreamGenerator(DriftSchedule schedule, Rng rng);

  /// Next item, or nullopt once every segment is exhausted.
  std::optional<StreamItem> next();

 private:
  DriftSchedule schedule_;
  Rng rng_;
  std::vector<MallowsModel> models_;
  std::size_t segment_ = 0;
  std::size_t offset_ = 0;
  std::size_t step_ = 0;
};

/// Scores the current estimate against `truth`, then absorbs `incoming`.
/// Before the first update the estimate is the identity (all-zero scores, index tie-break).
std::uint64_t test_then_train(UBordaState& state, const Permutation& incoming,
                              const Permutation& truth);

struct ExperimentConfig {
  std::size_t n = 7;
  std::size_t T = 100;
  std::vector<double> rho_values{0.8, 0.9295, 1.0};
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::uint64_t m_target = 20;
  /// Defaults to one_third_uniform_theta(n).
  std::optional<double> theta;

  void validate() const;
};

/// Fading factors {0.8, optimal_rho(m_target) rounded to 4 decimals, 1.0}.
std::vector<double> default_rho_values(std::uint64_t m_target);

struct EvaluationRecord {
  double rho = 0.0;
  std::size_t run = 0;
  std::size_t step = 0;
  std::size_t since_drift = 0;
  std::uint64_t error = 0;

  friend bool operator==(const EvaluationRecord&, const EvaluationRecord&) = default;
};

/// Random stream for (seed, run, rho index); independent across the triple.
Rng experiment_rng(std::uint64_t seed, std::size_t run, std::size_t rho_index);

/// Records ordered by (rho index, run, step); deterministic given the config.
std::vector<EvaluationRecord> run_experiment(const ExperimentConfig& config);

struct SummaryRow {
  double rho = 0.0;
  std::size_t step = 0;
  double mean_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Mean and normal-approximation 95% band (mean +/- 1.96 SE over runs) per (rho, step),
/// rho groups in first-appearance order, steps ascending. A single run yields a
/// zero-width band. Throws std::invalid_argument on empty input.
std::vector<SummaryRow> summarize(std::span<const EvaluationRecord> records);

}  // namespace rankstream
