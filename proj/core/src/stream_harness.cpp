#include "rankstream/stream_harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rankstream/drift_theory.hpp"

namespace rankstream {

void DriftSchedule::validate() const {
  if (segments.empty()) throw std::invalid_argument("drift schedule has no segments");
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("drift schedule theta must be finite and non-negative");
  }
  const std::size_t n = segments.front().center.size();
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (segments[k].center.size() != n) {
      throw std::invalid_argument("segment " + std::to_string(k) + " center has " +
                                  std::to_string(segments[k].center.size()) + " items, expected " +
                                  std::to_string(n));
    }
    if (segments[k].length == 0) {
      throw std::invalid_argument("segment " + std::to_string(k) + " has zero length");
    }
  }
}

std::size_t DriftSchedule::total_length() const {
  return std::accumulate(segments.begin(), segments.end(), std::size_t{0},
                         [](std::size_t acc, const Segment& s) { return acc + s.length; });
}

double one_third_uniform_theta(std::size_t n) {
  const double nd = static_cast<double>(n);
  return calibrate_theta(n, nd * (nd - 1.0) / 12.0);
}

DriftSchedule incremental_reversal_schedule(std::size_t n, std::size_t T, double theta) {
  if (n < 2) throw std::invalid_argument("incremental_reversal_schedule needs n >= 2");
  if (T == 0) throw std::invalid_argument("incremental_reversal_schedule needs T >= 1");
  DriftSchedule schedule;
  schedule.theta = theta;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  auto push_center = [&] {
    schedule.segments.push_back({inverse(Permutation(Permutation::Unchecked{}, order)), T});
  };
  push_center();
  for (std::size_t pass = 0; pass + 1 < n; ++pass) {
    for (std::size_t k = 0; k + 1 < n - pass; ++k) {
      if (order[k] < order[k + 1]) {
        std::swap(order[k], order[k + 1]);
        push_center();
      }
    }
  }
  schedule.validate();
  return schedule;
}

DriftSchedule incremental_reversal_schedule(std::size_t n, std::size_t T) {
  return incremental_reversal_schedule(n, T, one_third_uniform_theta(n));
}

StreamGenerator::StreamGenerator(DriftSchedule schedule, Rng rng)
    : schedule_(std::move(schedule)), rng_(std::move(rng)) {
  schedule_.validate();
  models_.reserve(schedule_.segments.size());
  for (const auto& segment : schedule_.segments) models_.emplace_back(segment.center, schedule_.theta);
}

std::optional<StreamItem> StreamGenerator::next() {
  while (segment_ < schedule_.segments.size() && offset_ >= schedule_.segments[segment_].length) {
    ++segment_;
    offset_ = 0;
  }
  if (segment_ >= schedule_.segments.size()) return std::nullopt;
  StreamItem item{models_[segment_].sample(rng_), schedule_.segments[segment_].center, step_,
                  segment_, offset_};
  ++offset_;
  ++step_;
  return item;
}

std::uint64_t test_then_train(UBordaState& state, const Permutation& incoming,
                              const Permutation& truth) {
  const std::uint64_t error = kendall_distance(ranking_from_scores(state.scores()), truth);
  state.update(incoming);
  return error;
}

void ExperimentConfig::validate() const {
  if (n < 2) throw std::invalid_argument("experiment needs n >= 2");
  if (T < 1) throw std::invalid_argument("experiment needs T >= 1");
  if (runs < 1) throw std::invalid_argument("experiment needs runs >= 1");
  if (rho_values.empty()) throw std::invalid_argument("experiment needs at least one rho");
  for (double rho : rho_values) {
    if (!(rho > 0.0 && rho <= 1.0)) {
      throw std::invalid_argument("rho must lie in (0, 1], got " + std::to_string(rho));
    }
  }
  if (theta && (!(*theta >= 0.0) || !std::isfinite(*theta))) {
    throw std::invalid_argument("theta must be finite and non-negative");
  }
}

Rng experiment_rng(std::uint64_t seed, std::size_t run, std::size_t rho_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(rho_index)};
  return Rng(seq);
}

std::vector<EvaluationRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const double theta = config.theta ? *config.theta : one_third_uniform_theta(config.n);
  const DriftSchedule schedule = incremental_reversal_schedule(config.n, config.T, theta);
  const std::size_t length = schedule.total_length();

  std::vector<EvaluationRecord> records;
  records.reserve(config.rho_values.size() * config.runs * length);
  for (std::size_t rho_index = 0; rho_index < config.rho_values.size(); ++rho_index) {
    const double rho = config.rho_values[rho_index];
    for (std::size_t run = 0; run < config.runs; ++run) {
      StreamGenerator stream(schedule, experiment_rng(config.seed, run, rho_index));
      UBordaState state(config.n, rho);
      while (auto item = stream.next()) {
        const std::uint64_t error = test_then_train(state, item->ranking, item->truth);
        records.push_back({rho, run, item->step, item->since_drift, error});
      }
    }
  }
  return records;
}

std::vector<double> default_rho_values(std::uint64_t m_target) {
  const double rho_star = std::round(optimal_rho(m_target) * 1e4) / 1e4;
  return {0.8, rho_star, 1.0};
}

std::vector<SummaryRow> summarize(std::span<const EvaluationRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  struct Accumulator {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::vector<double> rho_order;
  std::vector<std::map<std::size_t, Accumulator>> groups;
  for (const auto& record : records) {
    auto it = std::find(rho_order.begin(), rho_order.end(), record.rho);
    std::size_t g = static_cast<std::size_t>(it - rho_order.begin());
    if (it == rho_order.end()) {
      rho_order.push_back(record.rho);
      groups.emplace_back();
    }
    Accumulator& acc = groups[g][record.step];
    ++acc.count;
    const double x = static_cast<double>(record.error);
    const double delta = x - acc.mean;
    acc.mean += delta / static_cast<double>(acc.count);
    acc.m2 += delta * (x - acc.mean);
  }
  std::vector<SummaryRow> rows;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& [step, acc] : groups[g]) {
      double half_width = 0.0;
      if (acc.count > 1) {
        const double variance = acc.m2 / static_cast<double>(acc.count - 1);
        half_width = 1.96 * std::sqrt(variance / static_cast<double>(acc.count));
      }
      rows.push_back({rho_order[g], step, acc.mean, acc.mean - half_width, acc.mean + half_width});
    }
  }
  return rows;
}

}  // namespace rankstream
