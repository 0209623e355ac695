#pragma once

// Voting rules over complete rankings: Borda, the incremental fading-factor
// Borda ("uBorda"), weighted pairwise matrices, exhaustive Kemeny and Copeland.
//
// Ties are always broken in favour of the lower item index.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankstream/permutation.hpp"

namespace rankstream {

/// Ranks items by ascending score; equal scores keep item-index order.
Permutation ranking_from_scores(std::span<const double> scores);

struct WeightedVote {
  Permutation ranking;
  double weight = 1.0;
};

struct BordaResult {
  std::vector<double> scores;  // average rank per item
  Permutation ranking;
};

/// Throws std::invalid_argument on an empty sample or mixed sizes.
BordaResult borda(std::span<const Permutation> sample);

/// Weighted average rank per item (sum_v w_v s_v(i) / sum_v w_v); equals borda()
/// for unit weights. Requires a positive total weight.
BordaResult weighted_borda(std::span<const WeightedVote> votes);

/// Streaming Borda with exponential forgetting. Each update computes
/// score[i] <- incoming(i) + rho * score[i] in O(n) time and O(n) memory.
/// Scores are the raw recurrence (no (1 - rho) normalisation). With rho = 1
/// and integer ranks the running sums are exact up to 2^53.
class UBordaState {
 public:
  /// Requires n >= 1 and rho in (0, 1].
  UBordaState(std::size_t n, double rho);
  /// Resumes from a snapshot of raw scores (all >= 0) after `count` updates.
  UBordaState(std::vector<double> scores, double rho, std::uint64_t count);

  void update(const Permutation& incoming);

  /// Requires at least one absorbed ranking.
  Permutation ranking() const;

  std::span<const double> scores() const noexcept { return scores_; }
  /// (1 - rho) * scores; only meaningful for rho < 1.
  std::vector<double> normalized_scores() const;

  double rho() const noexcept { return rho_; }
  std::size_t size() const noexcept { return scores_.size(); }
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::vector<double> scores_;
  double rho_;
  std::uint64_t count_ = 0;
};

/// Value-returning form of UBordaState::update.
UBordaState uborda_update(UBordaState state, const Permutation& incoming);

/// Row-major n x n matrices of weighted pairwise counts.
struct PairwiseMatrices {
  std::size_t n = 0;
  std::vector<double> n_matrix;  // N_ij: weight of votes ranking i before j
  std::vector<double> m_matrix;  // M_ij = N_ij - N_ji
  double total_weight = 0.0;

  /// 1-based item indices.
  double frequency(int i, int j) const { return n_matrix[index(i, j)]; }
  double margin(int i, int j) const { return m_matrix[index(i, j)]; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * n + static_cast<std::size_t>(j - 1);
  }
};

/// Throws std::invalid_argument on negative or non-finite weights, mixed sizes or empty input.
PairwiseMatrices pairwise_matrices(std::span<const WeightedVote> votes);

/// Sum over pairs ranked j-before-i by `candidate` of M_ij.
double kemeny_objective(const PairwiseMatrices& matrices, const Permutation& candidate);

/// Exhaustive minimiser of kemeny_objective over S_n (n <= kMaxEnumerationSize,
/// n! candidates). Ties resolve to the lexicographically smallest rank vector.
Permutation kemeny_exact(const PairwiseMatrices& matrices);
Permutation kemeny_exact(std::span<const WeightedVote> votes);

/// Ranks items by descending number of strict pairwise majority wins (M_ij > 0).
Permutation copeland(const PairwiseMatrices& matrices);

/// Weights rho^(k-1-t) for line t of k, so the last vote is the most recent.
std::vector<WeightedVote> fading_weights(std::span<const Permutation> oldest_first, double rho);

}  // namespace rankstream
