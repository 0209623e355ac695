#include "rankstream/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rankstream {
namespace {

void require_uniform(std::size_t n, const Permutation& p, std::size_t position) {
  if (p.size() != n) {
    throw std::invalid_argument("ranking " + std::to_string(position + 1) + " has " +
                                std::to_string(p.size()) + " items, expected " + std::to_string(n));
  }
}

}  // namespace

Permutation ranking_from_scores(std::span<const double> scores) {
  std::vector<int> items(scores.size());
  std::iota(items.begin(), items.end(), 0);
  std::stable_sort(items.begin(), items.end(), [&](int a, int b) {
    return scores[static_cast<std::size_t>(a)] < scores[static_cast<std::size_t>(b)];
  });
  std::vector<int> ranks(scores.size());
  for (std::size_t pos = 0; pos < items.size(); ++pos) {
    ranks[static_cast<std::size_t>(items[pos])] = static_cast<int>(pos + 1);
  }
  return Permutation(Permutation::Unchecked{}, std::move(ranks));
}

BordaResult borda(std::span<const Permutation> sample) {
  if (sample.empty()) throw std::invalid_argument("borda: empty sample");
  const std::size_t n = sample.front().size();
  std::vector<double> sums(n, 0.0);
  for (std::size_t v = 0; v < sample.size(); ++v) {
    require_uniform(n, sample[v], v);
    for (std::size_t i = 0; i < n; ++i) sums[i] += sample[v].ranks()[i];
  }
  const double k = static_cast<double>(sample.size());
  for (double& s : sums) s /= k;
  Permutation ranking = ranking_from_scores(sums);
  return {std::move(sums), std::move(ranking)};
}

BordaResult weighted_borda(std::span<const WeightedVote> votes) {
  if (votes.empty()) throw std::invalid_argument("weighted_borda: no votes");
  const std::size_t n = votes.front().ranking.size();
  std::vector<double> sums(n, 0.0);
  double total = 0.0;
  for (std::size_t v = 0; v < votes.size(); ++v) {
    require_uniform(n, votes[v].ranking, v);
    const double w = votes[v].weight;
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("vote " + std::to_string(v + 1) + " has invalid weight");
    }
    for (std::size_t i = 0; i < n; ++i) sums[i] += w * votes[v].ranking.ranks()[i];
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("weighted_borda: total weight is zero");
  for (double& s : sums) s /= total;
  Permutation ranking = ranking_from_scores(sums);
  return {std::move(sums), std::move(ranking)};
}

UBordaState::UBordaState(std::size_t n, double rho) : scores_(n, 0.0), rho_(rho) {
  if (n == 0) throw std::invalid_argument("UBordaState: n must be at least 1");
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("UBordaState: rho must lie in (0, 1], got " + std::to_string(rho));
  }
}

UBordaState::UBordaState(std::vector<double> scores, double rho, std::uint64_t count)
    : scores_(std::move(scores)), rho_(rho), count_(count) {
  if (scores_.empty()) throw std::invalid_argument("UBordaState: n must be at least 1");
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("UBordaState: rho must lie in (0, 1], got " + std::to_string(rho));
  }
  for (double s : scores_) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("UBordaState: scores must be finite and non-negative");
    }
  }
}

void UBordaState::update(const Permutation& incoming) {
  if (incoming.size() != scores_.size()) {
    throw std::invalid_argument("uborda update: ranking has " + std::to_string(incoming.size()) +
                                " items, state has " + std::to_string(scores_.size()));
  }
  const auto ranks = incoming.ranks();
  for (std::size_t i = 0; i < scores_.size(); ++i) scores_[i] = ranks[i] + rho_ * scores_[i];
  ++count_;
}

Permutation UBordaState::ranking() const {
  if (count_ == 0) throw std::logic_error("uborda ranking requested before any update");
  return ranking_from_scores(scores_);
}

std::vector<double> UBordaState::normalized_scores() const {
  std::vector<double> out(scores_);
  for (double& s : out) s *= (1.0 - rho_);
  return out;
}

UBordaState uborda_update(UBordaState state, const Permutation& incoming) {
  state.update(incoming);
  return state;
}

PairwiseMatrices pairwise_matrices(std::span<const WeightedVote> votes) {
  if (votes.empty()) throw std::invalid_argument("pairwise_matrices: no votes");
  const std::size_t n = votes.front().ranking.size();
  PairwiseMatrices out;
  out.n = n;
  out.n_matrix.assign(n * n, 0.0);
  out.m_matrix.assign(n * n, 0.0);
  for (std::size_t v = 0; v < votes.size(); ++v) {
    const auto& vote = votes[v];
    require_uniform(n, vote.ranking, v);
    if (!(vote.weight >= 0.0) || !std::isfinite(vote.weight)) {
      throw std::invalid_argument("vote " + std::to_string(v + 1) + " has invalid weight " +
                                  std::to_string(vote.weight));
    }
    const auto r = vote.ranking.ranks();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i] < r[j]) out.n_matrix[i * n + j] += vote.weight;
      }
    }
    out.total_weight += vote.weight;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.m_matrix[i * n + j] = out.n_matrix[i * n + j] - out.n_matrix[j * n + i];
    }
  }
  return out;
}

double kemeny_objective(const PairwiseMatrices& matrices, const Permutation& candidate) {
  if (candidate.size() != matrices.n) {
    throw std::invalid_argument("kemeny_objective: candidate size mismatch");
  }
  const std::size_t n = matrices.n;
  const auto r = candidate.ranks();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i] > r[j]) total += matrices.m_matrix[i * n + j];
    }
  }
  return total;
}

Permutation kemeny_exact(const PairwiseMatrices& matrices) {
  if (matrices.n > kMaxEnumerationSize) {
    throw std::invalid_argument("kemeny_exact enumerates n! rankings; n=" +
                                std::to_string(matrices.n) + " exceeds " +
                                std::to_string(kMaxEnumerationSize));
  }
  // Objectives closer than this are treated as ties (absorbs summation-order rounding).
  const double tie_band = 1e-12 * std::max(1.0, matrices.total_weight) *
                          static_cast<double>(matrices.n * matrices.n);
  std::vector<int> best;
  double best_value = 0.0;
  for_each_permutation(matrices.n, [&](const Permutation& p) {
    const double value = kemeny_objective(matrices, p);
    if (best.empty() || value < best_value - tie_band) {
      best.assign(p.ranks().begin(), p.ranks().end());
      best_value = value;
    }
  });
  return Permutation(Permutation::Unchecked{}, std::move(best));
}

Permutation kemeny_exact(std::span<const WeightedVote> votes) {
  return kemeny_exact(pairwise_matrices(votes));
}

Permutation copeland(const PairwiseMatrices& matrices) {
  const std::size_t n = matrices.n;
  // Negated win counts so ascending order ranks the most wins first.
  std::vector<double> neg_wins(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && matrices.m_matrix[i * n + j] > 0.0) neg_wins[i] -= 1.0;
    }
  }
  return ranking_from_scores(neg_wins);
}

std::vector<WeightedVote> fading_weights(std::span<const Permutation> oldest_first, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("fading_weights: rho must lie in (0, 1]");
  }
  std::vector<WeightedVote> votes;
  votes.reserve(oldest_first.size());
  const std::size_t k = oldest_first.size();
  for (std::size_t t = 0; t < k; ++t) {
    votes.push_back({oldest_first[t], std::pow(rho, static_cast<double>(k - 1 - t))});
  }
  return votes;
}

}  // namespace rankstream
