#pragma once

// Mallows model under the Kendall distance: p(s) = exp(-theta * d(s, center)) / psi(theta).

#include <cstddef>
#include <random>
#include <vector>

#include "rankstream/permutation.hpp"

namespace rankstream {

/// Random engine used throughout the library. Streams are reproducible for a given seed.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw, so
/// sampled streams do not depend on the standard library's distribution code.
double uniform01(Rng& rng);

/// Largest n accepted by the exact (enumerating) expectation routines.
inline constexpr std::size_t kMaxExactExpectationSize = 8;

/// Below this concentration the uniform-limit branches are used.
inline constexpr double kThetaZero = 1e-9;

class MallowsModel {
 public:
  /// Throws std::invalid_argument if theta is negative or not finite.
  MallowsModel(Permutation center, double theta);

  const Permutation& center() const noexcept { return center_; }
  double theta() const noexcept { return theta_; }
  std::size_t size() const noexcept { return center_.size(); }

  double pmf(const Permutation& s) const;
  double log_pmf(const Permutation& s) const;

  /// Exact draw via independent inversion-vector entries; no Markov chain.
  Permutation sample(Rng& rng) const;

  /// E[s(i)] for every item, by enumeration of S_n (n <= kMaxExactExpectationSize).
  std::vector<double> expected_rank_vector() const;

 private:
  Permutation center_;
  double theta_;
  double log_psi_;
};

/// log psi(theta) = sum_{j=1}^{n-1} log[(1 - e^{-(n-j+1) theta}) / (1 - e^{-theta})].
double log_psi(std::size_t n, double theta);

/// E[d(s, center)] for s ~ MM(center, theta); n(n-1)/4 at theta = 0.
double expected_distance(std::size_t n, double theta);

/// theta with expected_distance(n, theta) == target_distance (to 1e-10), by bisection.
/// Requires 0 < target_distance < n(n-1)/4.
double calibrate_theta(std::size_t n, double target_distance);

/// Draws the inversion count contributions V_1..V_{n-1}; exposed for testing the
/// decomposition. Entry k lies in {0..n-1-k} (0-based k).
std::vector<int> sample_inversion_vector(std::size_t n, double theta, Rng& rng);

}  // namespace rankstream
