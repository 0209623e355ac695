#pragma once

// Rankings over n items in rank-vector form: ranks[i] is the 1-based rank of
// item i+1. Lower rank means more preferred.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rankstream {

/// Largest n accepted by the exhaustive enumerators (10! = 3,628,800).
inline constexpr std::size_t kMaxEnumerationSize = 10;

/// Two distinct 1-based item indices.
struct ItemPair {
  int i = 1;
  int j = 2;

  /// Throws std::invalid_argument unless 1 <= i, j <= n and i != j.
  void validate(std::size_t n) const;
};

class Permutation {
 public:
  /// Tag for constructors that skip the bijection check.
  struct Unchecked {};

  /// Validates that `ranks` is a bijection of {1..n}, n >= 1.
  explicit Permutation(std::vector<int> ranks);
  /// Caller guarantees `ranks` is a bijection of {1..n}.
  Permutation(Unchecked, std::vector<int> ranks) noexcept : ranks_(std::move(ranks)) {}

  static Permutation identity(std::size_t n);
  static Permutation reverse(std::size_t n);

  /// Parses the comma-separated text form, e.g. "2,1,3".
  static Permutation parse(std::string_view text);

  std::size_t size() const noexcept { return ranks_.size(); }

  /// Rank of 1-based `item`.
  int rank(int item) const { return ranks_.at(static_cast<std::size_t>(item - 1)); }
  int operator()(int item) const { return rank(item); }

  std::span<const int> ranks() const noexcept { return ranks_; }

  /// Items listed from most to least preferred (the inverse permutation as a list).
  std::vector<int> ordering() const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.ranks_ <=> b.ranks_;
  }

 private:
  std::vector<int> ranks_;
};

/// Number of pairs i<j with values[i] > values[j]; merge-sort count, O(n log n).
std::uint64_t count_inversions(std::span<const int> values);

/// Kendall's tau distance: pairs ordered oppositely by `a` and `b`. O(n log n).
std::uint64_t kendall_distance(const Permutation& a, const Permutation& b);

/// Quadratic pairwise count of the same quantity; kept as a cross-check.
std::uint64_t kendall_distance_reference(const Permutation& a, const Permutation& b);

/// (a o b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

Permutation inverse(const Permutation& p);

/// Exchanges the ranks of items i and j, which must hold adjacent ranks.
Permutation adjacent_swap(const Permutation& p, int i, int j);

/// Exchanges the ranks of items i and j without any adjacency requirement
/// (right composition with the transposition of positions i and j).
Permutation swap_items(const Permutation& p, int i, int j);

/// Visits every permutation of size n in lexicographic order of rank vectors.
/// Throws std::invalid_argument for n == 0 or n > kMaxEnumerationSize.
void for_each_permutation(std::size_t n, const std::function<void(const Permutation&)>& visit);

/// All n! permutations, lexicographically ordered. Same size limits as above.
std::vector<Permutation> enumerate_permutations(std::size_t n);

std::uint64_t factorial(std::size_t n);

}  // namespace rankstream
