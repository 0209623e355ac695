#include "rankstream/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rankstream {
namespace {

void require_same_size(const Permutation& a, const Permutation& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                ")");
  }
}

void require_enumerable(std::size_t n) {
  if (n == 0 || n > kMaxEnumerationSize) {
    throw std::invalid_argument("enumeration requires 1 <= n <= " +
                                std::to_string(kMaxEnumerationSize) + ", got " +
                                std::to_string(n));
  }
}

std::uint64_t merge_count(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = merge_count(v, scratch, lo, mid) + merge_count(v, scratch, mid, hi);
  std::size_t left = lo;
  std::size_t right = mid;
  std::size_t out = lo;
  while (left < mid && right < hi) {
    if (v[right] < v[left]) {
      count += mid - left;
      scratch[out++] = v[right++];
    } else {
      scratch[out++] = v[left++];
    }
  }
  while (left < mid) scratch[out++] = v[left++];
  while (right < hi) scratch[out++] = v[right++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

void ItemPair::validate(std::size_t n) const {
  const int hi = static_cast<int>(n);
  if (i < 1 || i > hi || j < 1 || j > hi || i == j) {
    throw std::invalid_argument("item pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") invalid for n=" + std::to_string(n));
  }
}

Permutation::Permutation(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const std::size_t n = ranks_.size();
  if (n == 0) throw std::invalid_argument("permutation must have at least one item");
  std::vector<bool> seen(n, false);
  for (int r : ranks_) {
    if (r < 1 || static_cast<std::size_t>(r) > n || seen[static_cast<std::size_t>(r - 1)]) {
      throw std::invalid_argument("not a bijection of {1.." + std::to_string(n) +
                                  "}: " + to_string());
    }
    seen[static_cast<std::size_t>(r - 1)] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  if (n == 0) throw std::invalid_argument("permutation must have at least one item");
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 1);
  return Permutation(Unchecked{}, std::move(r));
}

Permutation Permutation::reverse(std::size_t n) {
  if (n == 0) throw std::invalid_argument("permutation must have at least one item");
  std::vector<int> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = static_cast<int>(n - k);
  return Permutation(Unchecked{}, std::move(r));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> ranks;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view field = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
      field.remove_suffix(1);
    int value = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
      throw std::invalid_argument("malformed rank '" + std::string(field) + "' in '" +
                                  std::string(text) + "'");
    }
    ranks.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Permutation(std::move(ranks));
}

std::vector<int> Permutation::ordering() const {
  std::vector<int> items(ranks_.size());
  for (std::size_t k = 0; k < ranks_.size(); ++k) {
    items[static_cast<std::size_t>(ranks_[k] - 1)] = static_cast<int>(k + 1);
  }
  return items;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < ranks_.size(); ++k) {
    if (k) out.push_back(',');
    out += std::to_string(ranks_[k]);
  }
  return out;
}

std::uint64_t count_inversions(std::span<const int> values) {
  std::vector<int> work(values.begin(), values.end());
  std::vector<int> scratch(work.size());
  return merge_count(work, scratch, 0, work.size());
}

std::uint64_t kendall_distance(const Permutation& a, const Permutation& b) {
  require_same_size(a, b, "kendall_distance");
  // Read a's ranks in b's preference order; each inversion is a disagreement.
  const auto b_order = b.ordering();
  std::vector<int> relabeled(a.size());
  for (std::size_t k = 0; k < relabeled.size(); ++k) relabeled[k] = a.rank(b_order[k]);
  std::vector<int> scratch(relabeled.size());
  return merge_count(relabeled, scratch, 0, relabeled.size());
}

std::uint64_t kendall_distance_reference(const Permutation& a, const Permutation& b) {
  require_same_size(a, b, "kendall_distance_reference");
  const auto ra = a.ranks();
  const auto rb = b.ranks();
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    for (std::size_t j = i + 1; j < ra.size(); ++j) {
      if ((ra[i] - ra[j]) * (rb[i] - rb[j]) < 0) ++d;
    }
  }
  return d;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require_same_size(a, b, "compose");
  std::vector<int> r(a.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.rank(b.ranks()[k]);
  return Permutation(Permutation::Unchecked{}, std::move(r));
}

Permutation inverse(const Permutation& p) {
  return Permutation(Permutation::Unchecked{}, p.ordering());
}

Permutation swap_items(const Permutation& p, int i, int j) {
  ItemPair{i, j}.validate(p.size());
  std::vector<int> r(p.ranks().begin(), p.ranks().end());
  std::swap(r[static_cast<std::size_t>(i - 1)], r[static_cast<std::size_t>(j - 1)]);
  return Permutation(Permutation::Unchecked{}, std::move(r));
}

Permutation adjacent_swap(const Permutation& p, int i, int j) {
  ItemPair{i, j}.validate(p.size());
  if (std::abs(p.rank(i) - p.rank(j)) != 1) {
    throw std::invalid_argument("adjacent_swap: items " + std::to_string(i) + " and " +
                                std::to_string(j) + " hold non-adjacent ranks " +
                                std::to_string(p.rank(i)) + " and " + std::to_string(p.rank(j)));
  }
  return swap_items(p, i, j);
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

void for_each_permutation(std::size_t n, const std::function<void(const Permutation&)>& visit) {
  require_enumerable(n);
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 1);
  do {
    visit(Permutation(Permutation::Unchecked{}, r));
  } while (std::next_permutation(r.begin(), r.end()));
}

std::vector<Permutation> enumerate_permutations(std::size_t n) {
  require_enumerable(n);
  std::vector<Permutation> all;
  all.reserve(factorial(n));
  for_each_permutation(n, [&all](const Permutation& p) { all.push_back(p); });
  return all;
}

}  // namespace rankstream
