#include "wl1/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

#include "wl1/error.hpp"

namespace wl1 {

IndexSet::IndexSet(std::initializer_list<std::size_t> items)
    : IndexSet(std::vector<std::size_t>(items)) {}

IndexSet::IndexSet(std::vector<std::size_t> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(items_.begin(), items_.end(), i);
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet symmetric_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet complement(const IndexSet& a, std::size_t n) {
  if (a.bound() > n) throw ArgumentError("complement: index out of range");
  std::vector<std::size_t> out;
  out.reserve(n - a.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.contains(i)) out.push_back(i);
  }
  return IndexSet(std::move(out));
}

double restricted_norm1(std::span<const double> x, const IndexSet& s) {
  double total = 0.0;
  for (std::size_t i : s) total += std::abs(x[i]);
  return total;
}

unsigned long long binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const unsigned long long num = n - k + i;
    // result * num / i is exact at every step; guard the multiply.
    if (result > std::numeric_limits<unsigned long long>::max() / num) {
      return std::numeric_limits<unsigned long long>::max();
    }
    result = result * num / i;
  }
  return result;
}

}  // namespace wl1
