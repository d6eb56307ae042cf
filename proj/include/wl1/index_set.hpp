#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace wl1 {

// Sorted, duplicate-free set of coordinate indices.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> items);
  explicit IndexSet(std::vector<std::size_t> items);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(std::size_t i) const;
  std::span<const std::size_t> items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t operator[](std::size_t i) const { return items_[i]; }

  // Largest index + 1, or 0 when empty.
  std::size_t bound() const { return items_.empty() ? 0 : items_.back() + 1; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> items_;
};

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet symmetric_difference(const IndexSet& a, const IndexSet& b);
IndexSet complement(const IndexSet& a, std::size_t n);

// ‖x_S‖₁.
double restricted_norm1(std::span<const double> x, const IndexSet& s);

// Visits every k-subset of {0,…,n−1} in lexicographic order.
template <typename Visitor>
void for_each_subset(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Binomial coefficient, saturating at the maximum of std::uint64_t.
unsigned long long binomial(std::size_t n, std::size_t k);

}  // namespace wl1
