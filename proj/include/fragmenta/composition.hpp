#ifndef FRAGMENTA_COMPOSITION_HPP
#define FRAGMENTA_COMPOSITION_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace frag {

/// Ordered sequence of disjoint nonempty blocks partitioning {1..n}.
/// Blocks are kept sorted internally; equality is structural.
class Composition {
 public:
  Composition(int n, std::vector<std::vector<int>> blocks)
      : n_(n), blocks_(std::move(blocks)) {
    validate();
  }

  /// The one-block composition (1..n).
  static Composition one_block(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    return Composition(n, {std::move(all)});
  }

  static Composition singletons(int n) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) blocks.push_back({i});
    return Composition(n, std::move(blocks));
  }

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  /// Index of the block holding element i (1-based element).
  int block_of(int element) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), element)) {
        return static_cast<int>(b);
      }
    }
    throw std::logic_error("Composition: element not found");
  }

  bool same_block(int i, int j) const { return block_of(i) == block_of(j); }
  bool before(int i, int j) const { return block_of(i) < block_of(j); }

  auto operator<=>(const Composition& other) const = default;
  bool operator==(const Composition& other) const = default;

 private:
  void validate() const {
    if (n_ <= 0) throw std::invalid_argument("Composition: n must be positive");
    std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
    int total = 0;
    for (const auto& block : blocks_) {
      if (block.empty()) throw std::invalid_argument("Composition: empty block");
      if (!std::is_sorted(block.begin(), block.end())) {
        throw std::invalid_argument("Composition: blocks must be sorted");
      }
      for (int e : block) {
        if (e < 1 || e > n_) throw std::invalid_argument("Composition: element out of range");
        if (seen[static_cast<std::size_t>(e)]) {
          throw std::invalid_argument("Composition: duplicate element");
        }
        seen[static_cast<std::size_t>(e)] = true;
        ++total;
      }
    }
    if (total != n_) throw std::invalid_argument("Composition: blocks do not cover {1..n}");
  }

  int n_;
  std::vector<std::vector<int>> blocks_;
};

/// Unordered partition of {1..n}; blocks listed by smallest element.
class Partition {
 public:
  Partition(int n, std::vector<std::vector<int>> blocks)
      : n_(n), blocks_(std::move(blocks)) {
    for (auto& block : blocks_) std::sort(block.begin(), block.end());
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    Composition check(n_, blocks_);  // reuse the same structural validation
    (void)check;
  }

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  bool operator==(const Partition& other) const = default;

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
};

/// Restriction of gamma to {1..m}: intersect blocks, drop empties, keep order.
inline Composition restrict_to(const Composition& gamma, int m) {
  if (m < 1 || m > gamma.n()) throw std::out_of_range("restrict_to: m out of range");
  std::vector<std::vector<int>> blocks;
  for (const auto& block : gamma.blocks()) {
    std::vector<int> kept;
    for (int e : block) {
      if (e <= m) kept.push_back(e);
    }
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return Composition(m, std::move(blocks));
}

/// Restriction of gamma to an arbitrary subset A of {1..n}, keeping the
/// original labels. Blocks are intersected with A in order.
inline std::vector<std::vector<int>> restrict_to_set(const Composition& gamma,
                                                     const std::vector<int>& sorted_set) {
  std::vector<std::vector<int>> blocks;
  for (const auto& block : gamma.blocks()) {
    std::vector<int> kept;
    std::set_intersection(block.begin(), block.end(), sorted_set.begin(),
                          sorted_set.end(), std::back_inserter(kept));
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return blocks;
}

/// FRAG operator: each block of gamma with minimum m is refined by the
/// restriction of refiners[m] to the block; results concatenate in gamma's
/// block order. refiners must hold one composition per index 1..n even
/// though only block minima are read; refiners over a larger ground set are
/// allowed so that a restricted gamma can be refined by the original
/// sequence (restriction compatibility).
inline Composition fragment(const Composition& gamma,
                        const std::vector<Composition>& refiners) {
  if (refiners.size() < static_cast<std::size_t>(gamma.n())) {
    throw std::invalid_argument("frag: need one refiner per element of {1..n}");
  }
  for (const auto& r : refiners) {
    if (r.n() < gamma.n()) {
      throw std::invalid_argument("frag: refiners must cover {1..n}");
    }
  }
  std::vector<std::vector<int>> blocks;
  for (const auto& block : gamma.blocks()) {
    const int min_element = block.front();
    const Composition& refiner = refiners[static_cast<std::size_t>(min_element - 1)];
    auto refined = restrict_to_set(refiner, block);
    for (auto& b : refined) blocks.push_back(std::move(b));
  }
  return Composition(gamma.n(), std::move(blocks));
}

/// n-shift: relabel the relations among {k+1,...,n+k} down to {1..n}.
inline Composition shift(const Composition& gamma, int k) {
  if (k < 0 || k >= gamma.n()) throw std::out_of_range("shift: need 0 <= k < n");
  if (k == 0) return gamma;
  std::vector<std::vector<int>> blocks;
  for (const auto& block : gamma.blocks()) {
    std::vector<int> kept;
    for (int e : block) {
      if (e > k) kept.push_back(e - k);
    }
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return Composition(gamma.n() - k, std::move(blocks));
}

inline Partition project_to_partition(const Composition& gamma) {
  return Partition(gamma.n(), gamma.blocks());
}

inline Partition restrict_partition(const Partition& pi, int m) {
  if (m < 1 || m > pi.n()) throw std::out_of_range("restrict_partition: m out of range");
  std::vector<std::vector<int>> blocks;
  for (const auto& block : pi.blocks()) {
    std::vector<int> kept;
    for (int e : block) {
      if (e <= m) kept.push_back(e);
    }
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return Partition(m, std::move(blocks));
}

/// Relabel elements by sigma (1-based permutation); block order unchanged.
inline Composition apply_permutation(const std::vector<int>& sigma,
                                     const Composition& gamma) {
  const int n = gamma.n();
  if (sigma.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("apply_permutation: wrong size");
  }
  std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > n || hit[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("apply_permutation: not a permutation");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(gamma.block_count());
  for (const auto& block : gamma.blocks()) {
    std::vector<int> mapped;
    mapped.reserve(block.size());
    for (int e : block) mapped.push_back(sigma[static_cast<std::size_t>(e - 1)]);
    std::sort(mapped.begin(), mapped.end());
    blocks.push_back(std::move(mapped));
  }
  return Composition(n, std::move(blocks));
}

/// All ordered set partitions of {1..n}, each exactly once. Guarded at n <= 8
/// (ordered Bell numbers blow up past that).
inline std::vector<Composition> enumerate_compositions(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_compositions: n must be >= 1");
  if (n > 8) throw std::invalid_argument("enumerate_compositions: n > 8 not supported");
  std::vector<Composition> out;
  std::vector<std::vector<int>> blocks;
  // Element i goes either into an existing block or into a fresh block at any
  // insertion position; recursing in element order visits each composition once.
  std::function<void(int)> place = [&](int element) {
    if (element > n) {
      out.emplace_back(n, blocks);
      return;
    }
    for (auto& block : blocks) {
      block.push_back(element);
      place(element + 1);
      block.pop_back();
    }
    for (std::size_t pos = 0; pos <= blocks.size(); ++pos) {
      blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(pos), {element});
      place(element + 1);
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(pos));
    }
  };
  place(1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace frag

#endif  // FRAGMENTA_COMPOSITION_HPP
