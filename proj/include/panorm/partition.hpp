#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"

namespace panorm {

/// A partition of {0, ..., n-1} into nonempty blocks.
///
/// Canonical form: every block is sorted and blocks are ordered by their
/// minimal element, so two equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<std::vector<Point>> blocks) : blocks_(std::move(blocks)) {
    std::size_t n = 0;
    for (auto& b : blocks_) {
      if (b.empty()) throw Error("partition block is empty");
      std::sort(b.begin(), b.end());
      n += b.size();
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    block_of_.assign(n, kNone);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      for (Point x : blocks_[i]) {
        if (x >= n || block_of_[x] != kNone) throw Error("blocks are not a partition");
        block_of_[x] = i;
      }
    }
  }

  /// Builds a partition from a class label per point; labels are arbitrary.
  static Partition from_labels(const std::vector<std::size_t>& labels) {
    std::vector<std::vector<Point>> blocks;
    std::vector<std::size_t> index(labels.size() + 1, kNone);
    for (Point x = 0; x < labels.size(); ++x) {
      std::size_t label = labels[x];
      if (label >= index.size()) index.resize(label + 1, kNone);
      if (index[label] == kNone) {
        index[label] = blocks.size();
        blocks.emplace_back();
      }
      blocks[index[label]].push_back(x);
    }
    return Partition(std::move(blocks));
  }

  std::size_t degree() const noexcept { return block_of_.size(); }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<Point>>& blocks() const& noexcept { return blocks_; }
  std::vector<std::vector<Point>> blocks() && noexcept { return std::move(blocks_); }
  const std::vector<Point>& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t block_of(Point x) const { return block_of_.at(x); }

  bool is_trivial() const noexcept { return blocks_.size() <= 1 || blocks_.size() == degree(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<std::vector<Point>> blocks_;
  std::vector<std::size_t> block_of_;
};

}  // namespace panorm
