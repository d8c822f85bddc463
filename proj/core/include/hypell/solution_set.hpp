#pragma once

// Canonical result container for all enumerators: deduplicated integer tuples
// in ascending lexicographic order, so independent routes compare with ==.

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "hypell/ints.hpp"

namespace hypell {

template <std::size_t N>
class SolutionSet {
 public:
  using Tuple = std::array<i64, N>;

  void insert(const Tuple& t) { items_.push_back(t); dirty_ = true; }

  void canonicalize() {
    if (!dirty_) return;
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    dirty_ = false;
  }

  const std::vector<Tuple>& items() const {
    const_cast<SolutionSet*>(this)->canonicalize();
    return items_;
  }

  std::size_t size() const { return items().size(); }
  bool empty() const { return items().empty(); }
  bool contains(const Tuple& t) const {
    const auto& v = items();
    return std::binary_search(v.begin(), v.end(), t);
  }

  friend bool operator==(const SolutionSet& a, const SolutionSet& b) {
    return a.items() == b.items();
  }
  friend bool operator!=(const SolutionSet& a, const SolutionSet& b) {
    return !(a == b);
  }

 private:
  std::vector<Tuple> items_;
  bool dirty_ = false;
};

using PairSet = SolutionSet<2>;
using TripleSet = SolutionSet<3>;

}  // namespace hypell
