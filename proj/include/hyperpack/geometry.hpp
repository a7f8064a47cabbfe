#ifndef HYPERPACK_GEOMETRY_HPP
#define HYPERPACK_GEOMETRY_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hyperpack/rational.hpp"

namespace hyperpack {

// An axis-aligned hypercube anchored at its low corner inside the unit bin.
struct PlacedItem {
  Rat size;
  std::vector<Rat> anchor;  // one coordinate per axis
  std::int64_t item_id = 0;
  int type_index = 0;

  int dim() const { return static_cast<int>(anchor.size()); }
};

struct BinContents {
  std::int64_t bin_id = 0;
  std::vector<PlacedItem> items;
};

enum class ViolationKind { kOutOfBounds, kOverlap, kDimensionMismatch, kNonPositiveSize };

struct Violation {
  ViolationKind kind;
  std::int64_t first_item = -1;
  std::int64_t second_item = -1;
};

// Open-interior intersection test: touching faces do not overlap.
inline bool overlaps(const PlacedItem& a, const PlacedItem& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("overlaps: dimension mismatch");
  for (int ax = 0; ax < a.dim(); ++ax) {
    if (a.anchor[ax] + a.size <= b.anchor[ax]) return false;
    if (b.anchor[ax] + b.size <= a.anchor[ax]) return false;
  }
  return true;
}

inline bool contained_in_unit_bin(const PlacedItem& a) {
  if (a.size <= 0) return false;
  for (const Rat& c : a.anchor) {
    if (c < 0 || c + a.size > 1) return false;
  }
  return true;
}

// Every violation is reported as data; an empty result means a valid bin.
inline std::vector<Violation> validate_bin(const BinContents& bin) {
  std::vector<Violation> out;
  const auto& items = bin.items;
  if (items.empty()) return out;

  const int d = items.front().dim();
  for (const auto& it : items) {
    if (it.dim() != d) {
      out.push_back({ViolationKind::kDimensionMismatch, it.item_id, -1});
      return out;  // pairwise checks are meaningless across dimensions
    }
    if (it.size <= 0) out.push_back({ViolationKind::kNonPositiveSize, it.item_id, -1});
    else if (!contained_in_unit_bin(it)) out.push_back({ViolationKind::kOutOfBounds, it.item_id, -1});
  }

  // Sweep along axis 0 so grid-like bins stay near-linear.
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return items[x].anchor[0] < items[y].anchor[0];
  });
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const auto& a = items[order[oi]];
    const Rat hi = a.anchor[0] + a.size;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const auto& b = items[order[oj]];
      if (b.anchor[0] >= hi) break;
      if (overlaps(a, b)) out.push_back({ViolationKind::kOverlap, a.item_id, b.item_id});
    }
  }
  return out;
}

}  // namespace hyperpack

#endif  // HYPERPACK_GEOMETRY_HPP
