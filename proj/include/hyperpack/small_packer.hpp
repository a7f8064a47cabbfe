#ifndef HYPERPACK_SMALL_PACKER_HPP
#define HYPERPACK_SMALL_PACKER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "hyperpack/geometry.hpp"
#include "hyperpack/rational.hpp"

namespace hyperpack {

struct SmallPlacement {
  std::int64_t bin_id = 0;
  int group = 0;  // i in {M..2M-1}
  int level = 0;  // k: sub-bin side is 1/(2^k * i)
  std::vector<Rat> anchor;
  Rat subbin_side;
  bool opened_bin = false;
  std::int64_t closed_bin_id = -1;  // bin closed by this arrival, if any
};

struct SmallBinState {
  std::int64_t bin_id = 0;
  int group = 0;
  bool closed = false;
  std::vector<PlacedItem> items;
  Rat occupied_volume;  // exact sum of item volumes
  // level -> empty sub-bin anchors, lexicographically ordered
  std::map<int, std::set<std::vector<Rat>>> free_by_level;
};

// AssignSmall: per-group bins recursively partitioned into 2^d sub-bins.
class SmallPacker {
 public:
  SmallPacker(int dim, int M) : dim_(dim), M_(M), groups_(M, -1) {
    if (dim < 1 || M < 2) throw std::invalid_argument("SmallPacker: bad dim/M");
  }

  void set_bin_id_source(std::function<std::int64_t()> next) { next_id_ = std::move(next); }

  // Unique (i, k) with 2^k*size in (1/(i+1), 1/i], i in {M..2M-1}.
  static std::pair<int, int> classify(int M, const Rat& size) {
    if (size <= 0) throw std::invalid_argument("classify_small: size must be positive");
    if (size > Rat(1, M)) throw std::invalid_argument("classify_small: item is large");
    Rat s = size;
    int k = 0;
    const Rat half_floor(1, 2 * M);
    while (s <= half_floor) {
      s *= 2;
      ++k;
    }
    int i = static_cast<int>(rat_floor_ll(Rat(1) / s));
    if (i < M || i >= 2 * M) throw std::logic_error("classify_small: group out of range");
    return {i, k};
  }

  SmallPlacement assign(const Rat& size, std::int64_t item_id, int type_index) {
    auto [group, level] = classify(M_, size);
    SmallPlacement out;
    out.group = group;
    out.level = level;
    out.subbin_side = side(group, level);

    int bin_idx = groups_[group - M_];
    if (bin_idx < 0) {
      bin_idx = open_bin(group);
      out.opened_bin = true;
    }
    int pick = pick_level(bins_[bin_idx], level);
    if (pick < 0) {
      out.closed_bin_id = close_bin(bin_idx);
      bin_idx = open_bin(group);
      out.opened_bin = true;
      pick = 0;  // a fresh bin always has level-0 cells
    }

    SmallBinState& bin = bins_[bin_idx];
    std::vector<Rat> anchor = *bin.free_by_level[pick].begin();
    bin.free_by_level[pick].erase(bin.free_by_level[pick].begin());
    if (bin.free_by_level[pick].empty()) bin.free_by_level.erase(pick);

    // Step 3: split one sub-bin per level, descending to the target side.
    for (int lvl = pick + 1; lvl <= level; ++lvl) {
      const Rat child_side = side(group, lvl);
      // children in lexicographic order; the first child shares the anchor
      // and continues the chain, the rest become free at this level
      for (unsigned mask = 1; mask < (1u << dim_); ++mask) {
        std::vector<Rat> child = anchor;
        for (int ax = 0; ax < dim_; ++ax) {
          if (mask & (1u << (dim_ - 1 - ax))) child[ax] += child_side;
        }
        bin.free_by_level[lvl].insert(std::move(child));
      }
    }

    PlacedItem item;
    item.size = size;
    item.anchor = anchor;
    item.item_id = item_id;
    item.type_index = type_index;
    bin.items.push_back(item);
    bin.occupied_volume += rat_pow(size, dim_);

    out.bin_id = bin.bin_id;
    out.anchor = std::move(anchor);
    return out;
  }

  int dim() const { return dim_; }
  int M() const { return M_; }
  const std::vector<SmallBinState>& bins() const { return bins_; }

  int active_bins() const {
    int n = 0;
    for (int idx : groups_)
      if (idx >= 0) ++n;
    return n;
  }
  int max_active_bins() const { return max_active_; }
  std::int64_t closed_bin_count() const { return closed_count_; }

 private:
  Rat side(int group, int level) const { return Rat(1, BigInt(group) << level); }

  // Deepest level <= want with an empty sub-bin; -1 closes the bin.
  static int pick_level(const SmallBinState& bin, int want) {
    int best = -1;
    for (const auto& [lvl, cells] : bin.free_by_level) {
      if (lvl > want) break;
      if (!cells.empty()) best = lvl;
    }
    return best;
  }

  int open_bin(int group) {
    SmallBinState bin;
    bin.bin_id = next_id_ ? next_id_() : internal_id_++;
    bin.group = group;
    const Rat cell = Rat(1, group);
    std::vector<long long> digits(dim_, 0);
    auto& cells = bin.free_by_level[0];
    // lexicographic grid enumeration of the i^d level-0 cells
    while (true) {
      std::vector<Rat> anchor(dim_);
      for (int ax = 0; ax < dim_; ++ax) anchor[ax] = Rat(digits[ax]) * cell;
      cells.insert(cells.end(), std::move(anchor));
      int ax = dim_ - 1;
      while (ax >= 0 && ++digits[ax] == group) digits[ax--] = 0;
      if (ax < 0) break;
    }
    bins_.push_back(std::move(bin));
    groups_[group - M_] = static_cast<int>(bins_.size()) - 1;
    if (active_bins() > max_active_) max_active_ = active_bins();
    return static_cast<int>(bins_.size()) - 1;
  }

  std::int64_t close_bin(int idx) {
    bins_[idx].closed = true;
    bins_[idx].free_by_level.clear();
    groups_[bins_[idx].group - M_] = -1;
    ++closed_count_;
    return bins_[idx].bin_id;
  }

  int dim_;
  int M_;
  std::vector<int> groups_;  // group i -> index of active bin, or -1
  std::vector<SmallBinState> bins_;
  std::function<std::int64_t()> next_id_;
  std::int64_t internal_id_ = 0;
  std::int64_t closed_count_ = 0;
  int max_active_ = 0;
};

}  // namespace hyperpack

#endif  // HYPERPACK_SMALL_PACKER_HPP
