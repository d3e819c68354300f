// Copyright 2026 The robust360 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBUST360_TILE_SET_H_
#define ROBUST360_TILE_SET_H_

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace robust360 {

// A set of tile indices kept sorted and unique. Comparison is lexicographic
// on the sorted index sequence, which is the tie-break order used by the
// alpha-set solvers.
class TileSet {
 public:
  TileSet() = default;
  TileSet(std::initializer_list<int> tiles) : tiles_(tiles) { normalize(); }
  explicit TileSet(std::vector<int> tiles) : tiles_(std::move(tiles)) {
    normalize();
  }

  const std::vector<int>& indices() const { return tiles_; }
  int size() const { return static_cast<int>(tiles_.size()); }
  bool empty() const { return tiles_.empty(); }
  auto begin() const { return tiles_.begin(); }
  auto end() const { return tiles_.end(); }

  bool contains(int tile) const {
    return std::binary_search(tiles_.begin(), tiles_.end(), tile);
  }
  bool is_subset_of(const TileSet& other) const {
    return std::includes(other.tiles_.begin(), other.tiles_.end(),
                         tiles_.begin(), tiles_.end());
  }
  TileSet united(const TileSet& other) const {
    TileSet out;
    std::set_union(tiles_.begin(), tiles_.end(), other.tiles_.begin(),
                   other.tiles_.end(), std::back_inserter(out.tiles_));
    return out;
  }
  // Number of tiles in `other` that are not already in this set.
  int count_missing(const TileSet& other) const {
    int missing = 0;
    for (int t : other.tiles_) missing += contains(t) ? 0 : 1;
    return missing;
  }

  std::string to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < tiles_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(tiles_[i]);
    }
    return s + "}";
  }

  friend auto operator<=>(const TileSet&, const TileSet&) = default;
  friend bool operator==(const TileSet&, const TileSet&) = default;

 private:
  void normalize() {
    std::sort(tiles_.begin(), tiles_.end());
    tiles_.erase(std::unique(tiles_.begin(), tiles_.end()), tiles_.end());
  }

  std::vector<int> tiles_;
};

}  // namespace robust360

#endif  // ROBUST360_TILE_SET_H_
