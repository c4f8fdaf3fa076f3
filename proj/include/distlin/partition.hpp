// Copyright 2026 The distlin Authors. All Rights Reserved.
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
// =============================================================================
//
// Cartesian partitions of global tensor shapes over a worker grid.  Each grid
// position holds one bulk block of the balanced per-dimension decomposition;
// grid positions map row-major onto worker ranks (or onto an explicit rank
// list, so a smaller partition can be embedded in a larger grid).

#ifndef DISTLIN_PARTITION_HPP
#define DISTLIN_PARTITION_HPP

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "distlin/tensor.hpp"

namespace distlin {

// Balanced decomposition of extent n over P workers: the first n mod P
// workers take ceil(n/P) indices, the rest floor(n/P).
inline std::vector<Index> split_sizes(Index n, Index p) {
  DISTLIN_REQUIRE(p >= 1 && p <= std::max<Index>(n, 1),
                  "split_sizes: cannot split extent ", n, " over ", p, " workers");
  std::vector<Index> sizes(static_cast<std::size_t>(p));
  const Index q = n / p, r = n % p;
  for (Index i = 0; i < p; ++i) sizes[static_cast<std::size_t>(i)] = q + (i < r ? 1 : 0);
  return sizes;
}

inline Index split_start(Index n, Index p, Index i) {
  const Index q = n / p, r = n % p;
  return i < r ? i * (q + 1) : r * (q + 1) + (i - r) * q;
}

// A grid of workers: per-dimension extents plus the rank assigned to each
// grid position, row-major.
struct WorkerGrid {
  Shape extents;
  std::vector<int> ranks;

  WorkerGrid() = default;
  WorkerGrid(Shape extents_, std::vector<int> ranks_)
      : extents(std::move(extents_)), ranks(std::move(ranks_)) {
    DISTLIN_REQUIRE(!extents.empty(), "WorkerGrid: empty grid");
    for (Index e : extents) DISTLIN_REQUIRE(e >= 1, "WorkerGrid: extent < 1");
    DISTLIN_REQUIRE(static_cast<Index>(ranks.size()) == volume_of(extents),
                    "WorkerGrid: ", ranks.size(), " ranks for grid ",
                    shape_str(extents));
    std::vector<int> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    DISTLIN_REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                    "WorkerGrid: duplicate ranks");
    DISTLIN_REQUIRE(sorted.empty() || sorted.front() >= 0,
                    "WorkerGrid: negative rank");
  }

  // Grid over the identity rank list 0..V-1.
  static WorkerGrid dense(Shape extents_) {
    std::vector<int> r(static_cast<std::size_t>(volume_of(extents_)));
    std::iota(r.begin(), r.end(), 0);
    return WorkerGrid(std::move(extents_), std::move(r));
  }

  Index rank_count() const { return static_cast<Index>(ranks.size()); }
  Index grid_rank() const { return static_cast<Index>(extents.size()); }

  Shape coords_of(Index linear) const {
    Shape c(extents.size());
    for (Index d = grid_rank() - 1; d >= 0; --d) {
      auto du = static_cast<std::size_t>(d);
      c[du] = linear % extents[du];
      linear /= extents[du];
    }
    return c;
  }
  Index linear_of(const Shape& coords) const {
    Index lin = 0;
    for (std::size_t d = 0; d < extents.size(); ++d) {
      DISTLIN_REQUIRE(coords[d] >= 0 && coords[d] < extents[d],
                      "WorkerGrid: coordinate out of range");
      lin = lin * extents[d] + coords[d];
    }
    return lin;
  }
  int rank_at(const Shape& coords) const {
    return ranks[static_cast<std::size_t>(linear_of(coords))];
  }
  bool contains_rank(int rank) const {
    return std::find(ranks.begin(), ranks.end(), rank) != ranks.end();
  }
  Index index_of_rank(int rank) const {
    auto it = std::find(ranks.begin(), ranks.end(), rank);
    DISTLIN_REQUIRE(it != ranks.end(), "WorkerGrid: rank ", rank, " not a member");
    return static_cast<Index>(it - ranks.begin());
  }
};

// A worker grid together with the balanced decomposition of a global shape.
struct Partition : WorkerGrid {
  Shape global_shape;

  Partition() = default;
  Partition(WorkerGrid grid, Shape global)
      : WorkerGrid(std::move(grid)), global_shape(std::move(global)) {
    DISTLIN_REQUIRE(global_shape.size() == extents.size(),
                    "Partition: grid rank ", extents.size(),
                    " != shape rank ", global_shape.size());
    for (std::size_t d = 0; d < extents.size(); ++d) {
      DISTLIN_REQUIRE(extents[d] <= std::max<Index>(global_shape[d], 1),
                      "Partition: grid extent ", extents[d],
                      " exceeds shape extent ", global_shape[d], " in dim ", d);
    }
  }

  // Bulk region of the grid position `linear`, in global indices.
  IndexRange bulk_at(Index linear) const {
    const Shape c = coords_of(linear);
    Shape lo(extents.size()), hi(extents.size());
    for (std::size_t d = 0; d < extents.size(); ++d) {
      lo[d] = split_start(global_shape[d], extents[d], c[d]);
      hi[d] = lo[d] + split_sizes(global_shape[d], extents[d])[static_cast<std::size_t>(c[d])];
    }
    return IndexRange(std::move(lo), std::move(hi));
  }

  IndexRange bulk_of_rank(int rank) const { return bulk_at(index_of_rank(rank)); }

  // Zero-volume range of matching rank, for workers outside the partition.
  IndexRange empty_block() const {
    return IndexRange(Shape(global_shape.size(), 0), Shape(global_shape.size(), 0));
  }
};

inline Partition decompose(Shape global_shape, Shape grid) {
  return Partition(WorkerGrid::dense(std::move(grid)), std::move(global_shape));
}

inline Partition decompose(Shape global_shape, Shape grid, std::vector<int> ranks) {
  return Partition(WorkerGrid(std::move(grid), std::move(ranks)),
                   std::move(global_shape));
}

// One block transfer of a repartition: the overlap of a source worker's bulk
// with a destination worker's bulk.
struct PartitionTransfer {
  int src_rank;
  int dst_rank;
  IndexRange region;  // global indices; never empty
};

struct PartitionMap {
  Partition src;
  Partition dst;
  std::vector<PartitionTransfer> transfers;  // dst-major, then src, canonical
};

inline PartitionMap overlap(const Partition& src, const Partition& dst) {
  DISTLIN_REQUIRE(src.global_shape == dst.global_shape,
                  "overlap: global shapes differ: ", shape_str(src.global_shape),
                  " vs ", shape_str(dst.global_shape));
  PartitionMap map{src, dst, {}};
  for (Index di = 0; di < dst.rank_count(); ++di) {
    const IndexRange db = dst.bulk_at(di);
    for (Index si = 0; si < src.rank_count(); ++si) {
      const IndexRange region = intersect(src.bulk_at(si), db);
      if (!region.empty()) {
        map.transfers.push_back({src.ranks[static_cast<std::size_t>(si)],
                                 dst.ranks[static_cast<std::size_t>(di)], region});
      }
    }
  }
  return map;
}

// Broadcast along partitions: the source grid must be obtainable from the
// destination grid by collapsing some dimensions to extent 1, with matching
// ranks at the collapsed origin.  Each source worker feeds the destination
// workers that agree with it on all non-collapsed dimensions.  Reductions use
// the same groups reversed.
struct BroadcastGroup {
  int root;                  // source worker
  std::vector<int> members;  // destination workers, ascending rank
};

inline std::vector<BroadcastGroup> broadcast_map(const WorkerGrid& src,
                                                 const WorkerGrid& dst) {
  DISTLIN_REQUIRE(src.grid_rank() == dst.grid_rank(),
                  "broadcast_map: grid rank mismatch ", src.grid_rank(), " vs ",
                  dst.grid_rank());
  for (std::size_t d = 0; d < src.extents.size(); ++d) {
    DISTLIN_REQUIRE(src.extents[d] == dst.extents[d] || src.extents[d] == 1,
                    "broadcast_map: source grid ", shape_str(src.extents),
                    " is not a collapse of ", shape_str(dst.extents));
  }
  std::vector<BroadcastGroup> groups;
  groups.reserve(static_cast<std::size_t>(src.rank_count()));
  for (Index si = 0; si < src.rank_count(); ++si) {
    const Shape sc = src.coords_of(si);
    BroadcastGroup g;
    g.root = src.ranks[static_cast<std::size_t>(si)];
    for (Index di = 0; di < dst.rank_count(); ++di) {
      const Shape dc = dst.coords_of(di);
      bool match = true;
      for (std::size_t d = 0; d < sc.size(); ++d) {
        if (src.extents[d] == dst.extents[d] && sc[d] != dc[d]) { match = false; break; }
        if (src.extents[d] == 1 && dst.extents[d] != 1 && sc[d] != 0) { match = false; break; }
      }
      if (match) g.members.push_back(dst.ranks[static_cast<std::size_t>(di)]);
    }
    std::sort(g.members.begin(), g.members.end());
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace distlin

#endif  // DISTLIN_PARTITION_HPP
