// Copyright 2026 The dqgame Authors. All rights reserved.
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

#ifndef DQGAME_NETCORE_SERIES_PARALLEL_HPP_
#define DQGAME_NETCORE_SERIES_PARALLEL_HPP_

#include <optional>
#include <vector>

#include "dqgame/common.hpp"
#include "dqgame/netcore/network.hpp"

namespace dqgame {

struct Cut {
  std::vector<EdgeId> edges;        // edges leaving the source side
  std::vector<bool> source_side;    // per vertex of the whole network
  std::vector<EdgeId> left_part;    // subnetwork edges with tail on the source side
  std::vector<EdgeId> right_part;   // the remaining subnetwork edges
};

// Maximum s-t flow over `edges`, edge capacities as given.
long max_flow(const Network& net, const std::vector<EdgeId>& edges, VertexId s, VertexId t);

// Minimum s-t cut over `edges` whose source side is the set reachable from s
// in the final residual graph. Every other minimum cut lies to its right.
Cut leftmost_min_cut(const Network& net, const std::vector<EdgeId>& edges, VertexId s, VertexId t);
Cut leftmost_min_cut(const Network& net);

enum class SPKind { kLeaf, kSeries, kParallel };

struct SPNode {
  SPKind kind = SPKind::kLeaf;
  int left = -1;   // series: the part next to the source
  int right = -1;
  EdgeId edge;     // leaves only
  VertexId source;
  VertexId sink;
  std::vector<EdgeId> edges;
  Cut cut;
};

struct SPDecomposition {
  std::vector<SPNode> nodes;  // 2m - 1 nodes
  int root = -1;
};

// Binary decomposition tree, or nullopt when the network is not
// series-parallel between o and d.
std::optional<SPDecomposition> sp_decompose(const Network& net);
// Same, but throws NotSeriesParallel.
SPDecomposition require_series_parallel(const Network& net);

// Canonical text of the tree with nested nodes of the same kind flattened and
// parallel children sorted. Two decompositions of one network compare equal.
std::string canonical_shape(const SPDecomposition& dec);

}  // namespace dqgame

#endif  // DQGAME_NETCORE_SERIES_PARALLEL_HPP_
