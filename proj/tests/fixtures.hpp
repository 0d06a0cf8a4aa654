#pragma once

#include <utility>
#include <vector>

#include "cosite/network.hpp"

namespace fixture {

// The six inter-group arcs of the published 37-cluster decomposition.
inline const std::vector<cosite::ArcKey> kBridgeArcs = {
    {17, 9}, {10, 6}, {10, 8}, {14, 4}, {26, 14}, {25, 16}};

// 37 nodes: three internally connected groups, joined only by kBridgeArcs,
// plus isolates 31..37.
//   group A: 1..9, 16      group B: 10..15, 17..20      group C: 21..30
inline cosite::ClusterNetwork bridged_network() {
  const std::vector<cosite::ArcKey> internal = {
      // A
      {1, 2}, {2, 1}, {2, 3}, {3, 1}, {3, 4}, {5, 4}, {5, 6}, {6, 7}, {7, 8},
      {8, 9}, {9, 16}, {16, 1},
      // B
      {10, 11}, {11, 12}, {12, 10}, {12, 13}, {13, 14}, {15, 14}, {15, 17},
      {17, 18}, {18, 19}, {19, 20}, {20, 10},
      // C
      {21, 22}, {22, 21}, {22, 23}, {23, 24}, {24, 25}, {25, 26}, {26, 27},
      {27, 28}, {28, 29}, {29, 30}, {30, 21},
  };
  std::vector<cosite::ClusterId> nodes;
  for (cosite::ClusterId id = 1; id <= 37; ++id) nodes.push_back(id);
  std::vector<cosite::Arc> arcs;
  for (const auto& [s, t] : internal) arcs.push_back({s, t, 1.0, 1});
  for (const auto& [s, t] : kBridgeArcs) arcs.push_back({s, t, 1.0, 1});
  return cosite::ClusterNetwork(std::move(nodes), std::move(arcs));
}

}  // namespace fixture
