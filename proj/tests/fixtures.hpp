#pragma once

#include <utility>
#include <vector>

#include "crsketch/graph.hpp"

namespace fixtures {

// 12-vertex ring with strongly skewed chord weights. Connected, integer
// weights, total weight 167; the chord at weight 50 dominates sampling.
inline crsketch::WeightedGraph skew12() {
    std::vector<crsketch::Edge> edges;
    for (int i = 0; i < 12; ++i) {
        edges.push_back({i, (i + 1) % 12, 1.0});
    }
    edges.push_back({0, 6, 50.0});
    edges.push_back({1, 7, 40.0});
    edges.push_back({2, 8, 30.0});
    edges.push_back({3, 9, 20.0});
    edges.push_back({4, 10, 10.0});
    edges.push_back({5, 11, 5.0});
    return crsketch::WeightedGraph(12, edges);
}

// Two graphs on a shared vertex set with a common 10-cycle at different
// weights plus method-specific chords, so the edge intersection is the cycle.
inline std::pair<crsketch::WeightedGraph, crsketch::WeightedGraph> overlapping_pair10() {
    std::vector<crsketch::Edge> e1;
    std::vector<crsketch::Edge> e2;
    for (int i = 0; i < 10; ++i) {
        e1.push_back({i, (i + 1) % 10, 2.0});
        e2.push_back({i, (i + 1) % 10, 3.0});
    }
    e1.push_back({0, 5, 7.0});
    e2.push_back({1, 6, 4.0});
    e2.push_back({2, 7, 9.0});
    return {crsketch::WeightedGraph(10, e1), crsketch::WeightedGraph(10, e2)};
}

} // namespace fixtures
