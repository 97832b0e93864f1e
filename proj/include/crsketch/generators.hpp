#pragma once

#include <cstdint>
#include <vector>

#include "crsketch/errors.hpp"
#include "crsketch/graph.hpp"
#include "crsketch/rng.hpp"

namespace crsketch {

// Two complete graphs K_k joined by a path with p edges through p-1 fresh
// vertices: n = 2k + p - 1, m = k(k-1) + p. Vertices 0..k-1 and k..2k-1 are
// the cliques, 2k.. are the path interior. Integer weights are drawn
// uniformly from {1..weight_max} in deterministic edge order: clique A
// pairs lexicographic, then clique B, then the path from the A side.
inline WeightedGraph gen_barbell(int k, int p, int weight_max, std::uint64_t seed) {
    if (k < 2 || p < 1 || weight_max < 1) {
        throw InvalidParameter("gen_barbell requires k >= 2, p >= 1, weight_max >= 1");
    }
    Rng gen = make_rng(seed);
    std::vector<Edge> edges;
    edges.reserve(std::size_t(k) * std::size_t(k - 1) + std::size_t(p));
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) {
            edges.push_back(Edge{u, v, double(uniform_weight(gen, weight_max))});
        }
    }
    for (int u = k; u < 2 * k; ++u) {
        for (int v = u + 1; v < 2 * k; ++v) {
            edges.push_back(Edge{u, v, double(uniform_weight(gen, weight_max))});
        }
    }
    if (p == 1) {
        edges.push_back(Edge{k - 1, k, double(uniform_weight(gen, weight_max))});
    } else {
        edges.push_back(Edge{k - 1, 2 * k, double(uniform_weight(gen, weight_max))});
        for (int i = 0; i < p - 2; ++i) {
            edges.push_back(Edge{2 * k + i, 2 * k + i + 1,
                                 double(uniform_weight(gen, weight_max))});
        }
        edges.push_back(Edge{k, 2 * k + p - 2, double(uniform_weight(gen, weight_max))});
    }
    return WeightedGraph(2 * k + p - 1, std::move(edges));
}

// Erdos-Renyi-style graph: each pair u < v appears independently with
// probability edge_prob, integer weight uniform in {1..weight_max}. Pairs
// are visited in lexicographic order and consume exactly one uniform for
// presence plus one for the weight when present, so a seed pins the graph.
inline WeightedGraph gen_random(int n, double edge_prob, int weight_max, std::uint64_t seed) {
    if (n < 1 || !(edge_prob >= 0.0) || !(edge_prob <= 1.0) || weight_max < 1) {
        throw InvalidParameter(
            "gen_random requires n >= 1, edge_prob in [0,1], weight_max >= 1");
    }
    Rng gen = make_rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (uniform01(gen) < edge_prob) {
                edges.push_back(Edge{u, v, double(uniform_weight(gen, weight_max))});
            }
        }
    }
    return WeightedGraph(n, std::move(edges));
}

} // namespace crsketch
