#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "crsketch/errors.hpp"
#include "crsketch/linalg.hpp"

namespace crsketch {

struct Edge {
    int u;
    int v;
    double w;

    bool operator==(const Edge&) const = default;
};

// Weighted undirected simple graph with dense 0-based vertex ids. Edges are
// stored canonically: u < v, sorted (u, v)-lexicographic, no duplicates.
// Duplicate pairs passed to the constructor are merged by summing weights
// (the only Laplacian-consistent reading); self-loops and nonpositive
// weights are rejected.
class WeightedGraph {
public:
    WeightedGraph(int n, std::vector<Edge> edges) : n_(n) {
        if (n < 1) {
            throw ValidationError("vertex count must be >= 1");
        }
        for (Edge& e : edges) {
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
                throw ValidationError("edge endpoint out of range");
            }
            if (e.u == e.v) {
                throw ValidationError("self-loops are not allowed");
            }
            if (!(e.w > 0.0) || !std::isfinite(e.w)) {
                throw ValidationError("edge weights must be positive and finite");
            }
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        for (const Edge& e : edges) {
            if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
                edges_.back().w += e.w;
            } else {
                edges_.push_back(e);
            }
        }
        total_weight_ = 0.0;
        for (const Edge& e : edges_) {
            total_weight_ += e.w;
        }
    }

    int n() const { return n_; }
    int m() const { return int(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    // W = sum of edge weights = ||B||_F^2 / 2 for the derived boundary matrix.
    double total_weight() const { return total_weight_; }

    bool operator==(const WeightedGraph&) const = default;

private:
    int n_;
    std::vector<Edge> edges_;
    double total_weight_ = 0.0;
};

// chi_e = e_u - e_v.
inline Vector incidence_vector(int n, int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) {
        throw ValidationError("incidence vector requires distinct in-range endpoints");
    }
    Vector chi = Vector::Zero(n);
    chi(u) = 1.0;
    chi(v) = -1.0;
    return chi;
}

// L = D - A: weighted degrees on the diagonal, -w on edge positions. Both
// triangles are assembled identically, so the result is exactly symmetric
// and integer-weight graphs get exactly zero row sums.
inline SymMatrix laplacian(const WeightedGraph& G) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(G.n(), G.n());
    for (const Edge& e : G.edges()) {
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
    }
    return SymMatrix(L);
}

// m x n boundary matrix: row e has -sqrt(w) at u and +sqrt(w) at v, u < v.
// The orientation is an arbitrary fixed choice; B^T B is invariant to it.
inline GeneralMatrix boundary(const WeightedGraph& G) {
    GeneralMatrix B = GeneralMatrix::Zero(G.m(), G.n());
    for (int e = 0; e < G.m(); ++e) {
        const Edge& ed = G.edges()[std::size_t(e)];
        const double s = std::sqrt(ed.w);
        B(e, ed.u) = -s;
        B(e, ed.v) = s;
    }
    return B;
}

// L = B^T B accumulated row by row as w_e * chi_e chi_e^T. Every row must
// have exactly two nonzeros of opposite sign and equal magnitude.
inline SymMatrix laplacian_from_boundary(const GeneralMatrix& B) {
    if (B.cols() < 1) {
        throw InvalidBoundary("boundary matrix must have at least one vertex column");
    }
    const int n = int(B.cols());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < B.rows(); ++r) {
        int u = -1;
        int v = -1;
        for (int c = 0; c < n; ++c) {
            if (B(r, c) != 0.0) {
                if (u < 0) {
                    u = c;
                } else if (v < 0) {
                    v = c;
                } else {
                    throw InvalidBoundary("boundary row has more than two nonzeros");
                }
            }
        }
        if (v < 0) {
            throw InvalidBoundary("boundary row has fewer than two nonzeros");
        }
        const double a = B(r, u);
        const double b = B(r, v);
        if (!std::isfinite(a) || !std::isfinite(b) || a * b >= 0.0 ||
            std::abs(std::abs(a) - std::abs(b)) > 1e-12 * std::abs(a)) {
            throw InvalidBoundary("boundary row entries must be opposite and equal magnitude");
        }
        L(u, u) += a * a;
        L(v, v) += b * b;
        L(u, v) += a * b;
        L(v, u) += a * b;
    }
    return SymMatrix(L);
}

inline int connected_components(const WeightedGraph& G) {
    std::vector<int> parent(std::size_t(G.n()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[std::size_t(x)] != x) {
            parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
            x = parent[std::size_t(x)];
        }
        return x;
    };
    int components = G.n();
    for (const Edge& e : G.edges()) {
        const int ru = find(e.u);
        const int rv = find(e.v);
        if (ru != rv) {
            parent[std::size_t(ru)] = rv;
            --components;
        }
    }
    return components;
}

} // namespace crsketch
