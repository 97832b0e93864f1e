#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "crsketch/crmm.hpp"
#include "crsketch/errors.hpp"
#include "crsketch/graph.hpp"
#include "crsketch/linalg.hpp"
#include "crsketch/rng.hpp"

namespace crsketch {

// Diagonal sketching matrix over the source edges: entry e is
// count(e) / (r * p_e), zero for unsampled edges, so Ltil = B^T S B.
struct SketchingDiag {
    long long r = 0;
    std::vector<double> entries;
};

// Output of one sparsification run. The sketch shares the source vertex set,
// its edge set is a subset of the source edge set, and laplacian(sketch)
// equals B^T S B up to roundoff.
struct SparsifyOutput {
    WeightedGraph sketch;
    SketchingDiag S;
    SampleMultiset samples;
    double source_total_weight = 0.0;
    long long distinct_edges = 0;
    double retained_fraction = 0.0;
};

// Exact effective resistances r_e = ||L^{-1/2} chi_e||^2 per canonical edge,
// alongside the weight-fraction diagonal pi_e = w_e / W.
struct ResistanceTable {
    std::vector<double> resistance;
    std::vector<double> pi;
};

// Unit-Frobenius-normalized weighted incidence vector of edge index e:
// x_e = sqrt(w_e / (2W)) * chi_e, so that ||x_e||^2 = w_e / W = p_e.
// (||chi_e||^2 = 2 forces the extra factor 2 under the square root.)
inline Vector normalized_incidence(const WeightedGraph& G, int e) {
    if (e < 0 || e >= G.m()) {
        throw InvalidParameter("edge index out of range");
    }
    const Edge& ed = G.edges()[std::size_t(e)];
    return std::sqrt(ed.w / (2.0 * G.total_weight())) * incidence_vector(G.n(), ed.u, ed.v);
}

namespace detail {

// Shared sampling core for both sparsifiers: draw r edges with replacement
// from q. Weight-proportional sampling gives a sampled edge count * W / r
// (each draw adds W/r); a general unbiased distribution gives
// count * w_e / (r * q_e). Products are grouped so the exact-recovery cases
// (single edge, q_e = 1) come out exact in floating point.
inline SparsifyOutput sparsify_with(const WeightedGraph& G, long long r, std::uint64_t seed,
                                    const std::vector<double>& q, bool weight_proportional) {
    if (G.m() == 0) {
        throw NoEdges("cannot sparsify a graph without edges");
    }
    if (r < 1) {
        throw InvalidParameter("sample count r must be >= 1");
    }
    const int m = G.m();
    const double W = G.total_weight();

    DiscreteSampler sampler(q);
    Rng gen = make_rng(seed);
    SampleMultiset samples;
    samples.N = m;
    samples.draws.reserve(std::size_t(r));
    for (long long j = 0; j < r; ++j) {
        samples.draws.push_back(sampler.draw(gen));
    }
    const std::vector<long long> counts = samples.counts();

    SketchingDiag S;
    S.r = r;
    S.entries.assign(std::size_t(m), 0.0);
    std::vector<Edge> kept;
    for (int e = 0; e < m; ++e) {
        const long long c = counts[std::size_t(e)];
        if (c == 0) {
            continue;
        }
        const Edge& ed = G.edges()[std::size_t(e)];
        const double wtil = weight_proportional
                                ? (double(c) * W) / double(r)
                                : (double(c) * ed.w) / (double(r) * q[std::size_t(e)]);
        S.entries[std::size_t(e)] = wtil / ed.w;
        kept.push_back(Edge{ed.u, ed.v, wtil});
    }

    const long long distinct = (long long)(kept.size());
    return SparsifyOutput{
        WeightedGraph(G.n(), std::move(kept)),
        std::move(S),
        std::move(samples),
        W,
        distinct,
        double(distinct) / double(m),
    };
}

} // namespace detail

// Generic importance-sampling sparsifier: draw r edges with replacement from
// an explicit distribution and reweight each draw by w_e / (r * q_e), which
// keeps E[Ltil] = L for any q with full support on the edges.
inline SparsifyOutput sparsify_with_distribution(const WeightedGraph& G, long long r,
                                                 std::uint64_t seed,
                                                 const SamplingDistribution& dist) {
    if (G.m() == 0) {
        throw NoEdges("cannot sparsify a graph without edges");
    }
    detail::validate_distribution(dist, G.m());
    for (double q : dist.probs) {
        if (q == 0.0) {
            throw DegenerateDistribution("every edge must have positive sampling probability");
        }
    }
    return detail::sparsify_with(G, r, seed, dist.probs, false);
}

// CR spectral sparsifier: sample r edges with replacement with p_e = w_e / W;
// every draw adds W/r to the sampled edge's sketch weight, so repeated draws
// merge into heavier edges and the sketch total weight stays W.
inline SparsifyOutput cr_sparsify(const WeightedGraph& G, long long r, std::uint64_t seed) {
    if (G.m() == 0) {
        throw NoEdges("cannot sparsify a graph without edges");
    }
    const double W = G.total_weight();
    std::vector<double> p(std::size_t(G.m()));
    for (int e = 0; e < G.m(); ++e) {
        p[std::size_t(e)] = G.edges()[std::size_t(e)].w / W;
    }
    return detail::sparsify_with(G, r, seed, p, true);
}

// Exact per-edge effective resistances via the pseudo-inverse square root:
// r_e = ||L^{-1/2} chi_e||^2 = chi_e^T L^dagger chi_e. Dense cost, which is
// the point of comparison for the sampling approach.
inline ResistanceTable effective_resistances(const WeightedGraph& G) {
    if (connected_components(G) != 1) {
        throw DisconnectedGraph("effective resistances require a connected graph");
    }
    const SymMatrix R = pseudo_inv_sqrt(laplacian(G));
    const double W = G.total_weight();
    ResistanceTable table;
    table.resistance.reserve(std::size_t(G.m()));
    table.pi.reserve(std::size_t(G.m()));
    for (const Edge& e : G.edges()) {
        table.resistance.push_back((R.mat().col(e.u) - R.mat().col(e.v)).squaredNorm());
        table.pi.push_back(e.w / W);
    }
    return table;
}

// Effective-resistance baseline sparsifier: q_e proportional to w_e * r_e,
// each draw adds w_e / (r q_e), keeping the estimator unbiased.
inline SparsifyOutput er_sparsify(const WeightedGraph& G, long long r, std::uint64_t seed) {
    const ResistanceTable table = effective_resistances(G);
    std::vector<double> q(std::size_t(G.m()));
    double total = 0.0;
    for (int e = 0; e < G.m(); ++e) {
        q[std::size_t(e)] = G.edges()[std::size_t(e)].w * table.resistance[std::size_t(e)];
        total += q[std::size_t(e)];
    }
    for (double& x : q) {
        x /= total;
    }
    return detail::sparsify_with(G, r, seed, q, false);
}

// CR estimate of the intersection product B1^T B2 over boundary matrices
// aligned on the union edge set. The norm-product probabilities are
// proportional to sqrt(w1_e * w2_e), hence supported exactly on the common
// edges; with G1 == G2 the draws and estimate reduce to cr_sparsify's.
inline GeneralMatrix intersection_approx(const WeightedGraph& G1, const WeightedGraph& G2,
                                         long long r, std::uint64_t seed) {
    if (G1.n() != G2.n()) {
        throw ShapeError("intersection requires graphs on the same vertex set");
    }
    if (r < 1) {
        throw InvalidParameter("sample count r must be >= 1");
    }
    struct UnionEdge {
        int u;
        int v;
        double w1;
        double w2;
    };
    std::vector<UnionEdge> joint;
    const std::vector<Edge>& e1 = G1.edges();
    const std::vector<Edge>& e2 = G2.edges();
    std::size_t i = 0;
    std::size_t j = 0;
    auto before = [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    };
    while (i < e1.size() || j < e2.size()) {
        if (j == e2.size() || (i < e1.size() && before(e1[i], e2[j]))) {
            joint.push_back(UnionEdge{e1[i].u, e1[i].v, e1[i].w, 0.0});
            ++i;
        } else if (i == e1.size() || before(e2[j], e1[i])) {
            joint.push_back(UnionEdge{e2[j].u, e2[j].v, 0.0, e2[j].w});
            ++j;
        } else {
            joint.push_back(UnionEdge{e1[i].u, e1[i].v, e1[i].w, e2[j].w});
            ++i;
            ++j;
        }
    }

    // Row e of B_k has norm sqrt(2 w_k); the shared factor 2 keeps the
    // normalizer bit-compatible with the w_e / W probabilities of
    // cr_sparsify in the self-intersection case.
    std::vector<double> prod(joint.size());
    double total = 0.0;
    for (std::size_t k = 0; k < joint.size(); ++k) {
        prod[k] = 2.0 * std::sqrt(joint[k].w1 * joint[k].w2);
        total += prod[k];
    }
    if (total <= 0.0) {
        throw DegenerateDistribution("edge sets do not intersect");
    }
    std::vector<double> p(joint.size());
    for (std::size_t k = 0; k < joint.size(); ++k) {
        p[k] = prod[k] / total;
    }

    DiscreteSampler sampler(p);
    Rng gen = make_rng(seed);
    const int n = G1.n();
    GeneralMatrix Y = GeneralMatrix::Zero(n, n);
    for (long long t = 0; t < r; ++t) {
        const int k = sampler.draw(gen);
        const UnionEdge& ue = joint[std::size_t(k)];
        const double c = std::sqrt(ue.w1 * ue.w2) / (double(r) * p[std::size_t(k)]);
        Y(ue.u, ue.u) += c;
        Y(ue.v, ue.v) += c;
        Y(ue.u, ue.v) -= c;
        Y(ue.v, ue.u) -= c;
    }
    return Y;
}

} // namespace crsketch
