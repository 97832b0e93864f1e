#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "crsketch/errors.hpp"
#include "crsketch/graph.hpp"
#include "crsketch/io.hpp"
#include "crsketch/metrics.hpp"
#include "crsketch/sparsify.hpp"

namespace crsketch {

enum class Method { CR, ER };

inline const char* method_name(Method m) {
    return m == Method::CR ? "CR" : "ER";
}

// One experiment row. `seed` is the derived per-record seed that reproduces
// the record in isolation. wall_ms stays 0 unless timing was requested, so
// default sweep output is bit-identical across runs. A record whose
// computation failed keeps NaN metrics and failed = true.
struct SweepRecord {
    long long r = 0;
    Method method = Method::CR;
    double retained_fraction = std::numeric_limits<double>::quiet_NaN();
    double isotropic_error = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t seed = 0;
    long long wall_ms = 0;
    bool failed = false;
};

struct SweepOptions {
    // Measure wall time per record. Off by default: timings are inherently
    // run-dependent and would break byte-level reproducibility of the CSV.
    bool timing = false;
};

// Runs the (r, method, repeat) grid over G. Records come back sorted by
// (r, method, repeat) with per-record seeds derived from `seed` and the
// record's own coordinates, so the output is independent of the order of
// r_values/methods and of any execution interleaving. Failures (e.g. ER on
// a disconnected graph) mark their records failed and the sweep continues.
inline std::vector<SweepRecord> run_sweep(const WeightedGraph& G,
                                          std::vector<long long> r_values,
                                          std::vector<Method> methods, long long repeats,
                                          std::uint64_t seed, SweepOptions opts = {}) {
    if (r_values.empty() || methods.empty()) {
        throw InvalidParameter("run_sweep requires at least one r value and one method");
    }
    for (long long r : r_values) {
        if (r < 1) {
            throw InvalidParameter("every r value must be >= 1");
        }
    }
    if (repeats < 1) {
        throw InvalidParameter("repeats must be >= 1");
    }
    std::sort(r_values.begin(), r_values.end());
    r_values.erase(std::unique(r_values.begin(), r_values.end()), r_values.end());
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

    const SymMatrix L = laplacian(G);
    const SymMatrix pinv_sqrt = pseudo_inv_sqrt(L);

    // Sampling distributions are fixed per method; compute them once.
    std::vector<double> q_cr;
    bool have_cr = false;
    std::vector<double> q_er;
    bool have_er = false;
    std::string er_failure;
    for (Method method : methods) {
        if (method == Method::CR && G.m() > 0) {
            const double W = G.total_weight();
            q_cr.resize(std::size_t(G.m()));
            for (int e = 0; e < G.m(); ++e) {
                q_cr[std::size_t(e)] = G.edges()[std::size_t(e)].w / W;
            }
            have_cr = true;
        } else if (method == Method::ER) {
            try {
                const ResistanceTable table = effective_resistances(G);
                double total = 0.0;
                q_er.resize(std::size_t(G.m()));
                for (int e = 0; e < G.m(); ++e) {
                    q_er[std::size_t(e)] = G.edges()[std::size_t(e)].w *
                                           table.resistance[std::size_t(e)];
                    total += q_er[std::size_t(e)];
                }
                for (double& x : q_er) {
                    x /= total;
                }
                have_er = G.m() > 0;
            } catch (const Error&) {
                have_er = false;
            }
        }
    }

    std::vector<SweepRecord> records;
    records.reserve(r_values.size() * methods.size() * std::size_t(repeats));
    for (long long r : r_values) {
        for (Method method : methods) {
            for (long long repeat = 0; repeat < repeats; ++repeat) {
                SweepRecord rec;
                rec.r = r;
                rec.method = method;
                rec.seed = derive_seed(
                    derive_seed(derive_seed(seed, std::uint64_t(r)),
                                method == Method::CR ? 0u : 1u),
                    std::uint64_t(repeat));
                const bool available = method == Method::CR ? have_cr : have_er;
                if (available) {
                    const auto start = std::chrono::steady_clock::now();
                    try {
                        const SparsifyOutput out = detail::sparsify_with(
                            G, r, rec.seed, method == Method::CR ? q_cr : q_er,
                            method == Method::CR);
                        rec.retained_fraction = out.retained_fraction;
                        rec.isotropic_error =
                            isotropic_error_given(pinv_sqrt, L, laplacian(out.sketch));
                    } catch (const Error&) {
                        rec.failed = true;
                    }
                    if (opts.timing) {
                        rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count();
                    }
                } else {
                    rec.failed = true;
                }
                records.push_back(rec);
            }
        }
    }
    return records;
}

// CSV with the fixed header below, one row per record in the given order,
// doubles at 12 significant digits. Failed records keep NaN fields.
inline void write_sweep_csv(const std::vector<SweepRecord>& records,
                            const std::filesystem::path& path) {
    std::string out = "r,method,retained_fraction,isotropic_error,seed,wall_ms\n";
    char buf[160];
    for (const SweepRecord& rec : records) {
        std::snprintf(buf, sizeof(buf), "%lld,%s,%.12g,%.12g,%llu,%lld\n", rec.r,
                      method_name(rec.method), rec.retained_fraction, rec.isotropic_error,
                      (unsigned long long)(rec.seed), rec.wall_ms);
        out += buf;
    }
    detail::write_file_atomic(path, out);
}

} // namespace crsketch
