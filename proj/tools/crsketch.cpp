// Command-line surface: generate / sparsify / resistances / metrics / sweep.
// Exit codes: 0 success, 1 data error (unreadable or invalid inputs), 2 usage
// error. All randomness is controlled by --seed; outputs are byte-stable for
// a fixed seed and inputs (sweep timing is opt-in for exactly that reason).

#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crsketch/crsketch.hpp"

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

crsketch::WeightedGraph read_graph_verbose(const std::string& path) {
    std::vector<std::string> warnings;
    crsketch::WeightedGraph G = crsketch::read_graph(path, &warnings);
    for (const std::string& w : warnings) {
        std::cerr << "warning: " << path << ": " << w << "\n";
    }
    return G;
}

void write_json_atomic(const ordered_json& doc, const std::string& path) {
    crsketch::detail::write_file_atomic(path, doc.dump(2) + "\n");
}

std::vector<crsketch::Method> parse_methods(const std::string& list) {
    std::vector<crsketch::Method> methods;
    std::istringstream iss(list);
    std::string token;
    while (std::getline(iss, token, ',')) {
        if (token == "cr") {
            methods.push_back(crsketch::Method::CR);
        } else if (token == "er") {
            methods.push_back(crsketch::Method::ER);
        } else {
            throw UsageError("unknown method '" + token + "' (expected cr or er)");
        }
    }
    if (methods.empty()) {
        throw UsageError("--methods must list at least one of cr, er");
    }
    return methods;
}

int cmd_generate(const std::string& kind, const CLI::Option* k_opt, int k,
                 const CLI::Option* p_opt, int p, const CLI::Option* n_opt, int n,
                 const CLI::Option* prob_opt, double edge_prob, int weight_max,
                 std::uint64_t seed, const std::string& out) {
    if (kind == "barbell") {
        if (!*k_opt || !*p_opt) {
            throw UsageError("--kind barbell requires --k and --p");
        }
        if (*n_opt || *prob_opt) {
            throw UsageError("--n/--edge-prob only apply to --kind random");
        }
        crsketch::write_graph(crsketch::gen_barbell(k, p, weight_max, seed), out);
    } else {
        if (!*n_opt || !*prob_opt) {
            throw UsageError("--kind random requires --n and --edge-prob");
        }
        if (*k_opt || *p_opt) {
            throw UsageError("--k/--p only apply to --kind barbell");
        }
        crsketch::write_graph(crsketch::gen_random(n, edge_prob, weight_max, seed), out);
    }
    return 0;
}

int cmd_sparsify(const std::string& in, const std::string& method, long long r,
                 std::uint64_t seed, const std::string& out_graph,
                 const std::string& report_path) {
    const crsketch::WeightedGraph G = read_graph_verbose(in);
    const crsketch::SparsifyOutput out = method == "cr" ? crsketch::cr_sparsify(G, r, seed)
                                                        : crsketch::er_sparsify(G, r, seed);
    crsketch::write_graph(out.sketch, out_graph);
    if (!report_path.empty()) {
        ordered_json doc;
        doc["method"] = method;
        doc["r"] = r;
        doc["seed"] = seed;
        doc["n"] = G.n();
        doc["source_edges"] = G.m();
        doc["source_total_weight"] = G.total_weight();
        doc["distinct_edges"] = out.distinct_edges;
        doc["retained_fraction"] = out.retained_fraction;
        doc["sketch_total_weight"] = out.sketch.total_weight();
        write_json_atomic(doc, report_path);
    }
    return 0;
}

int cmd_resistances(const std::string& in, const std::string& out_path) {
    const crsketch::WeightedGraph G = read_graph_verbose(in);
    const crsketch::ResistanceTable table = crsketch::effective_resistances(G);
    std::string out = "# u v w resistance\n";
    for (int e = 0; e < G.m(); ++e) {
        const crsketch::Edge& ed = G.edges()[std::size_t(e)];
        out += std::to_string(ed.u) + " " + std::to_string(ed.v) + " " +
               crsketch::detail::format_double(ed.w) + " " +
               crsketch::detail::format_double(table.resistance[std::size_t(e)]) + "\n";
    }
    crsketch::detail::write_file_atomic(out_path, out);
    return 0;
}

int cmd_metrics(const std::string& in, const std::string& sketch_path,
                const std::string& report_path, const CLI::Option* eps_opt, double eps) {
    const crsketch::WeightedGraph G = read_graph_verbose(in);
    const crsketch::WeightedGraph sketch = read_graph_verbose(sketch_path);
    const crsketch::SymMatrix L = crsketch::laplacian(G);
    const crsketch::SymMatrix Lt = crsketch::laplacian(sketch);
    std::optional<double> additive_bound;
    if (*eps_opt) {
        additive_bound = 2.0 * G.total_weight() * eps;
    }
    const crsketch::ErrorReport report =
        crsketch::compute_error_report(L, Lt, -1.0, additive_bound);

    ordered_json doc;
    doc["n"] = G.n();
    doc["source_total_weight"] = G.total_weight();
    doc["delta_frobenius"] = report.delta_frobenius;
    doc["delta_spectral"] = report.delta_spectral;
    doc["isotropic_error"] = report.isotropic_error;
    doc["null_space_mismatch"] = report.null_space_mismatch;
    try {
        doc["condition_number"] = crsketch::condition_number_laplacian(L);
    } catch (const crsketch::Error&) {
        doc["condition_number"] = nullptr;
    }
    if (*eps_opt) {
        doc["eps"] = eps;
        doc["additive_bound_frobenius"] = *additive_bound;
        doc["additive_certificate"] =
            crsketch::check_additive_certificate(L, Lt, G.total_weight(), eps);
        try {
            doc["multiplicative_certificate"] =
                crsketch::check_multiplicative_certificate(L, Lt, eps);
        } catch (const crsketch::Error&) {
            doc["multiplicative_certificate"] = nullptr;
        }
    }
    write_json_atomic(doc, report_path);
    return 0;
}

int cmd_sweep(const std::string& in, const std::vector<long long>& r_list,
              const std::string& methods_list, long long repeats, std::uint64_t seed,
              const std::string& csv_path, bool timing) {
    const crsketch::WeightedGraph G = read_graph_verbose(in);
    const std::vector<crsketch::Method> methods = parse_methods(methods_list);
    crsketch::SweepOptions opts;
    opts.timing = timing;
    const std::vector<crsketch::SweepRecord> records =
        crsketch::run_sweep(G, r_list, methods, repeats, seed, opts);
    crsketch::write_sweep_csv(records, csv_path);
    long long failed = 0;
    for (const crsketch::SweepRecord& rec : records) {
        failed += rec.failed ? 1 : 0;
    }
    if (failed > 0) {
        std::cerr << "warning: " << failed << " of " << records.size()
                  << " records failed (NaN rows in the CSV)\n";
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"spectral graph sparsification by randomized matrix multiplication"};
    app.require_subcommand(1);
    const int int_max = std::numeric_limits<int>::max();

    // generate
    CLI::App* generate = app.add_subcommand("generate", "write a generated graph");
    std::string gen_kind;
    int gen_k = 0;
    int gen_p = 0;
    int gen_n = 0;
    double gen_prob = 0.0;
    int gen_wmax = 100;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    generate->add_option("--kind", gen_kind, "barbell or random")
        ->required()
        ->check(CLI::IsMember({"barbell", "random"}));
    CLI::Option* gen_k_opt =
        generate->add_option("--k", gen_k, "clique size (barbell)")->check(CLI::Range(2, int_max));
    CLI::Option* gen_p_opt =
        generate->add_option("--p", gen_p, "path edge count (barbell)")->check(CLI::PositiveNumber);
    CLI::Option* gen_n_opt =
        generate->add_option("--n", gen_n, "vertex count (random)")->check(CLI::PositiveNumber);
    CLI::Option* gen_prob_opt = generate->add_option("--edge-prob", gen_prob, "edge probability (random)")
                                    ->check(CLI::Range(0.0, 1.0));
    generate->add_option("--weight-max", gen_wmax, "weights are uniform on {1..weight-max}")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate->add_option("--seed", gen_seed, "rng seed")->capture_default_str();
    generate->add_option("--out", gen_out, "output edge-list path")->required();

    // sparsify
    CLI::App* sparsify = app.add_subcommand("sparsify", "sparsify a graph");
    std::string sp_in;
    std::string sp_method;
    long long sp_r = 0;
    std::uint64_t sp_seed = 0;
    std::string sp_out_graph;
    std::string sp_report;
    sparsify->add_option("--in", sp_in, "input edge-list path")->required();
    sparsify->add_option("--method", sp_method, "cr or er")
        ->required()
        ->check(CLI::IsMember({"cr", "er"}));
    sparsify->add_option("--r", sp_r, "number of sampling trials")
        ->required()
        ->check(CLI::PositiveNumber);
    sparsify->add_option("--seed", sp_seed, "rng seed")->capture_default_str();
    sparsify->add_option("--out-graph", sp_out_graph, "output sketch edge-list path")->required();
    sparsify->add_option("--report", sp_report, "optional JSON report path");

    // resistances
    CLI::App* resistances = app.add_subcommand("resistances", "exact effective resistances");
    std::string re_in;
    std::string re_out;
    resistances->add_option("--in", re_in, "input edge-list path")->required();
    resistances->add_option("--out", re_out, "output table path")->required();

    // metrics
    CLI::App* metrics = app.add_subcommand("metrics", "error metrics of a sketch vs its source");
    std::string me_in;
    std::string me_sketch;
    std::string me_report;
    double me_eps = 0.0;
    metrics->add_option("--in", me_in, "source edge-list path")->required();
    metrics->add_option("--sketch", me_sketch, "sketch edge-list path")->required();
    metrics->add_option("--report", me_report, "output JSON report path")->required();
    CLI::Option* me_eps_opt = metrics->add_option("--eps", me_eps, "certificate scale eps")
                                  ->check(CLI::PositiveNumber);

    // sweep
    CLI::App* sweep = app.add_subcommand("sweep", "run the (r, method, repeat) experiment grid");
    std::string sw_in;
    std::vector<long long> sw_r_list;
    std::string sw_methods = "cr,er";
    long long sw_repeats = 1;
    std::uint64_t sw_seed = 0;
    std::string sw_csv;
    bool sw_timing = false;
    sweep->add_option("--in", sw_in, "input edge-list path")->required();
    sweep->add_option("--r-list", sw_r_list, "comma-separated sampling-trial counts")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sweep->add_option("--methods", sw_methods, "comma-separated subset of cr,er")
        ->capture_default_str();
    sweep->add_option("--repeats", sw_repeats, "repeats per (r, method)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--seed", sw_seed, "rng seed")->capture_default_str();
    sweep->add_option("--csv", sw_csv, "output CSV path")->required();
    sweep->add_flag("--timing", sw_timing,
                    "record wall-clock ms per record (makes the CSV run-dependent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (generate->parsed()) {
        return cmd_generate(gen_kind, gen_k_opt, gen_k, gen_p_opt, gen_p, gen_n_opt, gen_n,
                            gen_prob_opt, gen_prob, gen_wmax, gen_seed, gen_out);
    }
    if (sparsify->parsed()) {
        return cmd_sparsify(sp_in, sp_method, sp_r, sp_seed, sp_out_graph, sp_report);
    }
    if (resistances->parsed()) {
        return cmd_resistances(re_in, re_out);
    }
    if (metrics->parsed()) {
        return cmd_metrics(me_in, me_sketch, me_report, me_eps_opt, me_eps);
    }
    if (sweep->parsed()) {
        return cmd_sweep(sw_in, sw_r_list, sw_methods, sw_repeats, sw_seed, sw_csv, sw_timing);
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const crsketch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
