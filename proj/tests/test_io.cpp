#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crsketch/errors.hpp"
#include "crsketch/generators.hpp"
#include "crsketch/graph.hpp"
#include "crsketch/io.hpp"
#include "crsketch/rng.hpp"
#include "crsketch/sweep.hpp"
#include "fixtures.hpp"

using namespace crsketch;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() /
               ("crsketch_test_" + std::to_string(std::uintptr_t(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("read_graph parses the minimal format with comments", "[io]") {
    TempDir tmp;
    const fs::path p = write_text(tmp.path / "g.txt",
                                  "# small graph\n"
                                  "3 2\n"
                                  "\n"
                                  "0 1 2.5\n"
                                  "# interior comment\n"
                                  "1 2 0.5\n");
    const WeightedGraph G = read_graph(p);
    REQUIRE(G.n() == 3);
    REQUIRE(G.m() == 2);
    REQUIRE(G.edges()[0] == Edge{0, 1, 2.5});
    REQUIRE(G.edges()[1] == Edge{1, 2, 0.5});
    REQUIRE(G.total_weight() == 3.0);
}

TEST_CASE("read_graph canonicalizes liberal input with warnings", "[io]") {
    TempDir tmp;
    const fs::path p = write_text(tmp.path / "g.txt",
                                  "3 3\n"
                                  "1 0 1.5\n"
                                  "0 1 2.0\n"
                                  "1 2 1.0\n");
    std::vector<std::string> warnings;
    const WeightedGraph G = read_graph(p, &warnings);
    REQUIRE(G.m() == 2);
    REQUIRE(G.edges()[0] == Edge{0, 1, 3.5});
    REQUIRE(warnings.size() == 2); // one swap note, one duplicate note
}

TEST_CASE("read_graph rejects malformed files with line numbers", "[io]") {
    TempDir tmp;
    auto file = [&tmp](const char* name, const std::string& text) {
        return write_text(tmp.path / name, text);
    };

    REQUIRE_THROWS_AS(read_graph(tmp.path / "absent.txt"), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("empty.txt", "")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("comment_only.txt", "# nothing\n")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("header3.txt", "3 1 9\n0 1 1\n")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("badhdr.txt", "x y\n")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("badedge.txt", "2 1\n0 1\n")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("edge4.txt", "2 1\n0 1 1 1\n")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("toomany.txt", "2 1\n0 1 1\n0 1 2\n")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("toofew.txt", "3 2\n0 1 1\n")), ParseError);
    REQUIRE_THROWS_AS(read_graph(file("loop.txt", "2 1\n1 1 1\n")), ValidationError);
    REQUIRE_THROWS_AS(read_graph(file("range.txt", "2 1\n0 2 1\n")), ValidationError);
    REQUIRE_THROWS_AS(read_graph(file("weight.txt", "2 1\n0 1 0\n")), ValidationError);
    REQUIRE_THROWS_AS(read_graph(file("negw.txt", "2 1\n0 1 -3\n")), ValidationError);

    try {
        read_graph(file("lineno.txt", "2 1\n\n# pad\n0 1\n"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.line() == 4);
        REQUIRE(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("write_graph then read_graph is the identity", "[io]") {
    TempDir tmp;
    SECTION("a large random graph") {
        WeightedGraph G = gen_random(40, 0.65, 100, 321);
        REQUIRE(G.m() >= 450); // keep the fixture honestly large
        const fs::path p = tmp.path / "big.txt";
        write_graph(G, p);
        REQUIRE(read_graph(p) == G);
        REQUIRE(!fs::exists(tmp.path / "big.txt.tmp"));
    }
    SECTION("awkward decimal weights survive exactly") {
        const WeightedGraph G(4, {{0, 1, 0.1},
                                  {1, 2, 1.0 / 3.0},
                                  {2, 3, 12345.6789},
                                  {0, 3, 2.5e-7}});
        const fs::path p = tmp.path / "dec.txt";
        write_graph(G, p);
        REQUIRE(read_graph(p) == G);
    }
    SECTION("the canonical form is byte-stable") {
        const WeightedGraph G = fixtures::skew12();
        write_graph(G, tmp.path / "a.txt");
        write_graph(G, tmp.path / "b.txt");
        REQUIRE(read_text(tmp.path / "a.txt") == read_text(tmp.path / "b.txt"));
        const std::string text = read_text(tmp.path / "a.txt");
        REQUIRE(text.substr(0, 6) == "12 18\n");
    }
}

TEST_CASE("gen_barbell builds two cliques and a path", "[generators]") {
    SECTION("smallest shape: k=3, p=1") {
        const WeightedGraph G = gen_barbell(3, 1, 1, 7);
        REQUIRE(G.n() == 6);
        REQUIRE(G.m() == 7);
        for (const Edge& e : G.edges()) {
            REQUIRE(e.w == 1.0);
        }
        REQUIRE(connected_components(G) == 1);
    }
    SECTION("p=2 routes through one interior vertex") {
        const WeightedGraph G = gen_barbell(3, 2, 5, 7);
        REQUIRE(G.n() == 7);
        REQUIRE(G.m() == 8);
        int touching_interior = 0;
        for (const Edge& e : G.edges()) {
            touching_interior += (e.v == 6);
        }
        REQUIRE(touching_interior == 2);
    }
    SECTION("experiment scale: k=30, p=41") {
        const WeightedGraph G = gen_barbell(30, 41, 100, 1);
        REQUIRE(G.n() == 100);
        REQUIRE(G.m() == 30 * 29 + 41);
        REQUIRE(connected_components(G) == 1);
        for (const Edge& e : G.edges()) {
            REQUIRE(e.w >= 1.0);
            REQUIRE(e.w <= 100.0);
            REQUIRE(e.w == std::floor(e.w));
        }
    }
    SECTION("determinism and validation") {
        REQUIRE(gen_barbell(4, 3, 9, 42) == gen_barbell(4, 3, 9, 42));
        REQUIRE(!(gen_barbell(4, 3, 9, 42) == gen_barbell(4, 3, 9, 43)));
        REQUIRE_THROWS_AS(gen_barbell(1, 1, 1, 0), InvalidParameter);
        REQUIRE_THROWS_AS(gen_barbell(2, 0, 1, 0), InvalidParameter);
        REQUIRE_THROWS_AS(gen_barbell(2, 1, 0, 0), InvalidParameter);
    }
}

TEST_CASE("gen_random spans the density range", "[generators]") {
    SECTION("edge probability extremes") {
        const WeightedGraph full = gen_random(8, 1.0, 3, 5);
        REQUIRE(full.m() == 28);
        const WeightedGraph empty = gen_random(8, 0.0, 3, 5);
        REQUIRE(empty.m() == 0);
    }
    SECTION("density near the mean at p = 0.5") {
        const WeightedGraph G = gen_random(40, 0.5, 10, 99);
        const double pairs = 40.0 * 39.0 / 2.0;
        // binomial three-sigma around pairs/2 is about 42
        REQUIRE(std::abs(G.m() - pairs / 2.0) < 60.0);
    }
    SECTION("determinism and validation") {
        REQUIRE(gen_random(10, 0.5, 10, 3) == gen_random(10, 0.5, 10, 3));
        REQUIRE_THROWS_AS(gen_random(0, 0.5, 1, 0), InvalidParameter);
        REQUIRE_THROWS_AS(gen_random(3, 1.5, 1, 0), InvalidParameter);
        REQUIRE_THROWS_AS(gen_random(3, 0.5, 0, 0), InvalidParameter);
    }
}

TEST_CASE("run_sweep produces the sorted grid with derived seeds", "[sweep]") {
    const WeightedGraph G = fixtures::skew12();
    const std::vector<long long> rs = {40, 20, 40};
    const std::vector<Method> methods = {Method::ER, Method::CR, Method::CR};
    const long long repeats = 3;
    const std::uint64_t seed = 77;
    const std::vector<SweepRecord> recs = run_sweep(G, rs, methods, repeats, seed);

    REQUIRE(recs.size() == 2 * 2 * 3); // duplicates collapse
    std::size_t idx = 0;
    for (long long r : {20LL, 40LL}) {
        for (Method m : {Method::CR, Method::ER}) {
            for (long long rep = 0; rep < repeats; ++rep) {
                const SweepRecord& rec = recs[idx++];
                REQUIRE(rec.r == r);
                REQUIRE(rec.method == m);
                REQUIRE(rec.seed ==
                        derive_seed(derive_seed(derive_seed(seed, std::uint64_t(r)),
                                                m == Method::CR ? 0u : 1u),
                                    std::uint64_t(rep)));
                REQUIRE(!rec.failed);
                REQUIRE(rec.retained_fraction > 0.0);
                REQUIRE(rec.retained_fraction <= 1.0);
                REQUIRE(rec.isotropic_error >= 0.0);
                REQUIRE(rec.wall_ms == 0);
            }
        }
    }
}

TEST_CASE("run_sweep is deterministic and oversampling drives the error down", "[sweep]") {
    const WeightedGraph G = fixtures::skew12();
    const long long m = G.m();
    const auto a = run_sweep(G, {m, 100 * m}, {Method::CR, Method::ER}, 5, 123);
    const auto b = run_sweep(G, {m, 100 * m}, {Method::CR, Method::ER}, 5, 123);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].seed == b[i].seed);
        REQUIRE(a[i].isotropic_error == b[i].isotropic_error);
        REQUIRE(a[i].retained_fraction == b[i].retained_fraction);
    }
    double worst[2][2] = {{0.0, 0.0}, {0.0, 0.0}}; // [r bucket][method]
    for (const SweepRecord& rec : a) {
        double& slot = worst[rec.r == m ? 0 : 1][rec.method == Method::CR ? 0 : 1];
        slot = std::max(slot, rec.isotropic_error);
    }
    for (int method = 0; method < 2; ++method) {
        REQUIRE(worst[1][method] < worst[0][method]);
        REQUIRE(worst[1][method] < 0.75); // r = 100m keeps the error small
    }
}

TEST_CASE("run_sweep marks unavailable methods failed and continues", "[sweep]") {
    const WeightedGraph two(6, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
                                {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}});
    const auto recs = run_sweep(two, {12}, {Method::CR, Method::ER}, 2, 9);
    REQUIRE(recs.size() == 4);
    for (const SweepRecord& rec : recs) {
        if (rec.method == Method::ER) {
            REQUIRE(rec.failed);
            REQUIRE(std::isnan(rec.isotropic_error));
            REQUIRE(std::isnan(rec.retained_fraction));
        } else {
            REQUIRE(!rec.failed);
        }
    }

    const WeightedGraph lonely(1, {});
    const auto none = run_sweep(lonely, {4}, {Method::CR, Method::ER}, 1, 9);
    REQUIRE(none.size() == 2);
    REQUIRE(none[0].failed);
    REQUIRE(none[1].failed);
}

TEST_CASE("run_sweep validation", "[sweep]") {
    const WeightedGraph G = fixtures::skew12();
    REQUIRE_THROWS_AS(run_sweep(G, {}, {Method::CR}, 1, 0), InvalidParameter);
    REQUIRE_THROWS_AS(run_sweep(G, {4}, {}, 1, 0), InvalidParameter);
    REQUIRE_THROWS_AS(run_sweep(G, {0}, {Method::CR}, 1, 0), InvalidParameter);
    REQUIRE_THROWS_AS(run_sweep(G, {4}, {Method::CR}, 0, 0), InvalidParameter);
}

TEST_CASE("write_sweep_csv emits the pinned header and stable bytes", "[sweep]") {
    TempDir tmp;
    const WeightedGraph two(6, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
                                {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}});
    const auto recs = run_sweep(two, {8, 16}, {Method::CR, Method::ER}, 2, 5);
    write_sweep_csv(recs, tmp.path / "a.csv");
    write_sweep_csv(recs, tmp.path / "b.csv");
    const std::string a = read_text(tmp.path / "a.csv");
    REQUIRE(a == read_text(tmp.path / "b.csv"));

    std::istringstream ss(a);
    std::string line;
    REQUIRE(std::getline(ss, line));
    REQUIRE(line == "r,method,retained_fraction,isotropic_error,seed,wall_ms");
    std::size_t rows = 0;
    std::size_t nan_rows = 0;
    while (std::getline(ss, line)) {
        ++rows;
        REQUIRE((line.find(",CR,") != std::string::npos ||
                 line.find(",ER,") != std::string::npos));
        REQUIRE(line.back() == '0'); // wall_ms column stays 0 without timing
        nan_rows += line.find("nan,") != std::string::npos;
    }
    REQUIRE(rows == recs.size());
    REQUIRE(nan_rows == 4); // the ER half of the grid
}
