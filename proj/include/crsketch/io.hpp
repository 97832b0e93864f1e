#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "crsketch/errors.hpp"
#include "crsketch/graph.hpp"

namespace crsketch {

namespace detail {

// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

// All writers go through a temp file plus rename so a failure never leaves a
// partial output behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open for writing: " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            throw Error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error("cannot rename " + tmp.string() + " to " + path.string());
    }
}

} // namespace detail

// Reads an edge-list file: a "n m" header line, then m lines "u v w" with
// 0-based vertex ids and positive decimal weights. Lines starting with '#'
// and blank lines are skipped. Non-canonical input is tolerated where a
// unique meaning exists: u > v is swapped, duplicate pairs are merged by
// summing weights; both cases append a note to `warnings` when provided.
inline WeightedGraph read_graph(const std::filesystem::path& path,
                                std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path.string(), 0);
    }
    auto warn = [warnings](std::string msg) {
        if (warnings != nullptr) {
            warnings->push_back(std::move(msg));
        }
    };

    std::string line;
    long line_no = 0;
    long n = -1;
    long m = -1;
    long edges_read = 0;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream iss(line);
        std::string first;
        if (!(iss >> first) || first[0] == '#') {
            continue;
        }
        iss.clear();
        iss.seekg(0);
        std::string extra;
        if (n < 0) {
            if (!(iss >> n >> m) || n < 1 || m < 0) {
                throw ParseError("expected header 'n m' with n >= 1, m >= 0", line_no);
            }
            if (iss >> extra) {
                throw ParseError("trailing tokens after header", line_no);
            }
            edges.reserve(std::size_t(m));
            continue;
        }
        long u = 0;
        long v = 0;
        double w = 0.0;
        if (!(iss >> u >> v >> w)) {
            throw ParseError("expected edge line 'u v w'", line_no);
        }
        if (iss >> extra) {
            throw ParseError("trailing tokens after edge", line_no);
        }
        ++edges_read;
        if (edges_read > m) {
            throw ParseError("more edge lines than the header's m", line_no);
        }
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw ValidationError("vertex id out of range at line " + std::to_string(line_no));
        }
        if (u == v) {
            throw ValidationError("self-loop at line " + std::to_string(line_no));
        }
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ValidationError("non-positive weight at line " + std::to_string(line_no));
        }
        if (u > v) {
            warn("edge not in canonical u < v order at line " + std::to_string(line_no));
            std::swap(u, v);
        }
        if (!seen.insert({int(u), int(v)}).second) {
            warn("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) +
                 ") merged at line " + std::to_string(line_no));
        }
        edges.push_back(Edge{int(u), int(v), w});
    }
    if (n < 0) {
        throw ParseError("missing header line", line_no);
    }
    if (edges_read != m) {
        throw ParseError("fewer edge lines than the header's m", line_no);
    }
    return WeightedGraph(int(n), std::move(edges));
}

// Writes the canonical edge-list form; read_graph(write_graph(G)) == G.
inline void write_graph(const WeightedGraph& G, const std::filesystem::path& path) {
    std::string out;
    out += std::to_string(G.n()) + " " + std::to_string(G.m()) + "\n";
    for (const Edge& e : G.edges()) {
        out += std::to_string(e.u) + " " + std::to_string(e.v) + " " +
               detail::format_double(e.w) + "\n";
    }
    detail::write_file_atomic(path, out);
}

} // namespace crsketch
