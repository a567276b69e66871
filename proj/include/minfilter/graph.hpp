#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minfilter/errors.hpp"
#include "minfilter/markov.hpp"
#include "minfilter/rng.hpp"

namespace minfilter {

/// Simple undirected unweighted graph, dense adjacency, no self-loops.
class Graph {
public:
    explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

    std::size_t size() const { return n_; }

    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }

    void add_edge(std::size_t i, std::size_t j) {
        if (i == j) throw std::invalid_argument("self-loop");
        if (i >= n_ || j >= n_) throw std::invalid_argument("vertex out of range");
        adj_[i * n_ + j] = 1;
        adj_[j * n_ + i] = 1;
    }

    std::size_t degree(std::size_t v) const {
        std::size_t d = 0;
        for (std::size_t u = 0; u < n_; ++u) d += adj_[v * n_ + u];
        return d;
    }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) e += adj_[i * n_ + j];
        return e;
    }

    std::size_t min_degree() const {
        std::size_t best = n_;
        for (std::size_t v = 0; v < n_; ++v) best = std::min(best, degree(v));
        return best;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    std::size_t n_;
    std::vector<std::uint8_t> adj_;
};

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

/// side x side grid with 4-neighbor adjacency (bipartite).
inline Graph grid_graph(std::size_t side) {
    if (side < 2) throw std::invalid_argument("grid needs side >= 2");
    Graph g(side * side);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) {
            if (c + 1 < side) g.add_edge(r * side + c, r * side + c + 1);
            if (r + 1 < side) g.add_edge(r * side + c, (r + 1) * side + c);
        }
    return g;
}

inline Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

/// Edge list: one "u v" pair per line, 0-based; '#' starts a comment.
/// Vertex count is max index + 1.
inline Graph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list '" + path + "'");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t max_vertex = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u)) continue; // blank line
        if (!(ss >> v) || u < 0 || v < 0 || u == v)
            throw DataError("bad edge at line " + std::to_string(line_no) + " of '" + path + "'");
        edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        max_vertex = std::max({max_vertex, edges.back().first, edges.back().second});
    }
    if (edges.empty()) throw DataError("edge list '" + path + "' has no edges");
    Graph g(max_vertex + 1);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

/// Largest 2-neighborhood: max over v of #{u != v : dist(u, v) <= 2}.
inline std::size_t neighborhood_bound(const Graph& g) {
    const std::size_t n = g.size();
    std::size_t best = 0;
    std::vector<std::uint8_t> reached(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::fill(reached.begin(), reached.end(), 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (!g.adjacent(v, u)) continue;
            reached[u] = 1;
            for (std::size_t w = 0; w < n; ++w)
                if (g.adjacent(u, w) && w != v) reached[w] = 1;
        }
        std::size_t count = 0;
        for (std::size_t u = 0; u < n; ++u) count += reached[u];
        best = std::max(best, count);
    }
    return best;
}

/// Independently add each missing edge with probability p, keeping the
/// original edges. Pairs are visited in fixed lexicographic order, so a seed
/// pins the output exactly.
inline Graph perturb(const Graph& g, double p, std::uint64_t seed) {
    if (!(p >= 0.0) || p >= 1.0) throw std::invalid_argument("p must be in [0, 1)");
    Graph out = g;
    SeededRng rng(seed);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (g.adjacent(i, j)) continue;
            if (rng.uniform() < p) out.add_edge(i, j);
        }
    return out;
}

/// Non-lazy uniform walk: column j puts 1/deg(j) on each neighbor of j.
inline TransitionMatrix transition_nonlazy(const Graph& g) {
    const std::size_t n = g.size();
    Matrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t deg = g.degree(j);
        if (deg == 0) throw DataError("isolated vertex " + std::to_string(j));
        for (std::size_t i = 0; i < n; ++i)
            if (g.adjacent(i, j)) p(i, j) = 1.0 / static_cast<double>(deg);
    }
    return make_transition(std::move(p), true);
}

} // namespace minfilter
