#pragma once

// Seeded random inputs for property-style tests.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "minfilter/data_cloud.hpp"
#include "minfilter/graph.hpp"
#include "minfilter/matrix.hpp"
#include "minfilter/rng.hpp"

namespace testgen {

inline minfilter::DataCloud random_cloud(minfilter::SeededRng& rng, std::size_t n, std::size_t d,
                                         double spread = 2.0) {
    minfilter::DataCloud cloud;
    cloud.points = minfilter::Matrix(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            cloud.points(i, j) = spread * (rng.uniform() - 0.5);
    return cloud;
}

inline minfilter::Matrix random_symmetric(minfilter::SeededRng& rng, std::size_t n,
                                          double scale = 1.0) {
    minfilter::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = scale * (2.0 * rng.uniform() - 1.0);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

inline minfilter::Matrix random_nonneg_symmetric_zero_diag(minfilter::SeededRng& rng,
                                                           std::size_t n) {
    minfilter::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rng.uniform();
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

/// Random tree plus extra edges: connected, min degree >= 1.
inline minfilter::Graph random_connected_graph(minfilter::SeededRng& rng, std::size_t n,
                                               double extra_edge_prob = 0.2) {
    minfilter::Graph g(n);
    for (std::size_t v = 1; v < n; ++v)
        g.add_edge(v, static_cast<std::size_t>(rng.below(v)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!g.adjacent(i, j) && rng.uniform() < extra_edge_prob) g.add_edge(i, j);
    return g;
}

/// Unique scratch file path under the system temp directory.
class TempDir {
public:
    TempDir() {
        base_ = std::filesystem::temp_directory_path() /
                ("minfilter_test_" + std::to_string(minfilter::mix_seed(
                                         static_cast<std::uint64_t>(::getpid()), counter_++)));
        std::filesystem::create_directories(base_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(base_, ec);
    }
    std::string path(const std::string& name) const { return (base_ / name).string(); }

private:
    static inline std::uint64_t counter_ = 0;
    std::filesystem::path base_;
};

inline std::string write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace testgen
