#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "minfilter/matrix.hpp"

namespace minfilter {

/// max/min distance from the centroid; 1 for a perfectly circular embedding.
inline double radius_ratio(const Matrix& coords) {
    const std::size_t n = coords.rows();
    if (n == 0 || coords.cols() < 2) throw std::invalid_argument("radius_ratio: need n x 2 coords");
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cx += coords(i, 0);
        cy += coords(i, 1);
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::hypot(coords(i, 0) - cx, coords(i, 1) - cy);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return lo == 0.0 ? std::numeric_limits<double>::infinity() : hi / lo;
}

/// Fraction of consecutive original-index pairs (j, j+1 mod n) that remain
/// adjacent in the cyclic order of embedded points about their centroid.
/// Invariant under rotation and reflection of the embedding; 1 means the
/// circle's topology survived intact.
inline double cyclic_order_preservation(const Matrix& coords) {
    const std::size_t n = coords.rows();
    if (n < 3 || coords.cols() < 2)
        throw std::invalid_argument("cyclic_order_preservation: need at least 3 x 2 coords");
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cx += coords(i, 0);
        cy += coords(i, 1);
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);

    std::vector<double> angle(n);
    for (std::size_t i = 0; i < n; ++i)
        angle[i] = std::atan2(coords(i, 1) - cy, coords(i, 0) - cx);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });

    std::vector<std::size_t> position(n);
    for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

    std::size_t preserved = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t next = (j + 1) % n;
        const std::size_t gap = (position[next] + n - position[j]) % n;
        if (gap == 1 || gap == n - 1) ++preserved;
    }
    return static_cast<double>(preserved) / static_cast<double>(n);
}

} // namespace minfilter
