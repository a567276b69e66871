#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "minfilter/data_cloud.hpp"
#include "minfilter/errors.hpp"
#include "minfilter/filter.hpp"
#include "minfilter/graph.hpp"
#include "minfilter/matrix.hpp"
#include "minfilter/rng.hpp"

namespace minfilter {

/// Points (cos 2*pi*j/n, sin 2*pi*j/n) for j = 1..n.
inline DataCloud circle_points(std::size_t n) {
    if (n < 3) throw std::invalid_argument("circle_points: need n >= 3");
    constexpr double kTwoPi = 6.28318530717958647692;
    DataCloud cloud;
    cloud.points = Matrix(n, 2);
    for (std::size_t j = 1; j <= n; ++j) {
        const double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        cloud.points(j - 1, 0) = std::cos(angle);
        cloud.points(j - 1, 1) = std::sin(angle);
    }
    return cloud;
}

/// Set `count` distinct random off-diagonal pairs of W to weight 1 (both
/// orientations). Pairs are drawn without replacement; a seed pins them.
inline Matrix inject_random_edges(Matrix w, std::size_t count, std::uint64_t seed) {
    if (!w.square()) throw std::invalid_argument("inject_random_edges: matrix must be square");
    const std::size_t n = w.rows();
    const std::size_t total_pairs = n * (n - 1) / 2;
    if (count > total_pairs)
        throw std::invalid_argument("inject_random_edges: count exceeds pair count");

    // Floyd's sampling: `count` distinct indices in [0, total_pairs).
    SeededRng rng(seed);
    std::vector<std::uint8_t> chosen(total_pairs, 0);
    std::vector<std::size_t> picks;
    picks.reserve(count);
    for (std::size_t j = total_pairs - count; j < total_pairs; ++j) {
        const std::size_t t = static_cast<std::size_t>(rng.below(j + 1));
        if (chosen[t]) {
            chosen[j] = 1;
            picks.push_back(j);
        } else {
            chosen[t] = 1;
            picks.push_back(t);
        }
    }
    for (std::size_t pick : picks) {
        // Decode pair index: row i owns n-1-i consecutive indices.
        std::size_t i = 0;
        std::size_t remaining = pick;
        while (remaining >= n - 1 - i) {
            remaining -= n - 1 - i;
            ++i;
        }
        const std::size_t j = i + 1 + remaining;
        w(i, j) = 1.0;
        w(j, i) = 1.0;
    }
    return w;
}

/// Theorem bound on the expected number of surviving erroneous pairs:
/// c*n*p + c*n^2*p^2 + n^3*p^3 / 2.
inline double theorem_bound(std::size_t n, std::size_t c, double p) {
    if (n < 1) throw std::invalid_argument("theorem_bound: n must be >= 1");
    if (!(p >= 0.0) || p >= 1.0) throw std::invalid_argument("theorem_bound: p must be in [0, 1)");
    const double nd = static_cast<double>(n);
    const double cd = static_cast<double>(c);
    return cd * nd * p + cd * nd * nd * p * p + 0.5 * nd * nd * nd * p * p * p;
}

/// Surviving errors: pairs not adjacent in the original graph whose filtered
/// weight stayed positive. Ordered counts every (i,j) and (j,i) separately.
struct ErrorCount {
    std::size_t ordered = 0;
    std::size_t unordered = 0;
};

inline ErrorCount count_surviving_errors(const Graph& original, const Matrix& q,
                                         double threshold = kSupportThreshold) {
    if (q.rows() != original.size() || !q.square())
        throw std::invalid_argument("count_surviving_errors: dimension mismatch");
    ErrorCount count;
    const std::size_t n = original.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (original.adjacent(i, j)) continue;
            const bool forward = q(i, j) > threshold;
            const bool backward = q(j, i) > threshold;
            count.ordered += static_cast<std::size_t>(forward) + static_cast<std::size_t>(backward);
            count.unordered += static_cast<std::size_t>(forward || backward);
        }
    return count;
}

/// Ordered surviving-error count N.
inline std::size_t surviving_errors(const Graph& original, const Matrix& q,
                                    double threshold = kSupportThreshold) {
    return count_surviving_errors(original, q, threshold).ordered;
}

struct SimReport {
    std::size_t trials = 0;
    std::vector<std::size_t> ordered_counts;   // per trial
    std::vector<std::size_t> unordered_counts; // per trial
    double mean_ordered = 0.0;
    double mean_unordered = 0.0;
    double bound = 0.0;  // theorem_bound(n, c, p)
    std::size_t c = 0;   // neighborhood bound of the base graph
    double p = 0.0;
    std::uint64_t seed = 0;
    std::size_t degenerate_draws = 0;
    double mean_annihilated_columns = 0.0; // diagnostic, e.g. bipartite bases
};

/// Per-trial standard error of a mean.
inline double standard_error(const std::vector<std::size_t>& values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (std::size_t v : values) mean += static_cast<double>(v);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t v : values) {
        const double dev = static_cast<double>(v) - mean;
        ss += dev * dev;
    }
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

/// Monte Carlo over the random-perturbation model: perturb the base graph,
/// run the non-lazy walk through the depth-2 min filter (lenient mode), and
/// count surviving erroneous pairs. Trial t uses the RNG stream (seed, t),
/// so reports are reproducible and trials independent.
inline SimReport monte_carlo(const Graph& g, double p, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    if (g.min_degree() == 0) throw DataError("monte_carlo: base graph has an isolated vertex");

    SimReport report;
    report.trials = trials;
    report.p = p;
    report.seed = seed;
    report.c = neighborhood_bound(g);
    report.bound = theorem_bound(g.size(), report.c, p);

    std::size_t annihilated_total = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Graph perturbed = perturb(g, p, mix_seed(seed, t));
        const TransitionMatrix walk = transition_nonlazy(perturbed);
        const FilterReport filtered = min_filter(walk, 2, FilterMode::Lenient);
        const ErrorCount count = count_surviving_errors(g, filtered.q.probabilities);
        report.ordered_counts.push_back(count.ordered);
        report.unordered_counts.push_back(count.unordered);
        annihilated_total += filtered.annihilated_columns.size();
    }
    for (std::size_t v : report.ordered_counts) report.mean_ordered += static_cast<double>(v);
    report.mean_ordered /= static_cast<double>(trials);
    for (std::size_t v : report.unordered_counts) report.mean_unordered += static_cast<double>(v);
    report.mean_unordered /= static_cast<double>(trials);
    report.mean_annihilated_columns =
        static_cast<double>(annihilated_total) / static_cast<double>(trials);
    return report;
}

} // namespace minfilter
