#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "minfilter/errors.hpp"
#include "minfilter/markov.hpp"
#include "minfilter/matrix.hpp"

namespace minfilter {

/// Strict: an annihilated column (all minima zero) aborts construction.
/// Lenient: such columns stay zero and are reported; needed for unweighted
/// graphs, where e.g. bipartiteness annihilates everything.
enum class FilterMode { Strict, Lenient };

/// Entries are considered part of the support when strictly above this.
/// Exact positivity is reliable here: all simulation inputs are modest
/// rationals and kernel products stay far above underflow.
inline constexpr double kSupportThreshold = 0.0;

struct FilterReport {
    TransitionMatrix q;
    std::vector<std::size_t> annihilated_columns;
    std::size_t zeroed_pairs = 0; // (i,j) with P*_ij > 0 but Q_ij = 0
};

namespace detail {

inline FilterReport normalize_filtered(Matrix m, const TransitionMatrix& p_star,
                                       FilterMode mode) {
    const std::size_t n = m.rows();
    FilterReport report;
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += m(i, j);
        if (sum == 0.0) {
            if (mode == FilterMode::Strict)
                throw DataError("filter annihilated column " + std::to_string(j));
            report.annihilated_columns.push_back(j);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) m(i, j) /= sum;
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (p_star.probabilities(i, j) > kSupportThreshold && m(i, j) <= kSupportThreshold)
                ++report.zeroed_pairs;
    report.q = make_transition(std::move(m), true, /*allow_zero_columns=*/true);
    return report;
}

} // namespace detail

/// The min filter: Q column j is proportional to the entrywise minimum of
/// (P*)^m over m = 1..depth. The m = 1 term has a zero diagonal, so Q does
/// too. Rewards states reachable consistently in one AND several steps.
inline FilterReport min_filter(const TransitionMatrix& p_star, unsigned depth,
                               FilterMode mode = FilterMode::Strict) {
    if (!p_star.nonlazy) throw std::invalid_argument("min_filter requires a non-lazy chain");
    if (depth < 2) throw std::invalid_argument("min_filter requires depth >= 2");
    const std::size_t n = p_star.size();
    Matrix m = p_star.probabilities;
    Matrix power = p_star.probabilities;
    for (unsigned step = 2; step <= depth; ++step) {
        power = multiply(power, p_star.probabilities);
        for (std::size_t i = 0; i < n * n; ++i)
            m.data()[i] = std::min(m.data()[i], power.data()[i]);
    }
    return detail::normalize_filtered(std::move(m), p_star, mode);
}

/// Pointwise-product variant: column j proportional to P*_ij * ((P*)^2)_ij.
/// Same support as the depth-2 min filter, same strict/lenient contract.
inline FilterReport product_filter(const TransitionMatrix& p_star,
                                   FilterMode mode = FilterMode::Strict) {
    if (!p_star.nonlazy) throw std::invalid_argument("product_filter requires a non-lazy chain");
    const std::size_t n = p_star.size();
    Matrix squared = multiply(p_star.probabilities, p_star.probabilities);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n * n; ++i)
        m.data()[i] = p_star.probabilities.data()[i] * squared.data()[i];
    return detail::normalize_filtered(std::move(m), p_star, mode);
}

} // namespace minfilter
