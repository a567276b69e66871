#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "minfilter/data_cloud.hpp"
#include "minfilter/errors.hpp"
#include "minfilter/matrix.hpp"

namespace minfilter {

/// Tolerance on column sums of a transition matrix.
inline constexpr double kColumnSumTol = 1e-12;

/// Column-stochastic matrix: column j holds the distribution of the next
/// state of a walk currently at x_j. `nonlazy` records a zero diagonal.
struct TransitionMatrix {
    Matrix probabilities;
    bool nonlazy = false;

    std::size_t size() const { return probabilities.rows(); }
};

/// Validate and wrap a column-stochastic matrix. Columns that are entirely
/// zero are rejected unless `allow_zero_columns` (used by the lenient filter
/// mode, where annihilated columns stay zero).
inline TransitionMatrix make_transition(Matrix m, bool nonlazy, bool allow_zero_columns = false) {
    if (!m.square()) throw std::invalid_argument("transition matrix must be square");
    const std::size_t n = m.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = m(i, j);
            if (!(v >= 0.0)) throw DataError("negative transition probability");
            sum += v;
        }
        if (sum == 0.0 && allow_zero_columns) continue;
        if (std::abs(sum - 1.0) > kColumnSumTol)
            throw DataError("column " + std::to_string(j) + " sums to " + std::to_string(sum));
    }
    if (nonlazy)
        for (std::size_t i = 0; i < n; ++i)
            if (m(i, i) != 0.0) throw DataError("nonlazy matrix has nonzero diagonal");
    return TransitionMatrix{std::move(m), nonlazy};
}

/// Gaussian affinity W_ij = exp(-|x_i - x_j|^2 / epsilon). Each distance is
/// evaluated once per unordered pair and mirrored, so W is exactly symmetric
/// with unit diagonal.
inline Matrix gaussian_kernel(const DataCloud& cloud, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    validate(cloud);
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dimension();
    Matrix w(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        w(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = cloud.points(i, k) - cloud.points(j, k);
                dist2 += diff * diff;
            }
            const double v = std::exp(-dist2 / epsilon);
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return w;
}

/// P_ij = W_ij / sum_k W_kj. A zero-sum column (isolated point) is an error.
inline TransitionMatrix column_normalize(const Matrix& w) {
    if (!w.square()) throw std::invalid_argument("weight matrix must be square");
    const std::size_t n = w.rows();
    Matrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(w(i, j) >= 0.0)) throw DataError("negative kernel weight");
            sum += w(i, j);
        }
        if (sum == 0.0) throw DataError("column " + std::to_string(j) + " has zero weight sum");
        for (std::size_t i = 0; i < n; ++i) p(i, j) = w(i, j) / sum;
    }
    return make_transition(std::move(p), false);
}

/// P*: zero the diagonal and renormalize each column, so the walk can never
/// remain in place. A column whose only mass sat on the diagonal has no
/// non-lazy walk and is an error.
inline TransitionMatrix delazify(const TransitionMatrix& p) {
    const std::size_t n = p.size();
    Matrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) off += p.probabilities(i, j);
        if (off == 0.0)
            throw DataError("column " + std::to_string(j) + " has no off-diagonal mass");
        for (std::size_t i = 0; i < n; ++i)
            out(i, j) = (i == j) ? 0.0 : p.probabilities(i, j) / off;
    }
    return make_transition(std::move(out), true);
}

/// P^m by repeated multiplication; m is small (<= 5) in every experiment.
inline Matrix matrix_power(const TransitionMatrix& p, unsigned m) {
    if (m < 1) throw std::invalid_argument("matrix power requires m >= 1");
    Matrix result = p.probabilities;
    for (unsigned step = 1; step < m; ++step) result = multiply(result, p.probabilities);
    return result;
}

} // namespace minfilter
