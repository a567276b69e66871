#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "minfilter/errors.hpp"
#include "minfilter/matrix.hpp"

namespace minfilter {

/// Laplacian-type matrix T of a nonnegative weight matrix S:
/// off-diagonal t_ij = s'_ij, diagonal t_ii = -sum_{k != i} s'_ik, where
/// S' = (S + S^T)/2 with the diagonal of S ignored. Rows and columns sum
/// to zero; T is negative semidefinite.
struct Laplacian {
    Matrix t;
    bool source_symmetrized = false; // input had to be symmetrized
};

inline Laplacian laplacian(const Matrix& s) {
    if (!s.square()) throw std::invalid_argument("laplacian: matrix must be square");
    const std::size_t n = s.rows();
    Laplacian lap;
    lap.source_symmetrized = s.max_asymmetry() > 0.0;
    lap.t = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(s(i, j) >= 0.0) || !(s(j, i) >= 0.0))
                throw DataError("laplacian: negative weight");
            const double v = 0.5 * (s(i, j) + s(j, i));
            lap.t(i, j) = v;
            lap.t(j, i) = v;
        }
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) sum += lap.t(i, k);
        lap.t(i, i) = -sum;
    }
    return lap;
}

struct EigenDecomposition {
    std::vector<double> eigenvalues; // descending
    Matrix eigenvectors;             // orthonormal columns, same order
};

namespace detail {

inline double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace detail

/// Dense symmetric eigensolver: cyclic Jacobi rotations until the
/// off-diagonal Frobenius norm falls below 1e-12 * |T|_F (at most 100
/// sweeps). Returns the `count` algebraically largest eigenvalues with
/// orthonormal eigenvectors; each vector's sign is fixed so its entry of
/// largest magnitude is positive.
inline EigenDecomposition eigen_symmetric(const Matrix& t, std::size_t count) {
    if (!t.square()) throw std::invalid_argument("eigen_symmetric: matrix must be square");
    const std::size_t n = t.rows();
    if (count < 1 || count > n) throw std::invalid_argument("eigen_symmetric: bad count");
    const double scale = t.frobenius_norm();
    if (t.max_asymmetry() > 1e-12 * (scale + 1.0))
        throw std::invalid_argument("eigen_symmetric: matrix is not symmetric");

    Matrix a = t;
    Matrix vt = Matrix::identity(n); // row r = r-th eigenvector (transposed storage)
    const double threshold = 1e-12 * scale;
    bool converged = false;

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::offdiag_frobenius(a) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Late sweeps: an entry that can no longer move the diagonal
                // is flushed to zero instead of rotated.
                if (sweep > 4) {
                    const double g = 100.0 * std::abs(apq);
                    if (std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
                        a(p, q) = 0.0;
                        a(q, p) = 0.0;
                        continue;
                    }
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double tan =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tan * tan + 1.0);
                const double s = tan * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(p, k);
                    const double akq = a(q, k);
                    const double np = c * akp - s * akq;
                    const double nq = s * akp + c * akq;
                    a(p, k) = np;
                    a(k, p) = np;
                    a(q, k) = nq;
                    a(k, q) = nq;
                }
                a(p, p) = app - tan * apq;
                a(q, q) = aqq + tan * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vt(p, k);
                    const double vkq = vt(q, k);
                    vt(p, k) = c * vkp - s * vkq;
                    vt(q, k) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged && detail::offdiag_frobenius(a) > threshold)
        throw NumericalError("Jacobi eigensolver did not converge in 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out;
    out.eigenvalues.resize(count);
    out.eigenvectors = Matrix(n, count);
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t src = order[c];
        out.eigenvalues[c] = a(src, src);
        std::size_t arg_max = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (std::abs(vt(src, k)) > std::abs(vt(src, arg_max))) arg_max = k;
        const double flip = vt(src, arg_max) < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, c) = flip * vt(src, k);
    }
    return out;
}

/// Spectral embedding: rows are Phi(x_i) built from the first `dims`
/// nontrivial Laplacian eigenvectors.
struct Embedding {
    Matrix coords;                   // n x dims
    std::vector<double> eigenvalues; // the dims nontrivial ones, descending
    double trivial_eigenvalue = 0.0;
    double trivial_cov = 0.0; // coefficient of variation of the trivial eigenvector
};

/// Threshold below which an eigenvalue of T counts as zero (a connected
/// component).
inline constexpr double kZeroEigenvalueTol = 1e-10;

inline Embedding embed(const Matrix& s, std::size_t dims) {
    if (dims != 2 && dims != 3) throw std::invalid_argument("embed: dims must be 2 or 3");
    const Laplacian lap = laplacian(s);
    const std::size_t n = lap.t.rows();
    if (dims + 1 > n) throw std::invalid_argument("embed: need more points than dimensions");

    const EigenDecomposition full = eigen_symmetric(lap.t, n);
    std::size_t near_zero = 0;
    for (double v : full.eigenvalues)
        if (v >= -kZeroEigenvalueTol) ++near_zero;
    if (full.eigenvalues[1] >= -kZeroEigenvalueTol)
        throw DataError("graph is disconnected: " + std::to_string(near_zero) +
                        " near-zero eigenvalues");

    Embedding emb;
    emb.trivial_eigenvalue = full.eigenvalues[0];
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += full.eigenvectors(i, 0);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = full.eigenvectors(i, 0) - mean;
        var += dev * dev;
    }
    emb.trivial_cov = mean == 0.0 ? std::numeric_limits<double>::infinity()
                                  : std::sqrt(var / static_cast<double>(n)) / std::abs(mean);

    emb.coords = Matrix(n, dims);
    emb.eigenvalues.resize(dims);
    for (std::size_t c = 0; c < dims; ++c) {
        emb.eigenvalues[c] = full.eigenvalues[c + 1];
        for (std::size_t i = 0; i < n; ++i) emb.coords(i, c) = full.eigenvectors(i, c + 1);
    }
    return emb;
}

/// Best half-space over a fixed search family: directions on a uniform
/// angular grid (720 in 2D, 720 azimuth x 360 polar in 3D), threshold chosen
/// per direction by a sweep over sorted projections, both orientations
/// considered. Deterministic, so reported error rates are reproducible.
struct HalfspaceResult {
    double error_rate = 0.0;
    std::array<double, 3> normal{0.0, 0.0, 0.0};
    double threshold = 0.0;
};

namespace detail {

/// Minimum misclassification count for direction d over all thresholds and
/// both orientations. `proj` is scratch storage.
inline void halfspace_scan(const Matrix& coords, const std::vector<int>& is_positive,
                           const std::array<double, 3>& d, std::vector<double>& proj,
                           std::vector<std::size_t>& idx, std::size_t& best_err,
                           double& best_threshold) {
    const std::size_t n = coords.rows();
    const std::size_t dims = coords.cols();
    for (std::size_t i = 0; i < n; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k < dims; ++k) v += d[k] * coords(i, k);
        proj[i] = v;
    }
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });

    std::size_t positives = 0;
    for (int v : is_positive) positives += static_cast<std::size_t>(v);

    // Threshold below everything: the whole cloud is on the positive side.
    std::size_t err = n - positives; // negatives misclassified
    best_err = std::min(err, n - err);
    best_threshold = proj[idx[0]] - 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        // Move point idx[k] to the negative side.
        if (is_positive[idx[k]])
            ++err;
        else
            --err;
        const bool boundary = (k + 1 == n) || (proj[idx[k + 1]] > proj[idx[k]]);
        if (!boundary) continue;
        const std::size_t candidate = std::min(err, n - err);
        if (candidate < best_err) {
            best_err = candidate;
            best_threshold =
                (k + 1 == n) ? proj[idx[k]] + 1.0 : 0.5 * (proj[idx[k]] + proj[idx[k + 1]]);
        }
    }
}

} // namespace detail

inline HalfspaceResult halfspace_error(const Embedding& embedding, const std::vector<int>& labels) {
    const std::size_t n = embedding.coords.rows();
    const std::size_t dims = embedding.coords.cols();
    if (labels.size() != n) throw std::invalid_argument("halfspace_error: label count mismatch");
    if (dims < 2 || dims > 3) throw std::invalid_argument("halfspace_error: dims must be 2 or 3");

    std::vector<int> distinct;
    for (int l : labels)
        if (std::find(distinct.begin(), distinct.end(), l) == distinct.end()) distinct.push_back(l);
    if (distinct.size() != 2)
        throw DataError("halfspace_error: need exactly 2 classes, got " +
                        std::to_string(distinct.size()));
    std::vector<int> is_positive(n);
    for (std::size_t i = 0; i < n; ++i) is_positive[i] = labels[i] == distinct[1] ? 1 : 0;

    constexpr int kAzimuthSteps = 720;
    constexpr int kPolarSteps = 360;
    constexpr double kPi = 3.14159265358979323846;

    std::vector<double> proj(n);
    std::vector<std::size_t> idx(n);
    HalfspaceResult best;
    std::size_t best_err = n + 1;

    auto consider = [&](const std::array<double, 3>& d) {
        std::size_t err;
        double threshold;
        detail::halfspace_scan(embedding.coords, is_positive, d, proj, idx, err, threshold);
        if (err < best_err) {
            best_err = err;
            best.normal = d;
            best.threshold = threshold;
        }
    };

    if (dims == 2) {
        for (int k = 0; k < kAzimuthSteps; ++k) {
            const double phi = 2.0 * kPi * k / kAzimuthSteps;
            consider({std::cos(phi), std::sin(phi), 0.0});
        }
    } else {
        for (int j = 0; j < kPolarSteps; ++j) {
            const double theta = kPi * j / kPolarSteps;
            for (int k = 0; k < kAzimuthSteps; ++k) {
                const double phi = 2.0 * kPi * k / kAzimuthSteps;
                consider({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                          std::cos(theta)});
            }
        }
    }
    best.error_rate = static_cast<double>(best_err) / static_cast<double>(n);
    return best;
}

} // namespace minfilter
