#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "minfilter/csv.hpp"
#include "minfilter/errors.hpp"
#include "minfilter/matrix.hpp"

namespace minfilter {

/// A point cloud in R^d: one point per row, with optional integer class
/// labels (dense ids 0..m-1 in first-appearance order).
struct DataCloud {
    Matrix points; // n x d
    std::optional<std::vector<int>> labels;

    std::size_t size() const { return points.rows(); }
    std::size_t dimension() const { return points.cols(); }
};

inline void validate(const DataCloud& cloud) {
    if (cloud.size() < 2) throw DataError("fewer than 2 points");
    if (cloud.dimension() < 1) throw DataError("points have no coordinates");
    if (!cloud.points.all_finite()) throw DataError("non-finite coordinate");
    if (cloud.labels && cloud.labels->size() != cloud.size())
        throw DataError("label count does not match point count");
}

/// Load a point cloud from a comma-separated file. When `label_column` is
/// given that column is mapped to dense integer ids; every other column must
/// be numeric. Missing values are a hard error.
inline DataCloud load_csv(const std::string& path,
                          std::optional<std::size_t> label_column = std::nullopt,
                          bool has_header = false) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::unordered_map<std::string, int> label_ids;
    std::string line;
    std::size_t line_no = 0;
    std::size_t field_count = 0;
    bool skipped_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (has_header && !skipped_header) {
            skipped_header = true;
            continue;
        }
        auto fields = split_csv_line(line);
        if (field_count == 0) {
            field_count = fields.size();
            if (label_column && *label_column >= field_count)
                throw DataError("label column " + std::to_string(*label_column) +
                                " out of range for " + std::to_string(field_count) + " columns");
            if (field_count - (label_column ? 1 : 0) < 1)
                throw DataError("no feature columns");
        } else if (fields.size() != field_count) {
            throw DataError("ragged row at line " + std::to_string(line_no) + ": expected " +
                            std::to_string(field_count) + " fields, got " +
                            std::to_string(fields.size()));
        }

        std::vector<double> row;
        row.reserve(field_count);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (label_column && c == *label_column) {
                std::string key(fields[c]);
                if (key.empty()) throw DataError("empty label at line " + std::to_string(line_no));
                auto [it, inserted] = label_ids.try_emplace(key, static_cast<int>(label_ids.size()));
                labels.push_back(it->second);
                continue;
            }
            if (fields[c].empty())
                throw DataError("missing value at line " + std::to_string(line_no));
            double v;
            try {
                v = parse_double_field(fields[c]);
            } catch (const DataError& e) {
                throw DataError(std::string(e.what()) + " at line " + std::to_string(line_no));
            }
            if (!std::isfinite(v))
                throw DataError("non-finite value at line " + std::to_string(line_no));
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (in.bad()) throw DataError("I/O error reading '" + path + "'");
    if (rows.size() < 2) throw DataError("fewer than 2 points in '" + path + "'");

    DataCloud cloud;
    cloud.points = Matrix(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) cloud.points(i, j) = rows[i][j];
    if (label_column) cloud.labels = std::move(labels);
    validate(cloud);
    return cloud;
}

/// Divide every coordinate by the sample (n-1) standard deviation of that
/// coordinate. Zero-variance columns pass through unscaled. Idempotent.
inline DataCloud standardize(const DataCloud& cloud) {
    validate(cloud);
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dimension();
    DataCloud out = cloud;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += cloud.points(i, j);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dev = cloud.points(i, j) - mean;
            ss += dev * dev;
        }
        const double stdev = std::sqrt(ss / static_cast<double>(n - 1));
        if (stdev == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) out.points(i, j) = cloud.points(i, j) / stdev;
    }
    return out;
}

} // namespace minfilter
