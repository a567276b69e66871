#pragma once

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include "minfilter/csv.hpp"
#include "minfilter/errors.hpp"
#include "minfilter/matrix.hpp"

namespace minfilter {

/// Scatter plot of the first two coordinate columns: fixed 800 x 800
/// viewport, radius-3 circles, per-axis autoscaling to the data bounding box
/// with a 5% margin, one fill color per label. Byte-stable given identical
/// inputs.
inline std::string scatter_svg(const Matrix& coords, const std::vector<int>* labels) {
    static const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                                     "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2df8a"};
    constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
    constexpr double kSize = 800.0;
    constexpr double kMargin = 0.05 * kSize;
    constexpr double kRadius = 3.0;

    const std::size_t n = coords.rows();
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = coords(i, 0);
        const double y = coords(i, 1);
        if (i == 0 || x < min_x) min_x = x;
        if (i == 0 || x > max_x) max_x = x;
        if (i == 0 || y < min_y) min_y = y;
        if (i == 0 || y > max_y) max_y = y;
    }
    const double span_x = max_x - min_x;
    const double span_y = max_y - min_y;
    const double usable = kSize - 2.0 * kMargin;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    svg += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double fx = span_x == 0.0 ? 0.5 : (coords(i, 0) - min_x) / span_x;
        const double fy = span_y == 0.0 ? 0.5 : (coords(i, 1) - min_y) / span_y;
        const double cx = kMargin + fx * usable;
        const double cy = kSize - (kMargin + fy * usable); // SVG y grows downward
        const char* fill = "#666666";
        if (labels) {
            const int label = (*labels)[i];
            fill = kPalette[label >= 0 ? static_cast<std::size_t>(label) % kPaletteSize : 7];
        }
        svg += "<circle cx=\"" + format_double(cx) + "\" cy=\"" + format_double(cy) +
               "\" r=\"" + format_double(kRadius) + "\" fill=\"" + fill + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline void write_scatter_svg(const std::string& path, const Matrix& coords,
                              const std::vector<int>* labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << scatter_svg(coords, labels);
    if (!out) throw DataError("I/O error writing '" + path + "'");
}

} // namespace minfilter
