#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minfilter/circle_metrics.hpp"
#include "minfilter/csv.hpp"
#include "minfilter/data_cloud.hpp"
#include "minfilter/errors.hpp"
#include "minfilter/errorsim.hpp"
#include "minfilter/filter.hpp"
#include "minfilter/graph.hpp"
#include "minfilter/markov.hpp"
#include "minfilter/spectral.hpp"
#include "minfilter/svg.hpp"

namespace minfilter::cli {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

inline void write_embedding_csv(const std::string& path, const Embedding& emb,
                                const std::vector<int>* labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    const std::size_t dims = emb.coords.cols();
    out << "index,phi1,phi2";
    if (dims == 3) out << ",phi3";
    out << ",label\n";
    for (std::size_t i = 0; i < emb.coords.rows(); ++i) {
        out << i;
        for (std::size_t c = 0; c < dims; ++c) out << ',' << format_double(emb.coords(i, c));
        out << ',' << (labels ? (*labels)[i] : -1) << '\n';
    }
    if (!out) throw DataError("I/O error writing '" + path + "'");
}

inline void write_sim_csv(const std::string& path, const SimReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "trial,N_ordered,N_unordered\n";
    for (std::size_t t = 0; t < report.trials; ++t)
        out << t << ',' << report.ordered_counts[t] << ',' << report.unordered_counts[t] << '\n';
    if (!out) throw DataError("I/O error writing '" + path + "'");
}

/// "emb.csv" -> "emb_p.csv" / "emb_q.csv"
inline std::string tag_path(const std::string& path, const std::string& tag) {
    const auto slash = path.find_last_of("/\\");
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "_" + tag;
    return path.substr(0, dot) + "_" + tag + path.substr(dot);
}

inline std::string percent(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * rate);
    return buf;
}

/// The trivial eigenvector should be constant for a connected chain; drift
/// signals numerical trouble. The embedding still proceeds.
inline void warn_trivial_drift(const Embedding& emb, const char* tag, std::ostream& out) {
    if (emb.trivial_cov > 1e-6)
        out << "warning: " << tag << " trivial eigenvector not constant (cov "
            << format_double(emb.trivial_cov) << ")\n";
}

inline Graph parse_graph_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--graph expects cycle:N, grid:M or file:PATH");
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "file") return read_edge_list(arg);
    std::size_t value = 0;
    try {
        value = static_cast<std::size_t>(std::stoull(arg));
    } catch (const std::exception&) {
        throw std::invalid_argument("--graph " + kind + ": bad size '" + arg + "'");
    }
    if (kind == "cycle") return cycle_graph(value);
    if (kind == "grid") return grid_graph(value);
    throw std::invalid_argument("--graph: unknown kind '" + kind + "'");
}

struct EmbedOptions {
    std::string input;
    std::optional<std::size_t> label_column;
    bool has_header = false;
    double epsilon = 0.0;
    std::string filter = "none";
    unsigned filter_k = 2;
    std::size_t dims = 2;
    bool lenient = false;
    std::string out_csv;
    std::string out_svg;
};

inline int cmd_embed(const EmbedOptions& opt, std::ostream& out, std::string& stage) {
    stage = "ingest";
    DataCloud cloud = standardize(load_csv(opt.input, opt.label_column, opt.has_header));

    stage = "kernel";
    const Matrix w = gaussian_kernel(cloud, opt.epsilon);

    stage = "markov";
    const TransitionMatrix p_star = delazify(column_normalize(w));

    stage = "filter";
    Matrix s = p_star.probabilities;
    const FilterMode mode = opt.lenient ? FilterMode::Lenient : FilterMode::Strict;
    if (opt.filter == "min")
        s = min_filter(p_star, opt.filter_k, mode).q.probabilities;
    else if (opt.filter == "product")
        s = product_filter(p_star, mode).q.probabilities;

    stage = "spectral";
    const Embedding emb = embed(s, opt.dims);
    warn_trivial_drift(emb, "embedding", out);

    stage = "output";
    const std::vector<int>* labels = cloud.labels ? &*cloud.labels : nullptr;
    write_embedding_csv(opt.out_csv, emb, labels);
    if (!opt.out_svg.empty()) write_scatter_svg(opt.out_svg, emb.coords, labels);

    if (labels) {
        std::vector<int> distinct;
        for (int l : *labels)
            if (std::find(distinct.begin(), distinct.end(), l) == distinct.end())
                distinct.push_back(l);
        if (distinct.size() == 2) {
            stage = "classify";
            out << "half-space error: " << percent(halfspace_error(emb, *labels).error_rate)
                << "\n";
        }
    }
    return kExitOk;
}

struct CircleOptions {
    std::size_t n = 100;
    std::size_t edges = 0;
    std::uint64_t seed = 0;
    double epsilon = 0.02; // 1/epsilon = 50
    unsigned filter_k = 5;
    bool lenient = false;
    std::string out_csv;
    std::string out_svg;
};

inline int cmd_circle(const CircleOptions& opt, std::ostream& out, std::string& stage) {
    stage = "kernel";
    const DataCloud cloud = circle_points(opt.n);
    Matrix w = gaussian_kernel(cloud, opt.epsilon);
    w = inject_random_edges(std::move(w), opt.edges, opt.seed);

    stage = "markov";
    const TransitionMatrix p_star = delazify(column_normalize(w));

    stage = "filter";
    const FilterMode mode = opt.lenient ? FilterMode::Lenient : FilterMode::Strict;
    const FilterReport filtered = min_filter(p_star, opt.filter_k, mode);

    stage = "spectral";
    const Embedding emb_p = embed(p_star.probabilities, 2);
    const Embedding emb_q = embed(filtered.q.probabilities, 2);
    warn_trivial_drift(emb_p, "P", out);
    warn_trivial_drift(emb_q, "Q", out);

    stage = "output";
    write_embedding_csv(tag_path(opt.out_csv, "p"), emb_p, nullptr);
    write_embedding_csv(tag_path(opt.out_csv, "q"), emb_q, nullptr);
    if (!opt.out_svg.empty()) {
        write_scatter_svg(tag_path(opt.out_svg, "p"), emb_p.coords, nullptr);
        write_scatter_svg(tag_path(opt.out_svg, "q"), emb_q.coords, nullptr);
    }
    out << "P radius ratio: " << format_double(radius_ratio(emb_p.coords)) << "\n";
    out << "P cyclic-order preservation: " << format_double(cyclic_order_preservation(emb_p.coords))
        << "\n";
    out << "Q radius ratio: " << format_double(radius_ratio(emb_q.coords)) << "\n";
    out << "Q cyclic-order preservation: " << format_double(cyclic_order_preservation(emb_q.coords))
        << "\n";
    return kExitOk;
}

struct SimulateOptions {
    std::string graph_spec;
    double p = 0.0;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string out_csv;
};

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::string& stage) {
    stage = "graph";
    const Graph base = parse_graph_spec(opt.graph_spec);

    stage = "simulate";
    const SimReport report = monte_carlo(base, opt.p, opt.trials, opt.seed);

    stage = "output";
    write_sim_csv(opt.out_csv, report);
    const double se = standard_error(report.unordered_counts);
    out << "base graph: " << opt.graph_spec << " (n=" << base.size()
        << ", edges=" << base.edge_count() << ")\n";
    out << "neighborhood bound c: " << report.c << "\n";
    out << "p: " << format_double(report.p) << "  trials: " << report.trials
        << "  seed: " << report.seed << "\n";
    out << "mean N ordered: " << format_double(report.mean_ordered) << "\n";
    out << "mean N unordered: " << format_double(report.mean_unordered)
        << "  (std err " << format_double(se) << ")\n";
    out << "theorem bound: " << format_double(report.bound) << "\n";
    out << "annihilated columns per trial: " << format_double(report.mean_annihilated_columns)
        << "\n";
    const bool pass = report.mean_unordered <= report.bound + 2.0 * se;
    out << (pass ? "PASS" : "FAIL") << ": mean unordered N "
        << (pass ? "<=" : ">") << " bound + 2*stderr\n";
    return kExitOk;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Markov-chain min-filter preconditioning for spectral embedding"};
    app.require_subcommand(1);

    detail::EmbedOptions embed_opt;
    long long embed_label_col = -1;
    std::uint64_t embed_seed = 0;
    auto* embed_cmd = app.add_subcommand("embed", "embed a CSV point cloud");
    embed_cmd->add_option("--input", embed_opt.input, "input CSV path")->required();
    embed_cmd->add_option("--label-col", embed_label_col, "0-based label column index");
    embed_cmd->add_flag("--has-header", embed_opt.has_header, "skip a single header row");
    embed_cmd->add_option("--epsilon", embed_opt.epsilon, "Gaussian kernel scale")
        ->required()
        ->check(CLI::PositiveNumber);
    embed_cmd->add_option("--filter", embed_opt.filter, "chain filter")
        ->check(CLI::IsMember({"none", "min", "product"}))
        ->capture_default_str();
    embed_cmd->add_option("--filter-k", embed_opt.filter_k, "min-filter depth")
        ->check(CLI::Range(2u, 64u))
        ->capture_default_str();
    embed_cmd->add_option("--dims", embed_opt.dims, "embedding dimension")
        ->check(CLI::IsMember({2, 3}))
        ->capture_default_str();
    embed_cmd->add_option("--seed", embed_seed, "accepted for config uniformity");
    embed_cmd->add_flag("--lenient", embed_opt.lenient, "keep annihilated filter columns");
    embed_cmd->add_option("--out-csv", embed_opt.out_csv, "embedding CSV path")->required();
    embed_cmd->add_option("--out-svg", embed_opt.out_svg, "scatter SVG path");

    detail::CircleOptions circle_opt;
    auto* circle_cmd = app.add_subcommand("circle", "circle error-correction experiment");
    circle_cmd->add_option("--n", circle_opt.n, "number of circle points")
        ->check(CLI::Range(std::size_t{3}, std::size_t{100000}))
        ->capture_default_str();
    circle_cmd->add_option("--edges", circle_opt.edges, "random unit-weight edges to inject")
        ->capture_default_str();
    circle_cmd->add_option("--seed", circle_opt.seed, "RNG seed")->capture_default_str();
    circle_cmd->add_option("--epsilon", circle_opt.epsilon, "Gaussian kernel scale")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    circle_cmd->add_option("--filter-k", circle_opt.filter_k, "min-filter depth")
        ->check(CLI::Range(2u, 64u))
        ->capture_default_str();
    circle_cmd->add_flag("--lenient", circle_opt.lenient, "keep annihilated filter columns");
    circle_cmd->add_option("--out-csv", circle_opt.out_csv, "embedding CSV path (tagged _p/_q)")
        ->required();
    circle_cmd->add_option("--out-svg", circle_opt.out_svg, "scatter SVG path (tagged _p/_q)");

    detail::SimulateOptions sim_opt;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo error-correction bound check");
    sim_cmd->add_option("--graph", sim_opt.graph_spec, "cycle:N, grid:M or file:PATH")->required();
    sim_cmd->add_option("--p", sim_opt.p, "edge addition probability")
        ->required()
        ->check(CLI::Range(0.0, 0.999999));
    sim_cmd->add_option("--trials", sim_opt.trials, "Monte Carlo trials")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_opt.seed, "master RNG seed")->capture_default_str();
    sim_cmd->add_option("--out-csv", sim_opt.out_csv, "per-trial CSV path")->required();

    std::vector<std::string> cli_args(args.rbegin(), args.rend()); // CLI11 wants reversed
    try {
        app.parse(cli_args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string stage = "setup";
    try {
        if (embed_cmd->parsed()) {
            if (embed_label_col >= 0)
                embed_opt.label_column = static_cast<std::size_t>(embed_label_col);
            return detail::cmd_embed(embed_opt, out, stage);
        }
        if (circle_cmd->parsed()) return detail::cmd_circle(circle_opt, out, stage);
        return detail::cmd_simulate(sim_opt, out, stage);
    } catch (const DataError& e) {
        err << "error (" << stage << "): " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        err << "usage error (" << stage << "): " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error (" << stage << "): " << e.what() << "\n";
        return kExitNumerical;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace minfilter::cli
