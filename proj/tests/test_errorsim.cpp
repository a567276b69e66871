#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "minfilter/errorsim.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace minfilter;
using Catch::Approx;

TEST_CASE("theorem_bound arithmetic") {
    CHECK(theorem_bound(100, 4, 0.01) == Approx(8.5).margin(1e-12));
    CHECK(theorem_bound(50, 3, 0.0) == 0.0);
    CHECK(theorem_bound(1000, 4, 0.0005) == Approx(3.0625).margin(1e-12));
}

TEST_CASE("theorem_bound is monotone in each argument") {
    SeededRng rng(53);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rng.below(500);
        const std::size_t c = rng.below(20);
        const double p = 0.9 * rng.uniform();
        const double base = theorem_bound(n, c, p);
        CHECK(theorem_bound(n + 10, c, p) >= base);
        CHECK(theorem_bound(n, c + 2, p) >= base);
        CHECK(theorem_bound(n, c, std::min(0.99, p + 0.05)) >= base);
    }
}

TEST_CASE("surviving errors vanish without perturbation") {
    const Graph g = cycle_graph(12);
    const FilterReport report = min_filter(transition_nonlazy(g), 2, FilterMode::Lenient);
    const ErrorCount count = count_surviving_errors(g, report.q.probabilities);
    CHECK(count.ordered == 0);
    CHECK(count.unordered == 0);
}

TEST_CASE("a chord closing a triangle survives the filter") {
    const Graph original = cycle_graph(5);
    Graph perturbed = original;
    perturbed.add_edge(0, 2);
    const FilterReport report = min_filter(transition_nonlazy(perturbed), 2, FilterMode::Lenient);
    const ErrorCount count = count_surviving_errors(original, report.q.probabilities);
    CHECK(count.ordered == 2);   // both ordered directions
    CHECK(count.unordered == 1);
    CHECK(report.q.probabilities(0, 2) > 0.0);
    CHECK(report.q.probabilities(2, 0) > 0.0);
}

TEST_CASE("a diameter chord with no two-step route is removed") {
    const Graph original = cycle_graph(6);
    Graph perturbed = original;
    perturbed.add_edge(0, 3);
    const FilterReport report = min_filter(transition_nonlazy(perturbed), 2, FilterMode::Lenient);
    const ErrorCount count = count_surviving_errors(original, report.q.probabilities);
    CHECK(count.ordered == 0);
    CHECK(oracle::surviving_errors_bruteforce(original, perturbed).ordered == 0);
}

TEST_CASE("surviving_errors rejects mismatched dimensions") {
    CHECK_THROWS_AS(count_surviving_errors(cycle_graph(5), Matrix(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("pipeline count agrees with the path-enumeration oracle") {
    SeededRng rng(59);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 4 + rng.below(4); // up to 7 vertices
        const Graph original = testgen::random_connected_graph(rng, n, 0.25);
        const Graph perturbed = perturb(original, 0.25, rng.next());
        const FilterReport report =
            min_filter(transition_nonlazy(perturbed), 2, FilterMode::Lenient);
        const ErrorCount count = count_surviving_errors(original, report.q.probabilities);
        const oracle::PairCount expected = oracle::surviving_errors_bruteforce(original, perturbed);
        CHECK(count.ordered == expected.ordered);
        CHECK(count.unordered == expected.unordered);
    }
}

TEST_CASE("monte_carlo with p = 0") {
    const SimReport report = monte_carlo(cycle_graph(20), 0.0, 5, 7);
    CHECK(report.mean_ordered == 0.0);
    CHECK(report.mean_unordered == 0.0);
    CHECK(report.bound == 0.0);
    CHECK(report.c == 4);
    CHECK(report.trials == 5);
    CHECK(report.degenerate_draws == 0);
    // a bare cycle is triangle-free, so the filter annihilates every column
    CHECK(report.mean_annihilated_columns == 20.0);
}

TEST_CASE("monte_carlo determinism") {
    const Graph g = cycle_graph(40);
    const SimReport a = monte_carlo(g, 0.02, 10, 123);
    const SimReport b = monte_carlo(g, 0.02, 10, 123);
    CHECK(a.ordered_counts == b.ordered_counts);
    CHECK(a.unordered_counts == b.unordered_counts);
    CHECK(a.mean_ordered == b.mean_ordered);
    CHECK(a.bound == b.bound);

    const SimReport c = monte_carlo(g, 0.02, 10, 456);
    CHECK_FALSE(a.ordered_counts == c.ordered_counts);
}

TEST_CASE("monte_carlo rejects a base graph with isolated vertices") {
    Graph g(4);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(monte_carlo(g, 0.1, 2, 1), DataError);
}

TEST_CASE("grid base graph annihilates everywhere") {
    const SimReport report = monte_carlo(grid_graph(4), 0.0, 3, 9);
    CHECK(report.mean_annihilated_columns == 16.0);
    CHECK(report.mean_ordered == 0.0);
}

TEST_CASE("circle_points at the quarter angles") {
    const DataCloud cloud = circle_points(4);
    CHECK(cloud.points(0, 0) == Approx(0.0).margin(1e-15));
    CHECK(cloud.points(0, 1) == Approx(1.0).margin(1e-15));
    CHECK(cloud.points(1, 0) == Approx(-1.0).margin(1e-15));
    CHECK(cloud.points(2, 1) == Approx(-1.0).margin(1e-15));
    CHECK(cloud.points(3, 0) == Approx(1.0).margin(1e-15));
}

TEST_CASE("circle_points land on the unit circle") {
    const DataCloud cloud = circle_points(100);
    REQUIRE(cloud.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) {
        const double norm = std::hypot(cloud.points(i, 0), cloud.points(i, 1));
        CHECK(norm == Approx(1.0).margin(1e-15));
    }
    CHECK_THROWS_AS(circle_points(2), std::invalid_argument);
}

TEST_CASE("inject_random_edges basics") {
    const DataCloud cloud = circle_points(10);
    const Matrix w = gaussian_kernel(cloud, 0.02);
    SECTION("count = 0 is a no-op") {
        CHECK(inject_random_edges(w, 0, 5) == w);
    }
    SECTION("exhausting all pairs on 3 points") {
        Matrix small(3, 3);
        for (std::size_t i = 0; i < 3; ++i) small(i, i) = 1.0;
        const Matrix filled = inject_random_edges(small, 3, 5);
        for (double v : filled.data()) CHECK(v == 1.0);
    }
    SECTION("count too large") {
        CHECK_THROWS_AS(inject_random_edges(w, 46, 5), std::invalid_argument);
    }
    SECTION("injected entries are exactly 1, symmetric, and counted") {
        const Matrix out = inject_random_edges(w, 7, 42);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = i + 1; j < 10; ++j) {
                CHECK(out(i, j) == out(j, i));
                if (out(i, j) != w(i, j)) {
                    CHECK(out(i, j) == 1.0);
                    ++changed;
                }
            }
        CHECK(changed == 7); // kernel entries off the diagonal are < 1 here
        CHECK(inject_random_edges(w, 7, 42) == out);
    }
}
