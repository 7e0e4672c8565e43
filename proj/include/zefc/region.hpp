#pragma once

#include "zefc/coloring.hpp"
#include "zefc/entropy.hpp"
#include "zefc/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace zefc {

// Bits per source symbol on the A->C, B->C and broadcast links.
struct RateTriple {
    double r_a = 0.0;
    double r_b = 0.0;
    double r_c = 0.0;

    bool operator==(const RateTriple&) const = default;
};

// a >= b component-wise, up to tol.
bool dominates(const RateTriple& a, const RateTriple& b, double tol = 1e-9);

struct BoundOptions {
    GraphEntropyOptions graph_entropy;
};

// (H(X), H(Y), H_{G_XY^f}(X,Y))
RateTriple inner_bound_1(const ProblemInstance& inst, const BoundOptions& options = {});
// (H_{G_X|Y^f}(X), H_{G_Y|X^f}(Y), their sum)
RateTriple inner_bound_2(const ProblemInstance& inst, const BoundOptions& options = {});
// (H_{G_X|Y^f}(X), H_{G_Y|X^f}(Y), H_{G_XY^f}(X,Y))
RateTriple outer_bound(const ProblemInstance& inst, const BoundOptions& options = {});

struct FrontierLevel {
    int n = 1;
    std::vector<RateTriple> points;
};

struct RateRegionReport {
    RateTriple corner_i1;
    RateTriple corner_i2;
    RateTriple corner_o;
    bool tight = false;
    // False when a graph entropy solve hit max_iter; corners are then upper bounds.
    bool converged = true;
    std::vector<FrontierLevel> frontier;
};

RateRegionReport compute_bounds(const ProblemInstance& inst, const BoundOptions& options = {});

enum class Membership { inside_inner, between_bounds, outside_outer };

std::string to_string(Membership m);

// inside_inner when r dominates lambda*corner_i1 + (1-lambda)*corner_i2 for
// some lambda in [0,1]; outside_outer when r is below corner_o on some axis.
Membership membership(const RateRegionReport& report, const RateTriple& r, double tol = 1e-9);
Membership membership(const ProblemInstance& inst, const RateTriple& r, const BoundOptions& options = {});

struct FrontierOptions {
    std::size_t max_alphabet = 5;
    int max_n = 2;
    // Canonical colorings enumerated per confusability power.
    std::size_t max_colorings = 50'000;
    // (c_A, c_B) combinations examined.
    std::size_t max_pairs = 5'000'000;
    std::size_t block_budget = default_block_budget;
};

// Pareto-minimal (H(c_A), H(c_B), H(c_C)) / n over all color covers of
// (G_XY^f)^{OR n}, sorted lexicographically.
std::vector<RateTriple> chromatic_region_frontier(const ProblemInstance& inst, int n, const FrontierOptions& options = {});

// Removes duplicates and dominated points; result sorted lexicographically.
std::vector<RateTriple> pareto_minimal(std::vector<RateTriple> points, double tol = 1e-12);

} // namespace zefc
