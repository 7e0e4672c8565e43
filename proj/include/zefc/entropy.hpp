#pragma once

#include "zefc/coloring.hpp"
#include "zefc/graphs.hpp"
#include "zefc/model.hpp"
#include "zefc/rational.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace zefc {

// Shannon entropy in bits, 0 log 0 = 0.
double entropy(std::span<const double> dist);
double entropy(std::span<const Rational> dist);

// A test channel p(w|x) onto maximal independent sets.
struct ConditionalDesign {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::vector<double>> weights;  // weights[x][s] = p(sets[s] | x)
};

struct GraphEntropyOptions {
    double tol = 1e-10;          // relative objective change
    int max_iter = 10'000;
    std::size_t cap_vertices = default_mis_cap;
    std::uint64_t seed = 0x5eed;
    // Called once per iteration with (iteration, objective in bits).
    std::function<void(int, double)> trace;
};

struct GraphEntropyResult {
    double bits = 0.0;           // I(W;X) of the returned design, an upper bound
    double lower_bound = 0.0;    // duality certificate, lower bound on the optimum
    ConditionalDesign design;
    bool converged = false;
    int iterations = 0;
};

// Korner graph entropy min I(W;X) over X in W, W independent, by alternating
// minimization over designs supported on maximal independent sets.
GraphEntropyResult graph_entropy(const ProbabilisticGraph& pg, const GraphEntropyOptions& options = {});

// I(W;X) of a design under the vertex distribution.
double mutual_information(std::span<const double> px, const ConditionalDesign& design);

// Optimal value of min sum_s t_s s.t. sum_{s ni v} t_s >= 1, t >= 0 over the
// maximal independent sets, solved exactly over the rationals.
Rational fractional_chromatic_lp(const Graph& g, std::size_t cap = default_mis_cap);

// H(f^n | M_A, M_B) for message maps on X^n and Y^n under the product pmf.
double conditional_entropy_of_f(const ProblemInstance& inst, int n, std::span<const int> msg_a,
                                std::span<const int> msg_b, std::size_t budget = default_block_budget);

} // namespace zefc
