#pragma once

#include "zefc/graphs.hpp"
#include "zefc/model.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zefc {

// Vertex -> color with ids 0..k-1, each id used.
struct Coloring {
    std::vector<int> colors;

    int num_colors() const;
    bool operator==(const Coloring&) const = default;
};

// Renumbers colors by first appearance in vertex order.
Coloring canonical(std::span<const int> colors);

// Throws ValidationError when the map is not total on the vertices.
bool is_coloring(const Graph& g, std::span<const int> colors);
bool is_coloring(const ProductGraph& g, std::span<const int> colors);

inline constexpr std::size_t default_mis_cap = 24;

// All inclusion-maximal independent sets; each set ascending, the list sorted
// lexicographically. CapExceeded when the graph has more than cap vertices.
std::vector<std::vector<std::size_t>> maximal_independent_sets(const Graph& g, std::size_t cap = default_mis_cap);

struct ChromaticOptions {
    std::size_t cap_vertices = 16;
    // Return a greedy upper bound instead of throwing when above the cap.
    bool allow_heuristic = false;
};

struct ChromaticEntropyResult {
    double bits = 0.0;
    Coloring witness;
    bool exact = true;
};

// Minimum of H(c(X)) over all colorings c, found by branch and bound over
// canonical assignments. Ties resolve to the lexicographically smallest
// canonical witness.
ChromaticEntropyResult chromatic_entropy(const ProbabilisticGraph& pg, const ChromaticOptions& options = {});

// The chromatic entropy when it lies below ceiling by more than the search
// tolerance, nullopt otherwise. Always exact, but the witness is any optimal
// coloring rather than the lexicographically first; caps as for
// chromatic_entropy.
std::optional<ChromaticEntropyResult> chromatic_entropy_below(const ProbabilisticGraph& pg, double ceiling,
                                                             const ChromaticOptions& options = {});

// Value-only variant on a graph given by neighbor bitmasks (bit w of
// adjacency[v] set iff v ~ w), at most 64 vertices.
std::optional<double> min_coloring_entropy_below(std::span<const std::uint64_t> adjacency, std::span<const double> mass,
                                                 double ceiling);

// (1/n) H_chi(G^{OR n}, X^n); the witness colors product vertices.
ChromaticEntropyResult chromatic_entropy_product(const ProbabilisticGraph& pg, int n,
                                                 const ChromaticOptions& options = {});

// Colors of the relay on support blocks are derived through theta.
using MergeMap = std::map<std::pair<int, int>, int>;

// (c_A, c_B, c_C) on X^n, Y^n and the support blocks S_XY^n (support_blocks
// order), plus the merge map theta with theta(c_A, c_B) = c_C.
struct ColorCover {
    int n = 1;
    std::vector<int> c_a;
    std::vector<int> c_b;
    std::vector<int> c_c;
    MergeMap theta;
};

// Relay colors computed by applying theta to every support block.
// ValidationError when theta misses a reachable color pair.
ColorCover cover_from_theta(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b,
                            MergeMap theta, std::size_t budget = default_block_budget);

// theta read off c_C at the first block of each color pair; an inconsistent
// c_C surfaces later as a refinement violation.
ColorCover cover_from_relay_coloring(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b,
                                     std::vector<int> c_c, std::size_t budget = default_block_budget);

struct CoverCheck {
    bool ok = true;
    std::string reason;
    // Offending support blocks (indices into support_blocks); equal indices
    // mean a single block broke the refinement condition.
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

CoverCheck verify_color_cover(const ProblemInstance& inst, int n, const ColorCover& cover,
                              std::size_t budget = default_block_budget);

// "vertex<TAB>color" lines.
void write_coloring(std::ostream& out, const Graph& g, std::span<const int> colors);
// Coloring sections for c_A, c_B, c_C followed by the theta table.
void write_cover(std::ostream& out, const ProblemInstance& inst, const ColorCover& cover);

} // namespace zefc
