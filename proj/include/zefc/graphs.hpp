#pragma once

#include "zefc/model.hpp"
#include "zefc/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace zefc {

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected simple graph on labelled vertices 0..order()-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<std::string> labels);

    std::size_t order() const { return labels_.size(); }
    std::size_t size() const { return edge_count_; }

    // Throws ValidationError on self-loops or unknown endpoints; repeated
    // edges are ignored.
    void add_edge(std::size_t u, std::size_t v);
    bool adjacent(std::size_t u, std::size_t v) const;
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
    std::size_t degree(std::size_t v) const { return adj_[v].size(); }

    // Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t v) const { return labels_[v]; }

    bool is_complete() const { return 2 * edge_count_ == order() * (order() - (order() ? 1 : 0)); }
    bool is_connected() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<std::size_t>> adj_;
    std::size_t edge_count_ = 0;
};

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph empty_graph(std::size_t n);

struct ProbabilisticGraph {
    Graph graph;
    std::vector<Rational> dist;
};

// Throws ValidationError unless dist has one non-negative entry per vertex
// and sums to exactly 1.
ProbabilisticGraph make_probabilistic(Graph graph, std::vector<Rational> dist);
ProbabilisticGraph uniform_probabilistic(Graph graph);

inline constexpr std::size_t default_materialization_cap = 1'000'000;

// n-fold OR product of a base graph. Vertices are n-tuples of base vertices
// indexed by encode_block; adjacency is answered without listing edges.
class ProductGraph {
public:
    ProductGraph(Graph base, int n);

    const Graph& base() const { return base_; }
    int power() const { return n_; }
    std::size_t order() const { return order_; }

    std::vector<std::size_t> tuple(std::size_t index) const { return decode_block(index, base_.order(), n_); }
    std::size_t index(std::span<const std::size_t> tuple) const { return encode_block(tuple, base_.order()); }

    bool adjacent(std::size_t a, std::size_t b) const;
    bool adjacent_tuples(std::span<const std::size_t> a, std::span<const std::size_t> b) const;

    // Explicit graph with tuple labels; CapExceeded when order() > cap.
    Graph materialize(std::size_t cap = default_materialization_cap) const;

private:
    Graph base_;
    int n_;
    std::size_t order_;
};

// Throws ValidationError for n < 1 and CapExceeded when |V|^n overflows.
ProductGraph or_product(const Graph& g, int n);

Graph rook_graph(const ProblemInstance& inst);

// G_XY^f: vertices are the support cells (row-major), edges join cells in a
// common row or column whose f-values differ.
Graph f_rook_graph(const ProblemInstance& inst);

struct ConfusabilityGraphs {
    Graph x_given_y;  // on alphabet_x
    Graph y_given_x;  // on alphabet_y
};

ConfusabilityGraphs confusability_graphs(const ProblemInstance& inst);

// Probability graphs matching the constructions above.
ProbabilisticGraph f_rook_probabilistic(const ProblemInstance& inst);
ProbabilisticGraph x_confusability_probabilistic(const ProblemInstance& inst);
ProbabilisticGraph y_confusability_probabilistic(const ProblemInstance& inst);

// Edge-list text: "vertices <k>" header, one label per line, then
// "edges <m>" and one "u -- v" line per edge.
void write_edge_list(std::ostream& out, const Graph& g);
void write_dot(std::ostream& out, const Graph& g, const std::string& name);

} // namespace zefc

namespace zefc {

// Adjacency of two support blocks in (G_XY^f)^{OR n}, given G_XY^f.
bool adjacent_blocks(const Graph& f_rook, const SupportBlock& a, const SupportBlock& b);

} // namespace zefc
