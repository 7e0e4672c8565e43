#include "zefc/graphs.hpp"

#include "zefc/errors.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace zefc {

Graph::Graph(std::vector<std::string> labels)
    : labels_(std::move(labels)), adj_(labels_.size())
{
}

void Graph::add_edge(std::size_t u, std::size_t v)
{
    if (u >= order() || v >= order()) throw ValidationError("edge endpoint is not a vertex");
    if (u == v) throw ValidationError("self-loop on vertex " + labels_[u]);
    auto& nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return;
    nu.insert(it, v);
    auto& nv = adj_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++edge_count_;
}

bool Graph::adjacent(std::size_t u, std::size_t v) const
{
    const auto& nu = adj_[u];
    return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < order(); ++u) {
        for (auto v : adj_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

bool Graph::is_connected() const
{
    if (order() == 0) return true;
    std::vector<char> seen(order(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == order();
}

namespace {

std::vector<std::string> numbered_labels(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

} // namespace

Graph complete_graph(std::size_t n)
{
    Graph g(numbered_labels(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle_graph(std::size_t n)
{
    Graph g(numbered_labels(n));
    if (n >= 3) {
        for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    }
    return g;
}

Graph empty_graph(std::size_t n) { return Graph(numbered_labels(n)); }

ProbabilisticGraph make_probabilistic(Graph graph, std::vector<Rational> dist)
{
    if (dist.size() != graph.order()) throw ValidationError("distribution size does not match the vertex count");
    Rational total = 0;
    for (const auto& p : dist) {
        if (p < 0) throw ValidationError("negative vertex probability");
        total += p;
    }
    if (total != 1) throw ValidationError("vertex distribution sums to " + to_string(total));
    return {std::move(graph), std::move(dist)};
}

ProbabilisticGraph uniform_probabilistic(Graph graph)
{
    const auto n = graph.order();
    if (n == 0) throw ValidationError("uniform distribution on an empty graph");
    std::vector<Rational> dist(n, Rational(1, static_cast<long long>(n)));
    return make_probabilistic(std::move(graph), std::move(dist));
}

ProductGraph::ProductGraph(Graph base, int n)
    : base_(std::move(base)), n_(n),
      order_(checked_power(base_.order(), n, std::numeric_limits<std::size_t>::max()))
{
}

bool ProductGraph::adjacent(std::size_t a, std::size_t b) const
{
    const auto base = base_.order();
    for (int i = 0; i < n_; ++i) {
        if (base_.adjacent(a % base, b % base)) return true;
        a /= base;
        b /= base;
    }
    return false;
}

bool ProductGraph::adjacent_tuples(std::span<const std::size_t> a, std::span<const std::size_t> b) const
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (base_.adjacent(a[i], b[i])) return true;
    }
    return false;
}

Graph ProductGraph::materialize(std::size_t cap) const
{
    if (order_ > cap) {
        throw CapExceeded("OR product has " + std::to_string(order_) + " vertices, above the materialization cap of "
                          + std::to_string(cap) + "; use a smaller n or lazy adjacency");
    }
    std::vector<std::string> labels;
    labels.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) labels.push_back(block_label(tuple(i), base_.labels()));
    Graph g(std::move(labels));
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = a + 1; b < order_; ++b)
            if (adjacent(a, b)) g.add_edge(a, b);
    return g;
}

ProductGraph or_product(const Graph& g, int n)
{
    if (n < 1) throw ValidationError("OR product power must be positive");
    return ProductGraph(g, n);
}

namespace {

std::string cell_label(const ProblemInstance& inst, Cell c)
{
    return "(" + inst.alphabet_x[c.x] + "," + inst.alphabet_y[c.y] + ")";
}

} // namespace

Graph rook_graph(const ProblemInstance& inst)
{
    const auto nx = inst.size_x();
    const auto ny = inst.size_y();
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) labels.push_back(cell_label(inst, {x, y}));
    Graph g(std::move(labels));
    for (std::size_t a = 0; a < nx * ny; ++a) {
        for (std::size_t b = a + 1; b < nx * ny; ++b) {
            if (a / ny == b / ny || a % ny == b % ny) g.add_edge(a, b);
        }
    }
    return g;
}

Graph f_rook_graph(const ProblemInstance& inst)
{
    const auto sup = support(inst);
    std::vector<std::string> labels;
    for (const auto& c : sup.pairs) labels.push_back(cell_label(inst, c));
    Graph g(std::move(labels));
    for (std::size_t a = 0; a < sup.size(); ++a) {
        for (std::size_t b = a + 1; b < sup.size(); ++b) {
            const auto& u = sup.pairs[a];
            const auto& v = sup.pairs[b];
            const bool rook = u.x == v.x || u.y == v.y;
            if (rook && inst.f(u.x, u.y) != inst.f(v.x, v.y)) g.add_edge(a, b);
        }
    }
    return g;
}

ConfusabilityGraphs confusability_graphs(const ProblemInstance& inst)
{
    ConfusabilityGraphs out{Graph(inst.alphabet_x), Graph(inst.alphabet_y)};
    for (std::size_t y = 0; y < inst.size_y(); ++y) {
        for (std::size_t x = 0; x < inst.size_x(); ++x) {
            for (std::size_t x2 = x + 1; x2 < inst.size_x(); ++x2) {
                if (inst.p(x, y) > 0 && inst.p(x2, y) > 0 && inst.f(x, y) != inst.f(x2, y)) out.x_given_y.add_edge(x, x2);
            }
        }
    }
    for (std::size_t x = 0; x < inst.size_x(); ++x) {
        for (std::size_t y = 0; y < inst.size_y(); ++y) {
            for (std::size_t y2 = y + 1; y2 < inst.size_y(); ++y2) {
                if (inst.p(x, y) > 0 && inst.p(x, y2) > 0 && inst.f(x, y) != inst.f(x, y2)) out.y_given_x.add_edge(y, y2);
            }
        }
    }
    return out;
}

ProbabilisticGraph f_rook_probabilistic(const ProblemInstance& inst)
{
    const auto sup = support(inst);
    std::vector<Rational> dist;
    for (const auto& c : sup.pairs) dist.push_back(inst.p(c.x, c.y));
    return make_probabilistic(f_rook_graph(inst), std::move(dist));
}

ProbabilisticGraph x_confusability_probabilistic(const ProblemInstance& inst)
{
    return make_probabilistic(confusability_graphs(inst).x_given_y, marginals(inst).x);
}

ProbabilisticGraph y_confusability_probabilistic(const ProblemInstance& inst)
{
    return make_probabilistic(confusability_graphs(inst).y_given_x, marginals(inst).y);
}

void write_edge_list(std::ostream& out, const Graph& g)
{
    out << "vertices " << g.order() << '\n';
    for (const auto& l : g.labels()) out << l << '\n';
    out << "edges " << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << g.label(u) << " -- " << g.label(v) << '\n';
}

void write_dot(std::ostream& out, const Graph& g, const std::string& name)
{
    out << "graph \"" << name << "\" {\n";
    for (std::size_t v = 0; v < g.order(); ++v) out << "  v" << v << " [label=\"" << g.label(v) << "\"];\n";
    for (auto [u, v] : g.edges()) out << "  v" << u << " -- v" << v << ";\n";
    out << "}\n";
}

} // namespace zefc

namespace zefc {

bool adjacent_blocks(const Graph& f_rook, const SupportBlock& a, const SupportBlock& b)
{
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        if (f_rook.adjacent(a.cells[i], b.cells[i])) return true;
    }
    return false;
}

} // namespace zefc
