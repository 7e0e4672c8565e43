#include "zefc/coloring.hpp"

#include "zefc/entropy.hpp"
#include "zefc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>

namespace zefc {

int Coloring::num_colors() const
{
    if (colors.empty()) return 0;
    return *std::max_element(colors.begin(), colors.end()) + 1;
}

Coloring canonical(std::span<const int> colors)
{
    std::map<int, int> renumber;
    Coloring out;
    out.colors.reserve(colors.size());
    for (int c : colors) {
        auto [it, inserted] = renumber.try_emplace(c, static_cast<int>(renumber.size()));
        out.colors.push_back(it->second);
    }
    return out;
}

bool is_coloring(const Graph& g, std::span<const int> colors)
{
    if (colors.size() != g.order()) throw ValidationError("coloring is not total on the vertices");
    for (auto [u, v] : g.edges()) {
        if (colors[u] == colors[v]) return false;
    }
    return true;
}

bool is_coloring(const ProductGraph& g, std::span<const int> colors)
{
    if (colors.size() != g.order()) throw ValidationError("coloring is not total on the product vertices");
    for (std::size_t a = 0; a < g.order(); ++a) {
        for (std::size_t b = a + 1; b < g.order(); ++b) {
            if (colors[a] == colors[b] && g.adjacent(a, b)) return false;
        }
    }
    return true;
}

namespace {

using Mask = std::uint64_t;

constexpr std::size_t mask_limit = 64;

std::vector<Mask> adjacency_masks(const Graph& g)
{
    std::vector<Mask> masks(g.order(), 0);
    for (std::size_t v = 0; v < g.order(); ++v)
        for (auto w : g.neighbors(v)) masks[v] |= Mask{1} << w;
    return masks;
}

std::vector<std::size_t> mask_members(Mask m)
{
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

// Bron-Kerbosch with pivoting, run on the complement.
void bron_kerbosch(Mask r, Mask p, Mask x, const std::vector<Mask>& non_adj, std::vector<Mask>& out)
{
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    Mask candidates = p | x;
    std::size_t pivot = static_cast<std::size_t>(std::countr_zero(candidates));
    int best = -1;
    for (Mask c = candidates; c; c &= c - 1) {
        auto u = static_cast<std::size_t>(std::countr_zero(c));
        int score = std::popcount(p & non_adj[u]);
        if (score > best) {
            best = score;
            pivot = u;
        }
    }
    for (Mask todo = p & ~non_adj[pivot]; todo; todo &= todo - 1) {
        auto v = static_cast<std::size_t>(std::countr_zero(todo));
        Mask bit = Mask{1} << v;
        bron_kerbosch(r | bit, p & non_adj[v], x & non_adj[v], non_adj, out);
        p &= ~bit;
        x |= bit;
    }
}

// Class masses within rounding of 1 are point masses.
double plogp(double m) { return m > 0.0 && m < 1.0 - 1e-12 ? -m * std::log2(m) : 0.0; }

constexpr double search_tolerance = 1e-12;

class MinEntropySearch {
public:
    MinEntropySearch(const Graph& g, std::vector<double> mass)
        : adj_(adjacency_masks(g)), mass_(std::move(mass)), suffix_(mass_.size() + 1, 0.0),
          color_(mass_.size(), -1)
    {
        for (std::size_t v = mass_.size(); v-- > 0;) suffix_[v] = suffix_[v + 1] + mass_[v];
    }

    ChromaticEntropyResult run(const Coloring& seed)
    {
        const double seed_value = value_of(seed.colors);
        // Anything within tolerance of the seed is still visited so that the
        // lexicographically first optimum wins.
        best_ = seed_value + 2 * search_tolerance;
        best_colors_.clear();
        descend(0, 0.0);
        if (best_colors_.empty()) return {seed_value, seed, true};
        return {best_, Coloring{best_colors_}, true};
    }

    double value_of(const std::vector<int>& colors) const
    {
        std::vector<double> class_mass;
        for (std::size_t v = 0; v < colors.size(); ++v) {
            if (static_cast<std::size_t>(colors[v]) >= class_mass.size()) class_mass.resize(colors[v] + 1, 0.0);
            class_mass[colors[v]] += mass_[v];
        }
        double h = 0.0;
        for (double m : class_mass) h += plogp(m);
        return h;
    }

private:
    void descend(std::size_t v, double fixed)
    {
        const std::size_t k = class_mask_.size();
        if (v == mass_.size()) {
            if (fixed < best_ - search_tolerance) {
                best_ = fixed;
                best_colors_ = color_;
            }
            return;
        }
        // g is concave and subadditive, so the cheapest completion pours all
        // remaining mass into a single existing class.
        const double rest = suffix_[v];
        double bound = fixed + plogp(rest);
        for (std::size_t c = 0; c < k; ++c) {
            bound = std::min(bound, fixed - plogp(class_mass_[c]) + plogp(class_mass_[c] + rest));
        }
        if (bound >= best_ - search_tolerance) return;

        const Mask bit = Mask{1} << v;
        for (std::size_t c = 0; c < k; ++c) {
            if (class_mask_[c] & adj_[v]) continue;
            const double before = class_mass_[c];
            const double after = before + mass_[v];
            class_mask_[c] |= bit;
            class_mass_[c] = after;
            color_[v] = static_cast<int>(c);
            descend(v + 1, fixed - plogp(before) + plogp(after));
            class_mask_[c] &= ~bit;
            class_mass_[c] = before;
        }
        class_mask_.push_back(bit);
        class_mass_.push_back(mass_[v]);
        color_[v] = static_cast<int>(k);
        descend(v + 1, fixed + plogp(mass_[v]));
        class_mask_.pop_back();
        class_mass_.pop_back();
        color_[v] = -1;
    }

    std::vector<Mask> adj_;
    std::vector<double> mass_;
    std::vector<double> suffix_;
    std::vector<int> color_;
    std::vector<Mask> class_mask_;
    std::vector<double> class_mass_;
    double best_ = 0.0;
    std::vector<int> best_colors_;
};

// Searches colorings whose classes, in order of non-increasing mass, are each
// maximal independent in the graph left by the earlier classes. Moving a vertex
// into a heavier class never raises the entropy, so some optimum has this form.
class MaximalClassSearch {
public:
    MaximalClassSearch(std::span<const Mask> adj, std::span<const double> mass) : mass_(mass.begin(), mass.end())
    {
        const std::size_t n = mass_.size();
        all_ = n == mask_limit ? ~Mask{0} : (Mask{1} << n) - 1;
        non_adj_.resize(n);
        for (std::size_t v = 0; v < n; ++v) non_adj_[v] = all_ & ~adj[v] & ~(Mask{1} << v);
    }

    std::optional<ChromaticEntropyResult> run(double ceiling)
    {
        best_ = ceiling;
        best_classes_.clear();
        classes_.clear();
        descend(all_, 0.0, mass_of(all_));
        if (best_classes_.empty()) return std::nullopt;
        std::vector<int> colors(mass_.size(), 0);
        for (std::size_t c = 0; c < best_classes_.size(); ++c)
            for (auto v : mask_members(best_classes_[c])) colors[v] = static_cast<int>(c);
        return ChromaticEntropyResult{best_, canonical(colors), true};
    }

private:
    double mass_of(Mask m) const
    {
        double total = 0.0;
        for (; m; m &= m - 1) total += mass_[static_cast<std::size_t>(std::countr_zero(m))];
        return total;
    }

    // Least entropy contribution of mass r split into pieces of at most cap.
    static double spread_bound(double r, double cap)
    {
        if (r <= 0.0) return 0.0;
        if (cap <= 0.0) return std::numeric_limits<double>::infinity();
        const double k = std::floor(r / cap);
        return k * plogp(cap) + plogp(std::max(0.0, r - k * cap));
    }

    void descend(Mask rest, double fixed, double cap)
    {
        if (rest == 0) {
            if (fixed < best_ - search_tolerance) {
                best_ = fixed;
                best_classes_ = classes_;
            }
            return;
        }
        const double r = mass_of(rest);
        if (fixed + spread_bound(r, cap) >= best_ - search_tolerance) return;

        std::vector<Mask> sets;
        bron_kerbosch(0, rest, 0, non_adj_, sets);
        std::vector<std::pair<double, Mask>> ranked;
        for (Mask s : sets) {
            const double m = mass_of(s);
            if (m <= cap + search_tolerance) ranked.emplace_back(m, s);
        }
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (auto [m, s] : ranked) {
            const double next = fixed + plogp(m);
            if (next + spread_bound(r - m, m) >= best_ - search_tolerance) continue;
            classes_.push_back(s);
            descend(rest & ~s, next, m);
            classes_.pop_back();
        }
    }

    std::vector<double> mass_;
    std::vector<Mask> non_adj_;
    Mask all_ = 0;
    std::vector<Mask> classes_;
    std::vector<Mask> best_classes_;
    double best_ = 0.0;
};

// Heavy vertices first, each joining the heaviest compatible class.
Coloring greedy_coloring(const Graph& g, const std::vector<double>& mass)
{
    std::vector<std::size_t> order(g.order());
    for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return mass[a] > mass[b]; });

    std::vector<int> colors(g.order(), -1);
    std::vector<std::vector<std::size_t>> classes;
    std::vector<double> class_mass;
    for (auto v : order) {
        int chosen = -1;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            bool free = std::none_of(classes[c].begin(), classes[c].end(), [&](auto w) { return g.adjacent(v, w); });
            if (free && (chosen < 0 || class_mass[c] > class_mass[static_cast<std::size_t>(chosen)])) chosen = static_cast<int>(c);
        }
        if (chosen < 0) {
            chosen = static_cast<int>(classes.size());
            classes.emplace_back();
            class_mass.push_back(0.0);
        }
        classes[static_cast<std::size_t>(chosen)].push_back(v);
        class_mass[static_cast<std::size_t>(chosen)] += mass[v];
        colors[v] = chosen;
    }
    return canonical(colors);
}

std::vector<double> to_doubles(const std::vector<Rational>& dist)
{
    std::vector<double> out;
    out.reserve(dist.size());
    for (const auto& p : dist) out.push_back(to_double(p));
    return out;
}

} // namespace

std::vector<std::vector<std::size_t>> maximal_independent_sets(const Graph& g, std::size_t cap)
{
    if (g.order() > cap || g.order() > mask_limit) {
        throw CapExceeded("maximal independent set enumeration is capped at " + std::to_string(std::min(cap, mask_limit))
                          + " vertices, graph has " + std::to_string(g.order()));
    }
    const Mask all = g.order() == mask_limit ? ~Mask{0} : (Mask{1} << g.order()) - 1;
    auto adj = adjacency_masks(g);
    std::vector<Mask> non_adj(g.order());
    for (std::size_t v = 0; v < g.order(); ++v) non_adj[v] = all & ~adj[v] & ~(Mask{1} << v);

    std::vector<Mask> found;
    if (g.order() > 0) bron_kerbosch(0, all, 0, non_adj, found);

    std::vector<std::vector<std::size_t>> sets;
    sets.reserve(found.size());
    for (Mask m : found) sets.push_back(mask_members(m));
    std::sort(sets.begin(), sets.end());
    return sets;
}

namespace {

void check_search_cap(const Graph& g, const ChromaticOptions& options)
{
    if (g.order() > options.cap_vertices || g.order() > mask_limit) {
        throw CapExceeded("exact chromatic entropy search is capped at " + std::to_string(std::min(options.cap_vertices, mask_limit))
                          + " vertices, graph has " + std::to_string(g.order())
                          + "; use heuristic mode for an upper bound");
    }
}

} // namespace

ChromaticEntropyResult chromatic_entropy(const ProbabilisticGraph& pg, const ChromaticOptions& options)
{
    const auto& g = pg.graph;
    auto mass = to_doubles(pg.dist);
    if (g.order() > options.cap_vertices || g.order() > mask_limit) {
        if (!options.allow_heuristic) check_search_cap(g, options);
        auto witness = greedy_coloring(g, mass);
        std::vector<double> class_mass(static_cast<std::size_t>(witness.num_colors()), 0.0);
        for (std::size_t v = 0; v < g.order(); ++v) class_mass[witness.colors[v]] += mass[v];
        return {entropy(class_mass), witness, false};
    }
    if (g.order() == 0) return {0.0, Coloring{}, true};

    // The maximal-class search finds the optimum value quickly; the canonical
    // search then only has to pick the lexicographically first witness.
    MinEntropySearch search(g, mass);
    auto seed = greedy_coloring(g, mass);
    const auto adj = adjacency_masks(g);
    if (auto better = MaximalClassSearch(adj, mass).run(search.value_of(seed.colors) + 2 * search_tolerance))
        seed = better->witness;
    return search.run(seed);
}

std::optional<ChromaticEntropyResult> chromatic_entropy_below(const ProbabilisticGraph& pg, double ceiling,
                                                             const ChromaticOptions& options)
{
    const auto& g = pg.graph;
    check_search_cap(g, options);
    if (g.order() == 0) {
        if (ceiling > search_tolerance) return ChromaticEntropyResult{0.0, Coloring{}, true};
        return std::nullopt;
    }
    auto mass = to_doubles(pg.dist);
    MinEntropySearch search(g, mass);
    const double greedy = search.value_of(greedy_coloring(g, mass).colors);
    const auto adj = adjacency_masks(g);
    return MaximalClassSearch(adj, mass).run(std::min(ceiling, greedy + 2 * search_tolerance));
}

std::optional<double> min_coloring_entropy_below(std::span<const std::uint64_t> adjacency, std::span<const double> mass,
                                                 double ceiling)
{
    if (mass.size() > mask_limit || adjacency.size() != mass.size())
        throw CapExceeded("bitmask coloring search handles at most 64 vertices");
    if (mass.empty()) return ceiling > search_tolerance ? std::optional<double>(0.0) : std::nullopt;
    auto found = MaximalClassSearch(adjacency, mass).run(ceiling);
    if (!found) return std::nullopt;
    return found->bits;
}

ChromaticEntropyResult chromatic_entropy_product(const ProbabilisticGraph& pg, int n, const ChromaticOptions& options)
{
    const auto product = or_product(pg.graph, n);
    if (product.order() > options.cap_vertices && !options.allow_heuristic) {
        throw CapExceeded("OR product has " + std::to_string(product.order())
                          + " vertices, above the exact chromatic entropy cap of " + std::to_string(options.cap_vertices));
    }
    auto graph = product.materialize(std::max(options.cap_vertices, default_materialization_cap));
    auto dist = product_distribution(pg.dist, n);
    auto result = chromatic_entropy(ProbabilisticGraph{std::move(graph), std::move(dist)}, options);
    result.bits /= n;
    return result;
}

ColorCover cover_from_theta(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b,
                            MergeMap theta, std::size_t budget)
{
    const auto blocks = support_blocks(inst, n, budget);
    if (c_a.size() != checked_power(inst.size_x(), n, SIZE_MAX) || c_b.size() != checked_power(inst.size_y(), n, SIZE_MAX))
        throw ValidationError("encoder maps must be total on X^n and Y^n");
    ColorCover cover{n, std::move(c_a), std::move(c_b), {}, std::move(theta)};
    cover.c_c.reserve(blocks.size());
    for (const auto& b : blocks) {
        auto it = cover.theta.find({cover.c_a[b.x_block], cover.c_b[b.y_block]});
        if (it == cover.theta.end()) {
            throw ValidationError("merge map has no entry for color pair (" + std::to_string(cover.c_a[b.x_block]) + ","
                                  + std::to_string(cover.c_b[b.y_block]) + ")");
        }
        cover.c_c.push_back(it->second);
    }
    return cover;
}

ColorCover cover_from_relay_coloring(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b,
                                     std::vector<int> c_c, std::size_t budget)
{
    const auto blocks = support_blocks(inst, n, budget);
    if (c_c.size() != blocks.size()) throw ValidationError("relay coloring must be total on the support blocks");
    if (c_a.size() != checked_power(inst.size_x(), n, SIZE_MAX) || c_b.size() != checked_power(inst.size_y(), n, SIZE_MAX))
        throw ValidationError("encoder maps must be total on X^n and Y^n");
    MergeMap theta;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        theta.try_emplace({c_a[blocks[i].x_block], c_b[blocks[i].y_block]}, c_c[i]);
    }
    return {n, std::move(c_a), std::move(c_b), std::move(c_c), std::move(theta)};
}

CoverCheck verify_color_cover(const ProblemInstance& inst, int n, const ColorCover& cover, std::size_t budget)
{
    const auto blocks = support_blocks(inst, n, budget);
    if (cover.n != n) throw ValidationError("cover block length does not match n");
    if (cover.c_a.size() != checked_power(inst.size_x(), n, SIZE_MAX)
        || cover.c_b.size() != checked_power(inst.size_y(), n, SIZE_MAX) || cover.c_c.size() != blocks.size())
        throw ValidationError("cover maps are not total on X^n, Y^n and the support blocks");

    const auto gxy = f_rook_graph(inst);
    // Each block against the earlier ones, matching verify_zero_error.
    for (std::size_t j = 1; j < blocks.size(); ++j) {
        const auto& b = blocks[j];
        for (std::size_t i = 0; i < j; ++i) {
            const auto& a = blocks[i];
            const bool same_pair = cover.c_a[a.x_block] == cover.c_a[b.x_block] && cover.c_b[a.y_block] == cover.c_b[b.y_block];
            const bool same_relay = cover.c_c[i] == cover.c_c[j];
            if (!same_pair && !same_relay) continue;
            if (!adjacent_blocks(gxy, a, b)) continue;
            if (same_pair) return {false, "c_A x c_B is not a coloring of the OR power of G_XY^f", std::pair{i, j}};
            return {false, "c_C is not a coloring of the OR power of G_XY^f", std::pair{i, j}};
        }
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto it = cover.theta.find({cover.c_a[blocks[i].x_block], cover.c_b[blocks[i].y_block]});
        if (it == cover.theta.end() || it->second != cover.c_c[i]) {
            return {false, "c_A x c_B does not refine c_C through theta", std::pair{i, i}};
        }
    }
    return {};
}

void write_coloring(std::ostream& out, const Graph& g, std::span<const int> colors)
{
    for (std::size_t v = 0; v < g.order(); ++v) out << g.label(v) << '\t' << colors[v] << '\n';
}

void write_cover(std::ostream& out, const ProblemInstance& inst, const ColorCover& cover)
{
    out << "# c_A\n";
    for (std::size_t i = 0; i < cover.c_a.size(); ++i)
        out << block_label(decode_block(i, inst.size_x(), cover.n), inst.alphabet_x) << '\t' << cover.c_a[i] << '\n';
    out << "# c_B\n";
    for (std::size_t i = 0; i < cover.c_b.size(); ++i)
        out << block_label(decode_block(i, inst.size_y(), cover.n), inst.alphabet_y) << '\t' << cover.c_b[i] << '\n';
    out << "# c_C\n";
    const auto blocks = support_blocks(inst, cover.n, SIZE_MAX);
    for (std::size_t i = 0; i < blocks.size() && i < cover.c_c.size(); ++i) {
        out << block_label(decode_block(blocks[i].x_block, inst.size_x(), cover.n), inst.alphabet_x) << '|'
            << block_label(decode_block(blocks[i].y_block, inst.size_y(), cover.n), inst.alphabet_y) << '\t'
            << cover.c_c[i] << '\n';
    }
    out << "# theta\n";
    for (const auto& [pair, color] : cover.theta) out << pair.first << ',' << pair.second << '\t' << color << '\n';
}

} // namespace zefc
