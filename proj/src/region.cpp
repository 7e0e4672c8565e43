#include "zefc/region.hpp"

#include "zefc/errors.hpp"
#include "zefc/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <cstdint>
#include <tuple>

namespace zefc {

bool dominates(const RateTriple& a, const RateTriple& b, double tol)
{
    return a.r_a >= b.r_a - tol && a.r_b >= b.r_b - tol && a.r_c >= b.r_c - tol;
}

namespace {

struct GraphEntropies {
    double xy = 0.0;
    double x = 0.0;
    double y = 0.0;
    bool converged = true;
};

GraphEntropies solve_all(const ProblemInstance& inst, const BoundOptions& options)
{
    auto xy = graph_entropy(f_rook_probabilistic(inst), options.graph_entropy);
    auto x = graph_entropy(x_confusability_probabilistic(inst), options.graph_entropy);
    auto y = graph_entropy(y_confusability_probabilistic(inst), options.graph_entropy);
    return {xy.bits, x.bits, y.bits, xy.converged && x.converged && y.converged};
}

} // namespace

RateTriple inner_bound_1(const ProblemInstance& inst, const BoundOptions& options)
{
    const auto m = marginals(inst);
    return {entropy(m.x), entropy(m.y), graph_entropy(f_rook_probabilistic(inst), options.graph_entropy).bits};
}

RateTriple inner_bound_2(const ProblemInstance& inst, const BoundOptions& options)
{
    const double hx = graph_entropy(x_confusability_probabilistic(inst), options.graph_entropy).bits;
    const double hy = graph_entropy(y_confusability_probabilistic(inst), options.graph_entropy).bits;
    return {hx, hy, hx + hy};
}

RateTriple outer_bound(const ProblemInstance& inst, const BoundOptions& options)
{
    const auto e = solve_all(inst, options);
    return {e.x, e.y, e.xy};
}

RateRegionReport compute_bounds(const ProblemInstance& inst, const BoundOptions& options)
{
    const auto e = solve_all(inst, options);
    const auto m = marginals(inst);
    RateRegionReport report;
    report.corner_i1 = {entropy(m.x), entropy(m.y), e.xy};
    report.corner_i2 = {e.x, e.y, e.x + e.y};
    report.corner_o = {e.x, e.y, e.xy};
    report.converged = e.converged;
    report.tight = membership(report, report.corner_o) == Membership::inside_inner;
    return report;
}

std::string to_string(Membership m)
{
    switch (m) {
    case Membership::inside_inner: return "inside_inner";
    case Membership::between_bounds: return "between_bounds";
    case Membership::outside_outer: return "outside_outer";
    }
    return "unknown";
}

Membership membership(const RateRegionReport& report, const RateTriple& r, double tol)
{
    // Each axis k constrains lambda through r_k >= i2_k + lambda (i1_k - i2_k).
    double lo = 0.0;
    double hi = 1.0;
    auto constrain = [&](double rk, double i1, double i2) {
        const double slope = i1 - i2;
        const double slack = rk - i2 + tol;
        if (std::abs(slope) <= std::numeric_limits<double>::epsilon() * std::max(std::abs(i1), std::abs(i2))) {
            if (slack < 0.0) hi = -1.0;
            return;
        }
        if (slope > 0.0) hi = std::min(hi, slack / slope);
        else lo = std::max(lo, slack / slope);
    };
    constrain(r.r_a, report.corner_i1.r_a, report.corner_i2.r_a);
    constrain(r.r_b, report.corner_i1.r_b, report.corner_i2.r_b);
    constrain(r.r_c, report.corner_i1.r_c, report.corner_i2.r_c);
    if (lo <= hi) return Membership::inside_inner;
    if (!dominates(r, report.corner_o, tol)) return Membership::outside_outer;
    return Membership::between_bounds;
}

Membership membership(const ProblemInstance& inst, const RateTriple& r, const BoundOptions& options)
{
    return membership(compute_bounds(inst, options), r);
}

std::vector<RateTriple> pareto_minimal(std::vector<RateTriple> points, double tol)
{
    auto key = [](const RateTriple& t) { return std::tuple(t.r_a, t.r_b, t.r_c); };
    std::sort(points.begin(), points.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    // Coordinates equal up to tol make the lexicographic order unreliable, so
    // every pair is compared; of two equivalent points the first is kept.
    std::vector<RateTriple> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (j == i || !dominates(points[i], points[j], tol)) continue;
            dominated = j < i || !dominates(points[j], points[i], tol);
        }
        if (!dominated) kept.push_back(points[i]);
    }
    return kept;
}

namespace {

struct WeightedColoring {
    std::vector<int> colors;
    double bits = 0.0;
};

// Every canonical proper coloring of g, with the entropy of its color classes.
std::vector<WeightedColoring> all_colorings(const Graph& g, const std::vector<Rational>& dist, std::size_t cap)
{
    std::vector<double> mass;
    for (const auto& p : dist) mass.push_back(to_double(p));
    std::vector<WeightedColoring> out;
    std::vector<int> colors(g.order(), -1);
    std::vector<double> class_mass;

    auto visit = [&](auto&& self, std::size_t v) -> void {
        if (v == g.order()) {
            if (out.size() >= cap) {
                throw CapExceeded("more than " + std::to_string(cap) + " canonical colorings of a confusability power");
            }
            out.push_back({colors, entropy(class_mass)});
            return;
        }
        const std::size_t k = class_mass.size();
        for (std::size_t c = 0; c <= k; ++c) {
            bool ok = true;
            for (auto w : g.neighbors(v)) {
                if (w < v && colors[w] == static_cast<int>(c)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            if (c == k) class_mass.push_back(0.0);
            class_mass[c] += mass[v];
            colors[v] = static_cast<int>(c);
            self(self, v + 1);
            class_mass[c] -= mass[v];
            if (c == k) class_mass.pop_back();
        }
        colors[v] = -1;
    };
    visit(visit, 0);
    return out;
}

} // namespace

std::vector<RateTriple> chromatic_region_frontier(const ProblemInstance& inst, int n, const FrontierOptions& options)
{
    if (n < 1) throw ValidationError("block length must be positive");
    if (n > options.max_n || inst.size_x() > options.max_alphabet || inst.size_y() > options.max_alphabet) {
        throw CapExceeded("frontier enumeration is limited to alphabets of size " + std::to_string(options.max_alphabet)
                          + " and n <= " + std::to_string(options.max_n));
    }
    const auto conf = confusability_graphs(inst);
    const auto m = marginals(inst);
    const auto gx = or_product(conf.x_given_y, n).materialize(options.block_budget);
    const auto gy = or_product(conf.y_given_x, n).materialize(options.block_budget);
    auto cas = all_colorings(gx, product_distribution(m.x, n), options.max_colorings);
    auto cbs = all_colorings(gy, product_distribution(m.y, n), options.max_colorings);
    if (cas.size() * cbs.size() > options.max_pairs) {
        throw CapExceeded(std::to_string(cas.size()) + " x " + std::to_string(cbs.size())
                          + " encoder colorings exceed the pair cap of " + std::to_string(options.max_pairs));
    }
    // Cheap encoders first, so that points found early can bound later pairs.
    auto by_bits = [](const WeightedColoring& a, const WeightedColoring& b) { return a.bits < b.bits; };
    std::stable_sort(cas.begin(), cas.end(), by_bits);
    std::stable_sort(cbs.begin(), cbs.end(), by_bits);

    const auto blocks = support_blocks(inst, n, options.block_budget);
    const auto gxy = f_rook_graph(inst);
    std::vector<std::pair<std::size_t, std::size_t>> block_edges;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (adjacent_blocks(gxy, blocks[i], blocks[j])) block_edges.emplace_back(i, j);

    if (blocks.size() > 64) {
        throw CapExceeded("frontier relay search handles at most 64 support blocks, instance has "
                          + std::to_string(blocks.size()));
    }
    std::vector<double> block_mass;
    for (const auto& b : blocks) block_mass.push_back(to_double(b.prob));

    constexpr double tol = 1e-12;
    constexpr double unbounded = std::numeric_limits<double>::infinity();
    // Every relay coloring also colors the full block graph, so its minimum
    // entropy is a floor for all pairs.
    std::vector<std::uint64_t> full(blocks.size(), 0);
    for (auto [i, j] : block_edges) {
        full[i] |= std::uint64_t{1} << j;
        full[j] |= std::uint64_t{1} << i;
    }
    const double floor = *min_coloring_entropy_below(full, block_mass, unbounded) / n;

    std::vector<RateTriple> candidates;
    std::vector<int> class_of(blocks.size());
    std::vector<int> pair_class;
    std::vector<double> class_mass;
    std::vector<std::uint64_t> quotient;
    for (const auto& ca : cas) {
        const int ka = *std::max_element(ca.colors.begin(), ca.colors.end()) + 1;
        for (const auto& cb : cbs) {
            const double r_a = ca.bits / n;
            const double r_b = cb.bits / n;
            // A relay rate at or above the best one already reachable with
            // cheaper encoders only yields dominated points.
            double ceiling = unbounded;
            for (const auto& q : candidates)
                if (q.r_a <= r_a + tol && q.r_b <= r_b + tol) ceiling = std::min(ceiling, q.r_c);
            if (ceiling <= floor + tol) continue;

            // Classes of c_A x c_B over the support blocks; the cheapest relay
            // coloring is a minimum-entropy coloring of their quotient graph.
            const int kb = *std::max_element(cb.colors.begin(), cb.colors.end()) + 1;
            pair_class.assign(static_cast<std::size_t>(ka * kb), -1);
            class_mass.clear();
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                auto& c = pair_class[static_cast<std::size_t>(ca.colors[blocks[i].x_block] * kb + cb.colors[blocks[i].y_block])];
                if (c < 0) {
                    c = static_cast<int>(class_mass.size());
                    class_mass.push_back(0.0);
                }
                class_mass[static_cast<std::size_t>(c)] += block_mass[i];
                class_of[i] = c;
            }
            quotient.assign(class_mass.size(), 0);
            for (auto [i, j] : block_edges) {
                const int u = class_of[i];
                const int v = class_of[j];
                if (u == v) throw Error("encoder colorings of the confusability powers failed to color G_XY^f");
                quotient[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
                quotient[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
            }
            const auto hc = min_coloring_entropy_below(quotient, class_mass, ceiling * n);
            if (hc) candidates.push_back({r_a, r_b, *hc / n});
        }
        candidates = pareto_minimal(std::move(candidates));
    }
    return pareto_minimal(std::move(candidates));
}

} // namespace zefc
