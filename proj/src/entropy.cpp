#include "zefc/entropy.hpp"

#include "zefc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace zefc {

double entropy(std::span<const double> dist)
{
    // Masses summed in floating point land within rounding of 1 for point
    // masses; those contribute nothing.
    double h = 0.0;
    for (double p : dist) {
        if (p > 0.0 && p < 1.0 - 1e-12) h -= p * std::log2(p);
    }
    return h;
}

double entropy(std::span<const Rational> dist)
{
    double h = 0.0;
    for (const auto& p : dist) {
        if (p > 0) {
            const double d = to_double(p);
            h -= d * std::log2(d);
        }
    }
    return h;
}

double mutual_information(std::span<const double> px, const ConditionalDesign& design)
{
    std::vector<double> q(design.sets.size(), 0.0);
    for (std::size_t x = 0; x < px.size(); ++x)
        for (std::size_t s = 0; s < q.size(); ++s) q[s] += px[x] * design.weights[x][s];

    double info = 0.0;
    for (std::size_t x = 0; x < px.size(); ++x) {
        if (px[x] <= 0.0) continue;
        for (std::size_t s = 0; s < q.size(); ++s) {
            const double w = design.weights[x][s];
            if (w > 0.0) info += px[x] * w * std::log2(w / q[s]);
        }
    }
    return std::max(info, 0.0);
}

namespace {

struct Membership {
    std::vector<std::vector<std::size_t>> sets_of;  // per vertex
};

Membership membership(std::size_t order, const std::vector<std::vector<std::size_t>>& sets)
{
    Membership m{std::vector<std::vector<std::size_t>>(order)};
    for (std::size_t s = 0; s < sets.size(); ++s)
        for (auto v : sets[s]) m.sets_of[v].push_back(s);
    return m;
}

// p(w|x) proportional to q(w) on the sets containing x.
void reweight(const std::vector<double>& q, const Membership& m, ConditionalDesign& design)
{
    for (std::size_t x = 0; x < m.sets_of.size(); ++x) {
        double z = 0.0;
        for (auto s : m.sets_of[x]) z += q[s];
        auto& row = design.weights[x];
        std::fill(row.begin(), row.end(), 0.0);
        for (auto s : m.sets_of[x]) row[s] = z > 0.0 ? q[s] / z : 1.0 / static_cast<double>(m.sets_of[x].size());
    }
}

std::vector<double> set_marginal(std::span<const double> px, const ConditionalDesign& design)
{
    std::vector<double> q(design.sets.size(), 0.0);
    for (std::size_t x = 0; x < px.size(); ++x)
        for (std::size_t s = 0; s < q.size(); ++s) q[s] += px[x] * design.weights[x][s];
    return q;
}

// Frank-Wolfe gap of the convex dual phi(q) = -sum_x p(x) log2 Z_x(q).
double dual_lower_bound(std::span<const double> px, const std::vector<double>& q, const Membership& m)
{
    std::vector<double> z(px.size(), 0.0);
    double phi = 0.0;
    for (std::size_t x = 0; x < px.size(); ++x) {
        for (auto s : m.sets_of[x]) z[x] += q[s];
        if (px[x] > 0.0) phi -= px[x] * std::log2(z[x]);
    }
    std::vector<double> grad(q.size(), 0.0);
    for (std::size_t x = 0; x < px.size(); ++x) {
        if (px[x] <= 0.0) continue;
        for (auto s : m.sets_of[x]) grad[s] += px[x] / z[x];
    }
    const double top = grad.empty() ? 1.0 : *std::max_element(grad.begin(), grad.end());
    return std::max(0.0, phi + (1.0 - top) / std::log(2.0));
}

ConditionalDesign initial_design(std::size_t order, std::vector<std::vector<std::size_t>> sets, const Membership& m,
                                 std::mt19937_64* jitter)
{
    ConditionalDesign design{std::move(sets), {}};
    design.weights.assign(order, std::vector<double>(design.sets.size(), 0.0));
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (std::size_t x = 0; x < order; ++x) {
        double z = 0.0;
        for (auto s : m.sets_of[x]) {
            design.weights[x][s] = jitter ? u(*jitter) : 1.0;
            z += design.weights[x][s];
        }
        for (auto s : m.sets_of[x]) design.weights[x][s] /= z;
    }
    return design;
}

} // namespace

GraphEntropyResult graph_entropy(const ProbabilisticGraph& pg, const GraphEntropyOptions& options)
{
    const auto order = pg.graph.order();
    std::vector<double> px;
    for (const auto& p : pg.dist) px.push_back(to_double(p));
    auto sets = maximal_independent_sets(pg.graph, options.cap_vertices);
    const auto m = membership(order, sets);

    std::mt19937_64 rng(options.seed);
    constexpr int max_restarts = 3;
    GraphEntropyResult result;
    for (int attempt = 0; attempt <= max_restarts; ++attempt) {
        auto design = initial_design(order, sets, m, attempt == 0 ? nullptr : &rng);
        double objective = mutual_information(px, design);
        bool stalled = !std::isfinite(objective);
        bool converged = false;
        int it = 0;
        if (options.trace) options.trace(0, objective);
        while (!stalled && !converged && it < options.max_iter) {
            ++it;
            reweight(set_marginal(px, design), m, design);
            const double next = mutual_information(px, design);
            if (options.trace) options.trace(it, next);
            if (!std::isfinite(next) || next > objective + 1e-12 * std::max(1.0, objective)) {
                stalled = true;
                break;
            }
            const double scale = std::max(std::abs(objective), std::numeric_limits<double>::min());
            converged = objective == 0.0 || std::abs(objective - next) / scale < options.tol;
            objective = next;
        }
        if (stalled && attempt < max_restarts) continue;
        result.bits = objective;
        result.design = std::move(design);
        result.converged = converged && !stalled;
        result.iterations = it;
        result.lower_bound = std::min(objective, dual_lower_bound(px, set_marginal(px, result.design), m));
        break;
    }
    return result;
}

namespace {

// Dense tableau simplex for max c.y s.t. A y <= b, y >= 0 with b >= 0, using
// Bland's rule so degenerate pivots cannot cycle.
Rational simplex_max(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                     const std::vector<Rational>& c)
{
    const std::size_t rows = a.size();
    const std::size_t vars = c.size();
    const std::size_t cols = vars + rows;
    std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1, Rational(0)));
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < vars; ++j) t[i][j] = a[i][j];
        t[i][vars + i] = 1;
        t[i][cols] = b[i];
        basis[i] = vars + i;
    }
    std::vector<Rational> reduced(cols + 1, Rational(0));  // c_j - z_j, last entry is -objective
    for (std::size_t j = 0; j < vars; ++j) reduced[j] = c[j];

    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (reduced[j] > 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave = rows;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols] / t[i][enter];
            if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == rows) throw Error("fractional chromatic LP is unbounded");

        const Rational pivot = t[leave][enter];
        for (auto& v : t[leave]) v /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational factor = t[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[leave][j];
        }
        const Rational factor = reduced[enter];
        for (std::size_t j = 0; j <= cols; ++j) reduced[j] -= factor * t[leave][j];
        basis[leave] = enter;
    }
    return -reduced[cols];
}

} // namespace

Rational fractional_chromatic_lp(const Graph& g, std::size_t cap)
{
    if (g.order() == 0) return 0;
    // Solved through its dual, the fractional clique LP, whose origin is
    // feasible: max sum_v y_v s.t. sum_{v in s} y_v <= 1 for every set s.
    const auto sets = maximal_independent_sets(g, cap);
    std::vector<std::vector<Rational>> a(sets.size(), std::vector<Rational>(g.order(), Rational(0)));
    for (std::size_t s = 0; s < sets.size(); ++s)
        for (auto v : sets[s]) a[s][v] = 1;
    return simplex_max(a, std::vector<Rational>(sets.size(), Rational(1)), std::vector<Rational>(g.order(), Rational(1)));
}

double conditional_entropy_of_f(const ProblemInstance& inst, int n, std::span<const int> msg_a,
                                std::span<const int> msg_b, std::size_t budget)
{
    const auto blocks = support_blocks(inst, n, budget);
    if (msg_a.size() != checked_power(inst.size_x(), n, SIZE_MAX) || msg_b.size() != checked_power(inst.size_y(), n, SIZE_MAX))
        throw ValidationError("message maps must be total on X^n and Y^n");

    std::map<std::pair<int, int>, std::map<std::vector<int>, Rational>> joint;
    for (const auto& b : blocks) joint[{msg_a[b.x_block], msg_b[b.y_block]}][b.f] += b.prob;

    double h = 0.0;
    for (const auto& [messages, by_value] : joint) {
        if (by_value.size() < 2) continue;
        Rational total = 0;
        for (const auto& [value, p] : by_value) total += p;
        for (const auto& [value, p] : by_value) {
            if (p > 0) h += to_double(p) * std::log2(to_double(total / p));
        }
    }
    return h;
}

} // namespace zefc
