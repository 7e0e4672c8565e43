#include "fixtures.hpp"

#include "zefc/coloring.hpp"
#include "zefc/entropy.hpp"
#include "zefc/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace zefc;
using namespace zefc::testing;

namespace {

Graph path_graph(std::size_t n)
{
    Graph g(labels(static_cast<int>(n)));
    for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

std::vector<Rational> random_dist(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> w(1, 9);
    std::vector<long long> raw(n);
    long long total = 0;
    for (auto& r : raw) total += (r = w(rng));
    std::vector<Rational> out;
    for (auto r : raw) out.emplace_back(r, total);
    return out;
}

} // namespace

TEST_SUITE("entropy") {

TEST_CASE("shannon entropy")
{
    CHECK(entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(entropy(std::vector<double>{1.0, 0.0}) == 0.0);
    CHECK(entropy(std::vector<Rational>{Rational(1, 3), Rational(2, 3)}) == doctest::Approx(0.9182958340544896));
    CHECK(entropy(std::vector<double>(8, 0.125)) == doctest::Approx(3.0));
}

TEST_CASE("graph entropy of standard graphs")
{
    const auto k3 = graph_entropy(uniform_probabilistic(complete_graph(3)));
    CHECK(k3.converged);
    CHECK(std::abs(k3.bits - std::log2(3.0)) < 1e-9);

    const auto none = graph_entropy(make_probabilistic(empty_graph(3), {Rational(1, 2), Rational(1, 4), Rational(1, 4)}));
    CHECK(std::abs(none.bits) < 1e-12);

    const auto c5 = graph_entropy(uniform_probabilistic(cycle_graph(5)));
    CHECK(std::abs(c5.bits - std::log2(2.5)) < 1e-6);
    CHECK(c5.lower_bound <= c5.bits + 1e-12);

    const auto c10 = graph_entropy(uniform_probabilistic(cycle_graph(10)));
    CHECK(std::abs(c10.bits - 1.0) < 1e-6);

    const auto p4 = graph_entropy(make_probabilistic(path_graph(4), {Rational(1, 10), Rational(2, 10), Rational(3, 10), Rational(4, 10)}));
    CHECK(std::abs(p4.bits - 0.9709505944546686) < 1e-6);
}

TEST_CASE("graph entropy of the min instance rook graph")
{
    const auto pg = f_rook_probabilistic(min_instance());
    CHECK(pg.graph.size() == 10);
    const auto r = graph_entropy(pg);
    CHECK(r.converged);
    CHECK(std::abs(r.bits - 1.1544843918) < 1e-6);
}

TEST_CASE("complete graphs give the source entropy")
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const auto dist = random_dist(rng, 2 + trial % 5);
        const auto r = graph_entropy(make_probabilistic(complete_graph(dist.size()), dist));
        CHECK(std::abs(r.bits - entropy(dist)) < 1e-8);
    }
}

TEST_CASE("objective trace never increases")
{
    std::vector<double> trace;
    GraphEntropyOptions o;
    o.trace = [&](int, double bits) { trace.push_back(bits); };
    const auto r = graph_entropy(make_probabilistic(path_graph(5), {Rational(1, 10), Rational(3, 10), Rational(1, 5), Rational(1, 10), Rational(3, 10)}), o);
    REQUIRE(!trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
    CHECK(trace.back() == doctest::Approx(r.bits));
}

TEST_CASE("returned design is admissible")
{
    const auto pg = uniform_probabilistic(cycle_graph(7));
    const auto r = graph_entropy(pg);
    std::vector<double> px(7, 1.0 / 7);
    CHECK(mutual_information(px, r.design) == doctest::Approx(r.bits).epsilon(1e-12));
    for (const auto& row : r.design.weights) {
        double total = 0.0;
        for (double w : row) total += w;
        CHECK(total == doctest::Approx(1.0));
    }
    for (std::size_t x = 0; x < 7; ++x)
        for (std::size_t s = 0; s < r.design.sets.size(); ++s)
            if (r.design.weights[x][s] > 0)
                CHECK(std::find(r.design.sets[s].begin(), r.design.sets[s].end(), x) != r.design.sets[s].end());
}

TEST_CASE("graph entropy sandwich and edge monotonicity")
{
    std::mt19937_64 rng(67);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 4 + trial % 4;
        Graph g(labels(static_cast<int>(n)));
        std::vector<Edge> missing;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                if (coin(rng)) g.add_edge(u, v);
                else missing.push_back({u, v});
            }
        const auto dist = random_dist(rng, n);
        const auto pg = make_probabilistic(g, dist);
        const auto h = graph_entropy(pg);
        CHECK(h.lower_bound <= h.bits + 1e-12);
        CHECK(h.bits <= chromatic_entropy(pg).bits + 1e-9);
        CHECK(h.bits <= entropy(dist) + 1e-9);
        CHECK(h.bits <= std::log2(to_double(fractional_chromatic_lp(g))) + 1e-9);
        if (!missing.empty()) {
            Graph denser = g;
            denser.add_edge(missing.front().first, missing.front().second);
            CHECK(graph_entropy(make_probabilistic(denser, dist)).bits >= h.bits - 1e-7);
        }
    }
}

TEST_CASE("vertex cap")
{
    CHECK_THROWS_AS(graph_entropy(uniform_probabilistic(empty_graph(30))), CapExceeded);
}

TEST_CASE("fractional chromatic number")
{
    CHECK(fractional_chromatic_lp(cycle_graph(5)) == Rational(5, 2));
    CHECK(fractional_chromatic_lp(cycle_graph(7)) == Rational(7, 3));
    CHECK(fractional_chromatic_lp(complete_graph(4)) == Rational(4));
    CHECK(fractional_chromatic_lp(empty_graph(3)) == Rational(1));
    CHECK(fractional_chromatic_lp(path_graph(4)) == Rational(2));
}

TEST_CASE("conditional entropy of f given messages")
{
    const auto gt = greater_instance();
    const std::vector<int> flags{1, 0, 0};
    CHECK(conditional_entropy_of_f(gt, 1, flags, flags) == doctest::Approx(1.0 / 3.0));
    const std::vector<int> identity{0, 1, 2};
    CHECK(conditional_entropy_of_f(gt, 1, identity, identity) == 0.0);
    const std::vector<int> one{0, 0, 0};
    CHECK(conditional_entropy_of_f(gt, 1, one, one) == doctest::Approx(1.0));
}

}
