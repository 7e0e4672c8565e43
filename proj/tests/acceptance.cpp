// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "fixtures.hpp"
#include "properties.hpp"

#include "zefc/coloring.hpp"
#include "zefc/entropy.hpp"
#include "zefc/errors.hpp"
#include "zefc/graphs.hpp"
#include "zefc/protocol.hpp"
#include "zefc/region.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace zefc;
using namespace zefc::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (ok) detail << "failed: ";
            else detail << "; ";
            detail << what;
            ok = false;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(elapsed < budget_s, "took longer than " + std::to_string(budget_s) + " s");
    if (!out.ok) ++failures;
    std::printf("%s  %2d  %s  (%.2f s of %.0f s)  %s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), elapsed, budget_s,
                out.detail.str().c_str());
    std::fflush(stdout);
}

bool is_cycle(const Graph& g, std::size_t n)
{
    if (g.order() != n || g.size() != n || !g.is_connected()) return false;
    for (std::size_t v = 0; v < n; ++v)
        if (g.degree(v) != 2) return false;
    return true;
}

std::vector<int> class_sizes(const Coloring& c)
{
    std::vector<int> sizes(static_cast<std::size_t>(c.num_colors()), 0);
    for (int color : c.colors) ++sizes[static_cast<std::size_t>(color)];
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Slack between a built scheme's exact relay rate and its relay color entropy.
bool relay_rate_within_slack(const ProblemInstance& inst, const Scheme& scheme)
{
    const double rc = measure_rates_exact(inst, scheme).r_c;
    const double hc = entropy(color_distribution_c(inst, scheme));
    return rc <= hc / scheme.n + 1.0 / scheme.n + 1e-12;
}

ProblemInstance tiny_instance(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> weight(1, 5);
    std::uniform_int_distribution<int> value(0, 1);
    std::uniform_int_distribution<int> hole(0, 3);
    const int empty = hole(rng);
    std::vector<long long> w(4);
    long long total = 0;
    for (int i = 0; i < 4; ++i) total += (w[i] = i == empty ? 0 : weight(rng));
    std::vector<std::vector<Rational>> pmf(2, std::vector<Rational>(2));
    std::vector<std::vector<std::string>> f(2, std::vector<std::string>(2));
    for (int i = 0; i < 4; ++i) {
        pmf[i / 2][i % 2] = Rational(w[i], total);
        f[i / 2][i % 2] = std::to_string(value(rng));
    }
    return make_instance(labels(2), labels(2), pmf, f);
}

} // namespace

int main()
{
    criterion(1, "equality instance: G_XY^f is C10, both confusability graphs are C5", 1, [](Outcome& o) {
        const auto inst = equality_instance();
        const auto gxy = f_rook_graph(inst);
        o.require(is_cycle(gxy, 10), "G_XY^f is not a 10-cycle");
        const auto conf = confusability_graphs(inst);
        o.require(is_cycle(conf.x_given_y, 5), "G_X|Y^f is not C5");
        o.require(is_cycle(conf.y_given_x, 5), "G_Y|X^f is not C5");
    });

    criterion(2, "graph entropy: K3, edgeless, C5 against the fractional chromatic LP", 5, [](Outcome& o) {
        const double k3 = graph_entropy(uniform_probabilistic(complete_graph(3))).bits;
        o.require(std::abs(k3 - std::log2(3.0)) <= 1e-6, "K3 gave " + fmt(k3));
        const double none = graph_entropy(uniform_probabilistic(empty_graph(4))).bits;
        o.require(std::abs(none) <= 1e-12, "edgeless gave " + fmt(none));
        const auto c5 = cycle_graph(5);
        const double h = graph_entropy(uniform_probabilistic(c5)).bits;
        const auto chi_f = fractional_chromatic_lp(c5);
        o.require(chi_f == Rational(5, 2), "chi_f(C5) = " + to_string(chi_f));
        o.require(std::abs(h - std::log2(2.5)) <= 1e-4, "C5 gave " + fmt(h));
        o.require(std::abs(h - std::log2(to_double(chi_f))) <= 1e-4, "C5 disagrees with log2 chi_f");
    });

    criterion(3, "chromatic entropy: C10 is 1 bit with a bipartition, C5 is 1.5219 with classes {2,2,1}", 10,
              [](Outcome& o) {
                  const auto c10 = chromatic_entropy(uniform_probabilistic(cycle_graph(10)));
                  o.require(std::abs(c10.bits - 1.0) <= 1e-12, "C10 gave " + fmt(c10.bits));
                  o.require(c10.exact && is_coloring(cycle_graph(10), c10.witness.colors)
                                && class_sizes(c10.witness) == std::vector<int>{5, 5},
                            "C10 witness is not a bipartition");
                  const auto c5 = chromatic_entropy(uniform_probabilistic(cycle_graph(5)));
                  o.require(std::abs(c5.bits - 1.5219) <= 1e-4, "C5 gave " + fmt(c5.bits));
                  o.require(c5.exact && is_coloring(cycle_graph(5), c5.witness.colors)
                                && class_sizes(c5.witness) == std::vector<int>{1, 2, 2},
                            "C5 witness classes are not {2,2,1}");
              });

    criterion(4, "sandwich H_G(C5) <= H_chi(C5^2)/2 <= H_chi(C5) on the equality instance", 60, [](Outcome& o) {
        const auto c5 = x_confusability_probabilistic(equality_instance());
        ChromaticOptions opts;
        opts.cap_vertices = 25;
        const double hg = graph_entropy(c5).bits;
        const double half = chromatic_entropy_product(c5, 2, opts).bits;
        const double single = chromatic_entropy(c5).bits;
        o.detail << "H_G=" << fmt(hg) << " H_chi2/2=" << fmt(half) << " H_chi=" << fmt(single) << " ";
        o.require(hg <= half + 1e-9, "graph entropy above the n = 2 value");
        o.require(half <= single + 1e-12, "n = 2 value above the n = 1 value");
    });

    criterion(5, "min(X,Y): both confusability graphs are K3, corner_i1 = corner_o, tight", 5, [](Outcome& o) {
        const auto inst = min_instance();
        const auto conf = confusability_graphs(inst);
        o.require(conf.x_given_y.order() == 3 && conf.x_given_y.is_complete(), "G_X|Y^f is not K3");
        o.require(conf.y_given_x.order() == 3 && conf.y_given_x.is_complete(), "G_Y|X^f is not K3");
        const auto r = compute_bounds(inst);
        o.require(std::abs(r.corner_i1.r_a - r.corner_o.r_a) <= 1e-9 && std::abs(r.corner_i1.r_b - r.corner_o.r_b) <= 1e-9
                      && std::abs(r.corner_i1.r_c - r.corner_o.r_c) <= 1e-9,
                  "corners differ");
        o.require(r.tight, "report not tight");
    });

    criterion(6, "relay counterexample: A and B decode with zero error, relay cannot compute f", 1, [](Outcome& o) {
        const auto inst = greater_instance();
        const auto scheme = greater_scheme(inst);
        o.require(verify_zero_error(inst, scheme).ok, "scheme fails the coloring condition");
        o.require(decodable_by_tables(inst, scheme.enc_a, scheme.enc_b, scheme.enc_c), "decoder tables are ambiguous");
        const auto relay = relay_computability(inst, scheme);
        o.detail << "residual=" << fmt(relay.residual) << " ";
        o.require(!relay.computable && relay.residual > 0.0, "relay can compute f");
    });

    criterion(7, "full support: 200 instances x 20 zero-error schemes, relay residual exactly 0", 60, [](Outcome& o) {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> size(2, 3);
        std::uniform_int_distribution<int> values(2, 4);
        std::size_t schemes = 0;
        std::size_t bad = 0;
        for (int i = 0; i < 200; ++i) {
            const auto inst = random_instance(rng, size(rng), size(rng), values(rng), 0.0);
            for (int k = 0; k < 20; ++k) {
                const auto scheme = random_zero_error_scheme(rng, inst);
                ++schemes;
                if (!verify_zero_error(inst, scheme).ok) {
                    ++bad;
                    continue;
                }
                const auto relay = relay_computability(inst, scheme);
                if (!relay.computable || relay.residual != 0.0) ++bad;
            }
        }
        o.detail << schemes << " schemes ";
        o.require(bad == 0, std::to_string(bad) + " schemes with a positive residual");
    });

    criterion(8, "500 instances, all encoders with <= 3 colors: decodability <=> coloring, pair <=> split", 120,
              [](Outcome& o) {
                  std::mt19937_64 rng(4048);
                  std::uniform_int_distribution<int> size(1, 3);
                  std::uniform_real_distribution<double> holes(0.0, 0.5);
                  Agreement decode, split;
                  for (int i = 0; i < 500; ++i) {
                      const auto inst = random_instance(rng, size(rng), size(rng), 2, holes(rng));
                      const auto d = decodability_matches_coloring(inst);
                      const auto s = pair_coloring_matches_confusability(inst);
                      decode.cases += d.cases;
                      decode.mismatches += d.mismatches;
                      split.cases += s.cases;
                      split.mismatches += s.mismatches;
                  }
                  o.detail << decode.cases << " encoder triples, " << split.cases << " encoder pairs ";
                  o.require(decode.mismatches == 0, std::to_string(decode.mismatches) + " decodability mismatches");
                  o.require(split.mismatches == 0, std::to_string(split.mismatches) + " pair coloring mismatches");
              });

    criterion(9, "equality scheme rates: exact R_C = 1, simulation within 5 SE, relay slack on built schemes", 30,
              [](Outcome& o) {
                  const auto inst = equality_instance();
                  std::vector<int> identity{0, 1, 2, 3, 4};
                  std::vector<int> relay;
                  for (const auto& c : support(inst).pairs) relay.push_back(inst.f(c.x, c.y));
                  const auto scheme = build_scheme_from_relay_coloring(inst, 1, identity, identity, relay);
                  const auto exact = measure_rates_exact(inst, scheme);
                  o.require(exact.r_c == 1.0, "exact R_C = " + fmt(exact.r_c));
                  const auto sim = simulate_rates(inst, scheme, 100'000, 7);
                  auto near = [](double mean, double se, double ref) { return std::abs(mean - ref) <= 5 * se; };
                  o.require(near(sim.mean.r_a, sim.std_error.r_a, exact.r_a) && near(sim.mean.r_b, sim.std_error.r_b, exact.r_b)
                                && near(sim.mean.r_c, sim.std_error.r_c, exact.r_c),
                            "simulation outside 5 standard errors");

                  std::size_t built = 0;
                  std::size_t violations = 0;
                  auto check = [&](const ProblemInstance& in, const Scheme& s) {
                      ++built;
                      if (!relay_rate_within_slack(in, s)) ++violations;
                  };
                  check(inst, scheme);
                  check(greater_instance(), greater_scheme(greater_instance()));
                  std::mt19937_64 rng(77);
                  for (int i = 0; i < 100; ++i) {
                      const auto in = random_instance(rng, 3, 3, 3, 0.3);
                      check(in, random_zero_error_scheme(rng, in));
                  }
                  o.detail << built << " schemes ";
                  o.require(violations == 0, std::to_string(violations) + " schemes above H(c_C)/n + 1/n");
              });

    criterion(10, "frontier points at n = 1 and n = 2 dominate corner_o", 120, [](Outcome& o) {
        std::mt19937_64 rng(99);
        std::vector<std::pair<std::string, ProblemInstance>> both{
            {"constant", constant_instance(2, 2)}, {"greater", greater_instance()}};
        for (int i = 0; i < 6; ++i) both.emplace_back("tiny" + std::to_string(i), tiny_instance(rng));
        const std::vector<std::pair<std::string, ProblemInstance>> single_only{
            {"min", min_instance()}, {"equality", equality_instance()}};

        std::size_t points = 0;
        auto check = [&](const std::string& name, const ProblemInstance& inst, int n) {
            const auto outer = outer_bound(inst);
            for (const auto& r : chromatic_region_frontier(inst, n)) {
                ++points;
                o.require(dominates(r, outer, 1e-9), name + " n=" + std::to_string(n) + " point below corner_o");
            }
        };
        for (const auto& [name, inst] : both) {
            check(name, inst, 1);
            check(name, inst, 2);
        }
        for (const auto& [name, inst] : single_only) check(name, inst, 1);
        o.detail << points << " points ";
    });

    std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
