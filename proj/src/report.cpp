#include "zefc/report.hpp"

#include <ostream>

namespace zefc {

using nlohmann::json;

json to_json(const RateTriple& r) { return {{"r_a", r.r_a}, {"r_b", r.r_b}, {"r_c", r.r_c}}; }

json to_json(const RateRegionReport& report)
{
    json doc;
    doc["corner_i1"] = to_json(report.corner_i1);
    doc["corner_i2"] = to_json(report.corner_i2);
    doc["corner_o"] = to_json(report.corner_o);
    doc["tight"] = report.tight;
    doc["converged"] = report.converged;
    json levels = json::array();
    for (const auto& level : report.frontier) {
        json points = json::array();
        for (const auto& p : level.points) points.push_back(to_json(p));
        levels.push_back({{"n", level.n}, {"points", points}});
    }
    doc["frontier"] = levels;
    return doc;
}

json to_json(const Graph& g)
{
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
    return {{"vertices", g.labels()}, {"edges", edges}};
}

void write_frontier_csv(std::ostream& out, const RateRegionReport& report)
{
    out << "n,r_a,r_b,r_c\n";
    const auto old = out.precision(17);
    for (const auto& level : report.frontier)
        for (const auto& p : level.points) out << level.n << ',' << p.r_a << ',' << p.r_b << ',' << p.r_c << '\n';
    out.precision(old);
}

} // namespace zefc
