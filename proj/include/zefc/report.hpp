#pragma once

#include "zefc/coloring.hpp"
#include "zefc/graphs.hpp"
#include "zefc/protocol.hpp"
#include "zefc/region.hpp"

#include <json.hpp>

#include <iosfwd>

namespace zefc {

nlohmann::json to_json(const RateTriple& r);
nlohmann::json to_json(const RateRegionReport& report);
nlohmann::json to_json(const Graph& g);

// "n,r_a,r_b,r_c" rows for every frontier point.
void write_frontier_csv(std::ostream& out, const RateRegionReport& report);

} // namespace zefc
