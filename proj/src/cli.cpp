#include "zefc/cli.hpp"

#include "zefc/coloring.hpp"
#include "zefc/entropy.hpp"
#include "zefc/errors.hpp"
#include "zefc/graphs.hpp"
#include "zefc/model.hpp"
#include "zefc/protocol.hpp"
#include "zefc/region.hpp"
#include "zefc/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace zefc::cli {

using nlohmann::json;

namespace {

struct Flags {
    std::string instance;
    std::string scheme;
    std::string out;
    std::string format;
    std::string kind = "graph";
    std::string graph = "xy";
    std::string trace;
    int n = 1;
    double tol = 1e-10;
    int max_iter = 10'000;
    std::size_t cap_vertices = 0;  // 0 keeps each module's default
    std::size_t blocks = 100'000;
    std::uint64_t seed = 7;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void emit(const Flags& flags, std::ostream& out, const std::string& text)
{
    if (flags.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(flags.out);
    if (!file) throw ValidationError("cannot write " + flags.out);
    file << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

GraphEntropyOptions entropy_options(const Flags& flags)
{
    GraphEntropyOptions o;
    o.tol = flags.tol;
    o.max_iter = flags.max_iter;
    if (flags.cap_vertices) o.cap_vertices = flags.cap_vertices;
    return o;
}

BoundOptions bound_options(const Flags& flags) { return {entropy_options(flags)}; }

int cmd_graphs(const Flags& flags, std::ostream& out)
{
    const auto inst = load_instance_file(flags.instance);
    const auto conf = confusability_graphs(inst);
    const std::vector<std::pair<std::string, const Graph*>> graphs{
        {"g_xy_f", nullptr}, {"g_x_given_y_f", &conf.x_given_y}, {"g_y_given_x_f", &conf.y_given_x}};
    const auto gxy = f_rook_graph(inst);
    auto graph_of = [&](const auto& entry) -> const Graph& { return entry.second ? *entry.second : gxy; };

    if (!flags.out.empty()) {
        std::filesystem::create_directories(flags.out);
        for (const auto& entry : graphs) {
            std::ofstream edges(std::filesystem::path(flags.out) / (entry.first + ".edges"));
            write_edge_list(edges, graph_of(entry));
            std::ofstream dot(std::filesystem::path(flags.out) / (entry.first + ".dot"));
            write_dot(dot, graph_of(entry), entry.first);
            if (!edges || !dot) throw ValidationError("cannot write graph files under " + flags.out);
        }
    }
    if (flags.format == "dot") {
        for (const auto& entry : graphs) write_dot(out, graph_of(entry), entry.first);
    } else if (flags.format == "csv") {
        out << "graph,u,v\n";
        for (const auto& entry : graphs) {
            const auto& g = graph_of(entry);
            for (auto [u, v] : g.edges()) out << entry.first << ',' << g.label(u) << ',' << g.label(v) << '\n';
        }
    } else {
        json doc;
        for (const auto& entry : graphs) doc[entry.first] = to_json(graph_of(entry));
        out << dump(doc);
    }
    return success;
}

int cmd_entropy(const Flags& flags, std::ostream& out)
{
    const auto inst = load_instance_file(flags.instance);
    ProbabilisticGraph pg;
    if (flags.graph == "xy") pg = f_rook_probabilistic(inst);
    else if (flags.graph == "x") pg = x_confusability_probabilistic(inst);
    else if (flags.graph == "y") pg = y_confusability_probabilistic(inst);
    else throw ValidationError("--graph must be one of xy, x, y");

    json doc{{"graph", flags.graph}, {"kind", flags.kind}};
    if (flags.kind == "chromatic") {
        ChromaticOptions o;
        if (flags.cap_vertices) o.cap_vertices = flags.cap_vertices;
        const auto r = chromatic_entropy_product(pg, flags.n, o);
        doc["n"] = flags.n;
        doc["bits_per_symbol"] = r.bits;
        doc["exact"] = r.exact;
        doc["witness"] = r.witness.colors;
    } else if (flags.kind == "graph") {
        auto o = entropy_options(flags);
        std::ofstream trace;
        if (!flags.trace.empty()) {
            trace.open(flags.trace);
            if (!trace) throw ValidationError("cannot write " + flags.trace);
            trace << "iter,objective_bits\n";
            trace.precision(17);
            o.trace = [&trace](int it, double v) { trace << it << ',' << v << '\n'; };
        }
        const auto r = graph_entropy(pg, o);
        doc["bits"] = r.bits;
        doc["lower_bound"] = r.lower_bound;
        doc["converged"] = r.converged;
        doc["iterations"] = r.iterations;
        json sets = json::array();
        for (const auto& s : r.design.sets) {
            json labels = json::array();
            for (auto v : s) labels.push_back(pg.graph.label(v));
            sets.push_back(labels);
        }
        doc["independent_sets"] = sets;
    } else {
        throw ValidationError("--kind must be chromatic or graph");
    }
    emit(flags, out, dump(doc));
    return success;
}

int cmd_bounds(const Flags& flags, std::ostream& out)
{
    const auto inst = load_instance_file(flags.instance);
    emit(flags, out, dump(to_json(compute_bounds(inst, bound_options(flags)))));
    return success;
}

int cmd_region(const Flags& flags, std::ostream& out)
{
    const auto inst = load_instance_file(flags.instance);
    auto report = compute_bounds(inst, bound_options(flags));
    for (int k = 1; k <= flags.n; ++k) report.frontier.push_back({k, chromatic_region_frontier(inst, k)});
    if (flags.format == "csv") {
        std::ostringstream csv;
        write_frontier_csv(csv, report);
        emit(flags, out, csv.str());
    } else {
        emit(flags, out, dump(to_json(report)));
    }
    return success;
}

Scheme scheme_for(const Flags& flags, const ProblemInstance& inst)
{
    if (flags.scheme.empty()) throw ValidationError("--scheme is required");
    auto scheme = load_scheme(inst, read_file(flags.scheme));
    assign_huffman_codes(inst, scheme);
    return scheme;
}

json violation_json(const ZeroErrorVerdict& v)
{
    return v.ok ? json(nullptr) : json(v.description);
}

int cmd_verify(const Flags& flags, std::ostream& out)
{
    const auto inst = load_instance_file(flags.instance);
    const auto scheme = scheme_for(flags, inst);
    const auto verdict = verify_zero_error(inst, scheme);
    json doc{{"n", scheme.n}, {"zero_error", verdict.ok}, {"violation", violation_json(verdict)}};
    if (verdict.ok) {
        const auto tables = build_decoders(inst, scheme);
        doc["decoder_entries"] = {{"a", tables.psi_a.size()}, {"b", tables.psi_b.size()}};
    }
    emit(flags, out, dump(doc));
    return verdict.ok ? success : verification_failure;
}

int cmd_simulate(const Flags& flags, std::ostream& out)
{
    const auto inst = load_instance_file(flags.instance);
    const auto scheme = scheme_for(flags, inst);
    const auto verdict = verify_zero_error(inst, scheme);
    json doc{{"n", scheme.n}, {"zero_error", verdict.ok}, {"violation", violation_json(verdict)}};
    doc["exact"] = to_json(measure_rates_exact(inst, scheme));
    std::optional<DecoderTables> tables;
    if (verdict.ok) tables = build_decoders(inst, scheme);
    const auto sim = simulate_rates(inst, scheme, flags.blocks, flags.seed, tables ? &*tables : nullptr);
    doc["simulated"] = {{"blocks", sim.blocks}, {"seed", flags.seed}, {"mean", to_json(sim.mean)},
                        {"std_error", to_json(sim.std_error)}};
    if (verdict.ok) {
        doc["simulated"]["decode_errors"] = sim.decode_errors;
        const auto relay = relay_computability(inst, scheme);
        doc["relay"] = {{"computable", relay.computable}, {"residual_bits", relay.residual}};
    }
    emit(flags, out, dump(doc));
    return verdict.ok ? success : verification_failure;
}

int cmd_check_relay(const Flags& flags, std::ostream& out)
{
    const auto inst = load_instance_file(flags.instance);
    const auto scheme = scheme_for(flags, inst);
    const auto relay = relay_computability(inst, scheme);
    json doc{{"n", scheme.n}, {"computable", relay.computable}, {"residual_bits", relay.residual}};
    doc["ambiguous_messages"] = relay.ambiguous_messages
                                    ? json{relay.ambiguous_messages->first, relay.ambiguous_messages->second}
                                    : json(nullptr);
    emit(flags, out, dump(doc));
    return success;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Zero-error function computation over a relay: graphs, entropies, rate bounds and schemes", "zefc"};
    app.require_subcommand(1);
    Flags flags;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("instance", flags.instance, "Instance JSON document")->required();
        sub->add_option("--out", flags.out, "Write the report here instead of stdout");
        sub->add_option("--tol", flags.tol, "Relative objective change for the graph entropy solver")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", flags.max_iter, "Iteration limit for the graph entropy solver")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cap-vertices", flags.cap_vertices, "Override the vertex cap of exact searches")
            ->check(CLI::PositiveNumber);
    };
    auto add_scheme = [&](CLI::App* sub) {
        sub->add_option("--scheme", flags.scheme, "Scheme JSON document")->required();
    };

    std::map<CLI::App*, std::function<int(const Flags&, std::ostream&)>> handlers;

    auto* graphs = app.add_subcommand("graphs", "Emit G_XY^f and both confusability graphs");
    add_common(graphs);
    graphs->add_option("--format", flags.format, "json, csv or dot")->check(CLI::IsMember({"json", "csv", "dot"}));
    handlers[graphs] = cmd_graphs;

    auto* ent = app.add_subcommand("entropy", "Chromatic or graph entropy of one of the graphs");
    add_common(ent);
    ent->add_option("--kind", flags.kind, "chromatic or graph")->check(CLI::IsMember({"chromatic", "graph"}));
    ent->add_option("--graph", flags.graph, "xy, x or y")->check(CLI::IsMember({"xy", "x", "y"}));
    ent->add_option("--n", flags.n, "OR power for chromatic entropy")->check(CLI::PositiveNumber);
    ent->add_option("--trace", flags.trace, "CSV file for per-iteration graph entropy objective");
    handlers[ent] = cmd_entropy;

    auto* bounds = app.add_subcommand("bounds", "Inner and outer bound corners");
    add_common(bounds);
    handlers[bounds] = cmd_bounds;

    auto* region = app.add_subcommand("region", "Bounds plus chromatic entropy region frontiers for n = 1..N");
    add_common(region);
    region->add_option("--n", flags.n, "Largest block length")->check(CLI::PositiveNumber);
    region->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    handlers[region] = cmd_region;

    auto* verify = app.add_subcommand("verify", "Zero-error verification of a scheme");
    add_common(verify);
    add_scheme(verify);
    handlers[verify] = cmd_verify;

    auto* simulate = app.add_subcommand("simulate", "Exact and simulated rates of a scheme");
    add_common(simulate);
    add_scheme(simulate);
    simulate->add_option("--blocks", flags.blocks, "Number of simulated blocks");
    simulate->add_option("--seed", flags.seed, "Generator seed");
    handlers[simulate] = cmd_simulate;

    auto* relay = app.add_subcommand("check-relay", "Whether the relay's inputs determine f");
    add_common(relay);
    add_scheme(relay);
    handlers[relay] = cmd_check_relay;

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : validation_error;
    }

    try {
        for (auto* sub : app.get_subcommands()) return handlers.at(sub)(flags, out);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return validation_error;
    } catch (const VerificationFailure& e) {
        err << "verification failure: " << e.what() << '\n';
        return verification_failure;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return cap_exceeded;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    }
    return validation_error;
}

} // namespace zefc::cli
