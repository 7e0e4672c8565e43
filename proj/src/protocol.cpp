#include "zefc/protocol.hpp"

#include "zefc/entropy.hpp"
#include "zefc/errors.hpp"
#include "zefc/graphs.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace zefc {

using nlohmann::json;

namespace {

int max_color(std::span<const int> colors)
{
    int k = 0;
    for (int c : colors) k = std::max(k, c + 1);
    return k;
}

} // namespace

int Scheme::colors_a() const { return max_color(enc_a); }
int Scheme::colors_b() const { return max_color(enc_b); }

int Scheme::colors_c() const
{
    int k = 0;
    for (const auto& [pair, c] : enc_c) k = std::max(k, c + 1);
    return k;
}

std::vector<std::string> huffman_code(std::span<const Rational> probs)
{
    const std::size_t k = probs.size();
    std::vector<std::string> code(k);
    if (k == 0) return code;
    if (k == 1) {
        code[0] = "0";
        return code;
    }
    struct Node {
        Rational prob;
        std::size_t min_id;
        std::vector<std::size_t> leaves;
    };
    std::vector<Node> pool;
    for (std::size_t i = 0; i < k; ++i) pool.push_back({probs[i], i, {i}});

    auto lighter = [](const Node& a, const Node& b) {
        return a.prob < b.prob || (a.prob == b.prob && a.min_id < b.min_id);
    };
    while (pool.size() > 1) {
        std::sort(pool.begin(), pool.end(), lighter);
        Node first = std::move(pool[0]);
        Node second = std::move(pool[1]);
        pool.erase(pool.begin(), pool.begin() + 2);
        for (auto leaf : first.leaves) code[leaf].insert(code[leaf].begin(), '0');
        for (auto leaf : second.leaves) code[leaf].insert(code[leaf].begin(), '1');
        Node merged{first.prob + second.prob, std::min(first.min_id, second.min_id), std::move(first.leaves)};
        merged.leaves.insert(merged.leaves.end(), second.leaves.begin(), second.leaves.end());
        pool.push_back(std::move(merged));
    }
    return code;
}

bool is_prefix_free(std::span<const std::string> code)
{
    std::vector<std::string> sorted(code.begin(), code.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& word : sorted) {
        if (word.empty() || word.find_first_not_of("01") != std::string::npos) return false;
    }
    // A prefix sorts immediately before some word it prefixes.
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].compare(0, sorted[i - 1].size(), sorted[i - 1]) == 0) return false;
    }
    return true;
}

double kraft_sum(std::span<const std::string> code)
{
    double total = 0.0;
    for (const auto& word : code) total += std::ldexp(1.0, -static_cast<int>(word.size()));
    return total;
}

std::vector<Rational> color_distribution_a(const ProblemInstance& inst, const Scheme& scheme)
{
    const auto px = product_distribution(marginals(inst).x, scheme.n);
    std::vector<Rational> dist(static_cast<std::size_t>(scheme.colors_a()), Rational(0));
    for (std::size_t i = 0; i < px.size(); ++i) dist[scheme.enc_a[i]] += px[i];
    return dist;
}

std::vector<Rational> color_distribution_b(const ProblemInstance& inst, const Scheme& scheme)
{
    const auto py = product_distribution(marginals(inst).y, scheme.n);
    std::vector<Rational> dist(static_cast<std::size_t>(scheme.colors_b()), Rational(0));
    for (std::size_t i = 0; i < py.size(); ++i) dist[scheme.enc_b[i]] += py[i];
    return dist;
}

std::vector<int> relay_colors(const ProblemInstance& inst, const Scheme& scheme, const std::vector<SupportBlock>& blocks)
{
    std::vector<int> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
        const std::pair key{scheme.enc_a[b.x_block], scheme.enc_b[b.y_block]};
        auto it = scheme.enc_c.find(key);
        if (it == scheme.enc_c.end()) {
            throw ValidationError("relay map has no entry for reachable color pair (" + std::to_string(key.first) + ","
                                  + std::to_string(key.second) + ") from block " + describe_block(inst, b));
        }
        out.push_back(it->second);
    }
    return out;
}

std::vector<Rational> color_distribution_c(const ProblemInstance& inst, const Scheme& scheme, std::size_t budget)
{
    const auto blocks = support_blocks(inst, scheme.n, budget);
    const auto relay = relay_colors(inst, scheme, blocks);
    std::vector<Rational> dist(static_cast<std::size_t>(scheme.colors_c()), Rational(0));
    for (std::size_t i = 0; i < blocks.size(); ++i) dist[relay[i]] += blocks[i].prob;
    return dist;
}

namespace {

void check_shape(const ProblemInstance& inst, const Scheme& scheme)
{
    if (scheme.n < 1) throw ValidationError("scheme block length must be positive");
    if (scheme.enc_a.size() != checked_power(inst.size_x(), scheme.n, SIZE_MAX)
        || scheme.enc_b.size() != checked_power(inst.size_y(), scheme.n, SIZE_MAX))
        throw ValidationError("scheme encoders must be total on X^n and Y^n");
    auto negative = [](int c) { return c < 0; };
    if (std::any_of(scheme.enc_a.begin(), scheme.enc_a.end(), negative)
        || std::any_of(scheme.enc_b.begin(), scheme.enc_b.end(), negative))
        throw ValidationError("colors must be non-negative");
    for (const auto& [pair, c] : scheme.enc_c) {
        if (c < 0) throw ValidationError("colors must be non-negative");
    }
}

void check_code(const std::vector<std::string>& code, int colors, const char* name)
{
    if (code.empty()) return;
    if (code.size() != static_cast<std::size_t>(colors))
        throw ValidationError(std::string(name) + " needs one codeword per color");
    if (!is_prefix_free(code)) throw ValidationError(std::string(name) + " is not a prefix-free binary code");
}

} // namespace

void assign_huffman_codes(const ProblemInstance& inst, Scheme& scheme, std::size_t budget)
{
    check_shape(inst, scheme);
    if (scheme.code_a.empty()) scheme.code_a = huffman_code(color_distribution_a(inst, scheme));
    if (scheme.code_b.empty()) scheme.code_b = huffman_code(color_distribution_b(inst, scheme));
    if (scheme.code_c.empty()) scheme.code_c = huffman_code(color_distribution_c(inst, scheme, budget));
    check_code(scheme.code_a, scheme.colors_a(), "code_a");
    check_code(scheme.code_b, scheme.colors_b(), "code_b");
    check_code(scheme.code_c, scheme.colors_c(), "code_c");
}

std::string describe_block(const ProblemInstance& inst, const SupportBlock& block)
{
    const int n = static_cast<int>(block.cells.size());
    const auto xs = decode_block(block.x_block, inst.size_x(), n);
    const auto ys = decode_block(block.y_block, inst.size_y(), n);
    return "(" + block_label(xs, inst.alphabet_x) + "," + block_label(ys, inst.alphabet_y) + ")";
}

namespace {

Scheme scheme_from_cover(const ProblemInstance& inst, const ColorCover& cover, std::size_t budget)
{
    const auto check = verify_color_cover(inst, cover.n, cover, budget);
    if (!check.ok) {
        std::string where;
        if (check.violation) {
            const auto blocks = support_blocks(inst, cover.n, budget);
            where = ": " + describe_block(inst, blocks[check.violation->first]);
            if (check.violation->second != check.violation->first)
                where += " -- " + describe_block(inst, blocks[check.violation->second]);
        }
        throw VerificationFailure("not a color cover, " + check.reason + where);
    }
    Scheme scheme;
    scheme.n = cover.n;
    scheme.enc_a = cover.c_a;
    scheme.enc_b = cover.c_b;
    scheme.enc_c = cover.theta;
    assign_huffman_codes(inst, scheme, budget);
    return scheme;
}

} // namespace

Scheme build_scheme(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b, MergeMap theta,
                    std::size_t budget)
{
    return scheme_from_cover(inst, cover_from_theta(inst, n, std::move(c_a), std::move(c_b), std::move(theta), budget), budget);
}

Scheme build_scheme_from_relay_coloring(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b,
                                        std::vector<int> c_c, std::size_t budget)
{
    return scheme_from_cover(
        inst, cover_from_relay_coloring(inst, n, std::move(c_a), std::move(c_b), std::move(c_c), budget), budget);
}

ZeroErrorVerdict verify_zero_error(const ProblemInstance& inst, const Scheme& scheme, std::size_t budget)
{
    check_shape(inst, scheme);
    const auto blocks = support_blocks(inst, scheme.n, budget);
    const auto relay = relay_colors(inst, scheme, blocks);
    const auto gxy = f_rook_graph(inst);

    std::map<int, std::vector<std::size_t>> by_color;
    for (std::size_t i = 0; i < blocks.size(); ++i) by_color[relay[i]].push_back(i);
    for (const auto& [color, members] : by_color) {
        // Each block against the earlier ones, so the reported pair is the one
        // completed first in support order.
        for (std::size_t b = 1; b < members.size(); ++b) {
            for (std::size_t a = 0; a < b; ++a) {
                const auto i = members[a];
                const auto j = members[b];
                if (adjacent_blocks(gxy, blocks[i], blocks[j])) {
                    return {false, std::pair{i, j},
                            describe_block(inst, blocks[i]) + " -- " + describe_block(inst, blocks[j])
                                + " share relay color " + std::to_string(color)};
                }
            }
        }
    }
    return {};
}

DecoderTables build_decoders(const ProblemInstance& inst, const Scheme& scheme, std::size_t budget)
{
    check_shape(inst, scheme);
    const auto blocks = support_blocks(inst, scheme.n, budget);
    const auto relay = relay_colors(inst, scheme, blocks);
    DecoderTables tables;
    auto insert = [&](auto& table, std::size_t own, std::size_t i, char node) {
        auto [it, inserted] = table.try_emplace({own, relay[i]}, blocks[i].f);
        if (!inserted && it->second != blocks[i].f) {
            throw VerificationFailure(std::string("decoder at ") + node + " is ambiguous for relay color "
                                      + std::to_string(relay[i]) + " at block " + describe_block(inst, blocks[i]));
        }
    };
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        insert(tables.psi_a, blocks[i].x_block, i, 'A');
        insert(tables.psi_b, blocks[i].y_block, i, 'B');
    }
    return tables;
}

RateTriple measure_rates_exact(const ProblemInstance& inst, const Scheme& scheme, std::size_t budget)
{
    Scheme s = scheme;
    assign_huffman_codes(inst, s, budget);
    auto expected = [](const std::vector<Rational>& dist, const std::vector<std::string>& code) {
        Rational total = 0;
        for (std::size_t c = 0; c < dist.size(); ++c) total += dist[c] * static_cast<long long>(code[c].size());
        return total;
    };
    const Rational n = s.n;
    return {to_double(expected(color_distribution_a(inst, s), s.code_a) / n),
            to_double(expected(color_distribution_b(inst, s), s.code_b) / n),
            to_double(expected(color_distribution_c(inst, s, budget), s.code_c) / n)};
}

SimulationResult simulate_rates(const ProblemInstance& inst, const Scheme& scheme, std::size_t blocks,
                                std::uint64_t seed, const DecoderTables* decoders)
{
    Scheme s = scheme;
    assign_huffman_codes(inst, s, SIZE_MAX);
    const auto sup = support(inst);
    std::vector<double> cumulative;
    Rational running = 0;
    for (const auto& c : sup.pairs) {
        running += inst.p(c.x, c.y);
        cumulative.push_back(to_double(running));
    }

    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
    };

    SimulationResult result;
    result.blocks = blocks;
    double sum[3] = {0, 0, 0};
    double sum_sq[3] = {0, 0, 0};
    std::vector<int> f(static_cast<std::size_t>(s.n));
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t xb = 0;
        std::size_t yb = 0;
        for (int i = 0; i < s.n; ++i) {
            const auto& cell = sup.pairs[draw()];
            xb = xb * inst.size_x() + cell.x;
            yb = yb * inst.size_y() + cell.y;
            f[static_cast<std::size_t>(i)] = inst.f(cell.x, cell.y);
        }
        const int ca = s.enc_a[xb];
        const int cb = s.enc_b[yb];
        auto it = s.enc_c.find({ca, cb});
        if (it == s.enc_c.end()) throw ValidationError("relay map has no entry for a sampled color pair");
        const int cc = it->second;
        const double len[3] = {static_cast<double>(s.code_a[ca].size()), static_cast<double>(s.code_b[cb].size()),
                               static_cast<double>(s.code_c[cc].size())};
        for (int k = 0; k < 3; ++k) {
            sum[k] += len[k];
            sum_sq[k] += len[k] * len[k];
        }
        if (decoders) {
            auto da = decoders->psi_a.find({xb, cc});
            auto db = decoders->psi_b.find({yb, cc});
            if (da == decoders->psi_a.end() || db == decoders->psi_b.end() || da->second != f || db->second != f)
                ++result.decode_errors;
        }
    }
    double mean[3] = {0, 0, 0};
    double se[3] = {0, 0, 0};
    if (blocks > 0) {
        const double count = static_cast<double>(blocks);
        for (int k = 0; k < 3; ++k) {
            mean[k] = sum[k] / count;
            const double var = blocks > 1 ? std::max(0.0, (sum_sq[k] - count * mean[k] * mean[k]) / (count - 1)) : 0.0;
            se[k] = std::sqrt(var / count);
        }
    }
    result.mean = {mean[0] / s.n, mean[1] / s.n, mean[2] / s.n};
    result.std_error = {se[0] / s.n, se[1] / s.n, se[2] / s.n};
    return result;
}

RelayVerdict relay_computability(const ProblemInstance& inst, const Scheme& scheme, std::size_t budget)
{
    const auto verdict = verify_zero_error(inst, scheme, budget);
    if (!verdict.ok) throw VerificationFailure("scheme is not zero-error: " + verdict.description);

    const auto blocks = support_blocks(inst, scheme.n, budget);
    std::map<std::pair<int, int>, std::vector<int>> seen;
    RelayVerdict out;
    for (const auto& b : blocks) {
        const std::pair key{scheme.enc_a[b.x_block], scheme.enc_b[b.y_block]};
        auto [it, inserted] = seen.try_emplace(key, b.f);
        if (!inserted && it->second != b.f && out.computable) {
            out.computable = false;
            out.ambiguous_messages = key;
        }
    }
    out.residual = out.computable ? 0.0 : conditional_entropy_of_f(inst, scheme.n, scheme.enc_a, scheme.enc_b, budget);
    return out;
}

namespace {

std::size_t parse_block(const json& entry, const std::vector<std::string>& alphabet, int n, const char* what)
{
    if (!entry.is_object() || !entry.contains("block") || !entry.at("block").is_array())
        throw ValidationError(std::string(what) + " entries need a 'block' array");
    const auto& arr = entry.at("block");
    if (arr.size() != static_cast<std::size_t>(n))
        throw ValidationError(std::string(what) + " block has length " + std::to_string(arr.size()) + ", expected " + std::to_string(n));
    std::vector<std::size_t> symbols;
    for (const auto& v : arr) {
        const auto label = v.is_string() ? v.get<std::string>() : v.dump();
        auto it = std::find(alphabet.begin(), alphabet.end(), label);
        if (it == alphabet.end()) throw ValidationError(std::string(what) + " uses unknown symbol '" + label + "'");
        symbols.push_back(static_cast<std::size_t>(it - alphabet.begin()));
    }
    return encode_block(symbols, alphabet.size());
}

int parse_color(const json& entry, const char* key)
{
    if (!entry.contains(key) || !entry.at(key).is_number_integer())
        throw ValidationError(std::string("missing integer '") + key + "'");
    const auto c = entry.at(key).get<long long>();
    if (c < 0 || c > 1'000'000) throw ValidationError(std::string("color '") + key + "' out of range");
    return static_cast<int>(c);
}

std::vector<int> parse_encoder(const json& doc, const char* key, const std::vector<std::string>& alphabet, int n)
{
    if (!doc.contains(key) || !doc.at(key).is_array()) throw ValidationError(std::string("missing array '") + key + "'");
    const auto count = checked_power(alphabet.size(), n, default_block_budget * 100);
    std::vector<int> enc(count, -1);
    for (const auto& entry : doc.at(key)) {
        const auto block = parse_block(entry, alphabet, n, key);
        if (enc[block] >= 0) throw ValidationError(std::string(key) + " lists a block twice");
        enc[block] = parse_color(entry, "color");
    }
    if (std::find(enc.begin(), enc.end(), -1) != enc.end())
        throw ValidationError(std::string(key) + " is not total on all blocks");
    return enc;
}

std::vector<std::string> parse_code(const json& doc, const char* key)
{
    std::vector<std::string> code;
    if (!doc.contains(key)) return code;
    if (!doc.at(key).is_array()) throw ValidationError(std::string("'") + key + "' must be an array of codewords");
    for (const auto& w : doc.at(key)) {
        if (!w.is_string()) throw ValidationError(std::string("'") + key + "' must be an array of codewords");
        code.push_back(w.get<std::string>());
    }
    return code;
}

json encoder_json(const std::vector<int>& enc, const std::vector<std::string>& alphabet, int n)
{
    json arr = json::array();
    for (std::size_t i = 0; i < enc.size(); ++i) {
        json block = json::array();
        for (auto s : decode_block(i, alphabet.size(), n)) block.push_back(alphabet[s]);
        arr.push_back({{"block", block}, {"color", enc[i]}});
    }
    return arr;
}

} // namespace

Scheme load_scheme(const ProblemInstance& inst, std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed scheme document: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("scheme document must be a JSON object");
    if (!doc.contains("n") || !doc.at("n").is_number_integer() || doc.at("n").get<long long>() < 1)
        throw ValidationError("scheme needs a positive integer 'n'");

    Scheme s;
    s.n = static_cast<int>(doc.at("n").get<long long>());
    s.enc_a = parse_encoder(doc, "enc_a", inst.alphabet_x, s.n);
    s.enc_b = parse_encoder(doc, "enc_b", inst.alphabet_y, s.n);
    if (!doc.contains("theta") || !doc.at("theta").is_array()) throw ValidationError("missing array 'theta'");
    for (const auto& entry : doc.at("theta")) {
        if (!entry.is_object()) throw ValidationError("theta entries must be objects");
        auto [it, inserted] = s.enc_c.try_emplace({parse_color(entry, "a"), parse_color(entry, "b")}, parse_color(entry, "color"));
        if (!inserted) throw ValidationError("theta lists a color pair twice");
    }
    s.code_a = parse_code(doc, "code_a");
    s.code_b = parse_code(doc, "code_b");
    s.code_c = parse_code(doc, "code_c");
    check_shape(inst, s);
    check_code(s.code_a, s.colors_a(), "code_a");
    check_code(s.code_b, s.colors_b(), "code_b");
    check_code(s.code_c, s.colors_c(), "code_c");
    return s;
}

std::string store_scheme(const ProblemInstance& inst, const Scheme& scheme)
{
    json doc;
    doc["n"] = scheme.n;
    doc["enc_a"] = encoder_json(scheme.enc_a, inst.alphabet_x, scheme.n);
    doc["enc_b"] = encoder_json(scheme.enc_b, inst.alphabet_y, scheme.n);
    json theta = json::array();
    for (const auto& [pair, c] : scheme.enc_c) theta.push_back({{"a", pair.first}, {"b", pair.second}, {"color", c}});
    doc["theta"] = theta;
    if (!scheme.code_a.empty()) doc["code_a"] = scheme.code_a;
    if (!scheme.code_b.empty()) doc["code_b"] = scheme.code_b;
    if (!scheme.code_c.empty()) doc["code_c"] = scheme.code_c;
    return doc.dump(2);
}

} // namespace zefc
