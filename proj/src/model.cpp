#include "zefc/model.hpp"

#include "zefc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace zefc {

using nlohmann::json;

namespace {

void require_unique(const std::vector<std::string>& labels, const char* what)
{
    if (labels.empty()) throw ValidationError(std::string(what) + " must not be empty");
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) throw ValidationError(std::string("duplicate symbol '") + l + "' in " + what);
    }
}

std::vector<std::string> read_labels(const json& doc, const char* key)
{
    if (!doc.contains(key)) throw ValidationError(std::string("missing key '") + key + "'");
    const auto& arr = doc.at(key);
    if (!arr.is_array()) throw ValidationError(std::string("'") + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (v.is_string()) out.push_back(v.get<std::string>());
        else if (v.is_number()) out.push_back(v.dump());
        else throw ValidationError(std::string("'") + key + "' entries must be strings");
    }
    return out;
}

Rational read_probability(const json& v)
{
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
    throw ValidationError("pmf entries must be rational strings or numbers");
}

} // namespace

ProblemInstance make_instance(std::vector<std::string> alphabet_x,
                              std::vector<std::string> alphabet_y,
                              const std::vector<std::vector<Rational>>& pmf,
                              const std::vector<std::vector<std::string>>& f)
{
    require_unique(alphabet_x, "alphabet_x");
    require_unique(alphabet_y, "alphabet_y");
    const auto nx = alphabet_x.size();
    const auto ny = alphabet_y.size();
    if (pmf.size() != nx) throw ValidationError("pmf must have one row per symbol of alphabet_x");
    if (f.size() != nx) throw ValidationError("f must have one row per symbol of alphabet_x");

    ProblemInstance inst;
    inst.alphabet_x = std::move(alphabet_x);
    inst.alphabet_y = std::move(alphabet_y);
    inst.pmf.reserve(nx * ny);
    inst.f_table.reserve(nx * ny);

    Rational total = 0;
    for (std::size_t x = 0; x < nx; ++x) {
        if (pmf[x].size() != ny) throw ValidationError("pmf row " + std::to_string(x) + " has wrong length");
        if (f[x].size() != ny) throw ValidationError("f row " + std::to_string(x) + " is missing a cell");
        for (std::size_t y = 0; y < ny; ++y) {
            if (pmf[x][y] < 0) throw ValidationError("negative probability at (" + inst.alphabet_x[x] + "," + inst.alphabet_y[y] + ")");
            total += pmf[x][y];
            inst.pmf.push_back(pmf[x][y]);

            const auto& label = f[x][y];
            auto it = std::find(inst.f_labels.begin(), inst.f_labels.end(), label);
            if (it == inst.f_labels.end()) {
                inst.f_labels.push_back(label);
                it = inst.f_labels.end() - 1;
            }
            inst.f_table.push_back(static_cast<int>(it - inst.f_labels.begin()));
        }
    }
    if (total != 1) throw ValidationError("pmf sums to " + to_string(total) + ", expected exactly 1");
    return inst;
}

ProblemInstance load_instance(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed instance document: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("instance document must be a JSON object");

    auto ax = read_labels(doc, "alphabet_x");
    auto ay = read_labels(doc, "alphabet_y");

    for (const char* key : {"pmf", "f"}) {
        if (!doc.contains(key) || !doc.at(key).is_array())
            throw ValidationError(std::string("'") + key + "' must be an array of rows");
    }
    std::vector<std::vector<Rational>> pmf;
    for (const auto& row : doc.at("pmf")) {
        if (!row.is_array()) throw ValidationError("pmf rows must be arrays");
        auto& out = pmf.emplace_back();
        for (const auto& v : row) out.push_back(read_probability(v));
    }
    std::vector<std::vector<std::string>> f;
    for (const auto& row : doc.at("f")) {
        if (!row.is_array()) throw ValidationError("f rows must be arrays");
        auto& out = f.emplace_back();
        for (const auto& v : row) {
            if (v.is_string()) out.push_back(v.get<std::string>());
            else if (v.is_number() || v.is_boolean()) out.push_back(v.dump());
            else throw ValidationError("f entries must be value labels");
        }
    }
    return make_instance(std::move(ax), std::move(ay), pmf, f);
}

ProblemInstance load_instance_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read instance file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_instance(buffer.str());
}

std::string store_instance(const ProblemInstance& inst)
{
    json doc;
    doc["alphabet_x"] = inst.alphabet_x;
    doc["alphabet_y"] = inst.alphabet_y;
    json pmf = json::array();
    json f = json::array();
    for (std::size_t x = 0; x < inst.size_x(); ++x) {
        json prow = json::array();
        json frow = json::array();
        for (std::size_t y = 0; y < inst.size_y(); ++y) {
            prow.push_back(to_string(inst.p(x, y)));
            frow.push_back(inst.f_labels[inst.f(x, y)]);
        }
        pmf.push_back(prow);
        f.push_back(frow);
    }
    doc["pmf"] = pmf;
    doc["f"] = f;
    return doc.dump(2);
}

bool SupportSet::contains(Cell c) const
{
    return std::binary_search(pairs.begin(), pairs.end(), c);
}

std::size_t SupportSet::index_of(Cell c) const
{
    auto it = std::lower_bound(pairs.begin(), pairs.end(), c);
    if (it == pairs.end() || *it != c) return pairs.size();
    return static_cast<std::size_t>(it - pairs.begin());
}

SupportSet support(const ProblemInstance& inst)
{
    SupportSet s;
    for (std::size_t x = 0; x < inst.size_x(); ++x) {
        for (std::size_t y = 0; y < inst.size_y(); ++y) {
            if (inst.p(x, y) > 0) s.pairs.push_back({x, y});
        }
    }
    return s;
}

Marginals marginals(const ProblemInstance& inst)
{
    Marginals m;
    m.x.assign(inst.size_x(), Rational(0));
    m.y.assign(inst.size_y(), Rational(0));
    for (std::size_t x = 0; x < inst.size_x(); ++x) {
        for (std::size_t y = 0; y < inst.size_y(); ++y) {
            m.x[x] += inst.p(x, y);
            m.y[y] += inst.p(x, y);
        }
    }
    return m;
}

std::size_t checked_power(std::size_t base, int n, std::size_t cap)
{
    if (n < 1) throw ValidationError("block length must be positive");
    std::size_t result = 1;
    for (int i = 0; i < n; ++i) {
        if (base != 0 && result > cap / base) {
            throw CapExceeded(std::to_string(base) + "^" + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
        }
        result *= base;
    }
    if (result > cap) {
        throw CapExceeded(std::to_string(base) + "^" + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
    }
    return result;
}

std::vector<std::size_t> decode_block(std::size_t index, std::size_t base, int n)
{
    std::vector<std::size_t> out(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = index % base;
        index /= base;
    }
    return out;
}

std::size_t encode_block(std::span<const std::size_t> symbols, std::size_t base)
{
    std::size_t index = 0;
    for (auto s : symbols) index = index * base + s;
    return index;
}

std::string block_label(std::span<const std::size_t> symbols, const std::vector<std::string>& alphabet)
{
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ',';
        out += alphabet[symbols[i]];
    }
    return symbols.size() == 1 ? out : "(" + out + ")";
}

std::vector<Rational> product_distribution(std::span<const Rational> dist, int n)
{
    const std::size_t count = checked_power(dist.size(), n, std::numeric_limits<std::size_t>::max());
    std::vector<Rational> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rational p = 1;
        for (auto s : decode_block(i, dist.size(), n)) p *= dist[s];
        out[i] = p;
    }
    return out;
}

std::vector<SupportBlock> support_blocks(const ProblemInstance& inst, int n, std::size_t budget)
{
    const auto sup = support(inst);
    const std::size_t count = checked_power(sup.size(), n, budget);
    std::vector<SupportBlock> blocks;
    blocks.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SupportBlock b;
        b.cells = decode_block(i, sup.size(), n);
        b.prob = 1;
        for (auto c : b.cells) {
            const auto& cell = sup.pairs[c];
            b.x_block = b.x_block * inst.size_x() + cell.x;
            b.y_block = b.y_block * inst.size_y() + cell.y;
            b.prob *= inst.p(cell.x, cell.y);
            b.f.push_back(inst.f(cell.x, cell.y));
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

} // namespace zefc
