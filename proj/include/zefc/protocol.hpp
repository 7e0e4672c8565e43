#pragma once

#include "zefc/coloring.hpp"
#include "zefc/model.hpp"
#include "zefc/region.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zefc {

// A length-n one-round scheme. Encoders map blocks to colors; each color is
// then sent with its codeword from the matching table.
struct Scheme {
    int n = 1;
    std::vector<int> enc_a;   // X^n block -> color
    std::vector<int> enc_b;   // Y^n block -> color
    MergeMap enc_c;           // (color_a, color_b) -> relay color
    std::vector<std::string> code_a;
    std::vector<std::string> code_b;
    std::vector<std::string> code_c;

    int colors_a() const;
    int colors_b() const;
    int colors_c() const;
};

// Binary Huffman code. The two lightest nodes merge first, ties going to the
// node holding the smallest color id; the lighter node takes the '0' branch.
// A single symbol gets the codeword "0".
std::vector<std::string> huffman_code(std::span<const Rational> probs);

bool is_prefix_free(std::span<const std::string> code);
double kraft_sum(std::span<const std::string> code);

// Color distributions induced by the product pmf.
std::vector<Rational> color_distribution_a(const ProblemInstance& inst, const Scheme& scheme);
std::vector<Rational> color_distribution_b(const ProblemInstance& inst, const Scheme& scheme);
std::vector<Rational> color_distribution_c(const ProblemInstance& inst, const Scheme& scheme,
                                           std::size_t budget = default_block_budget);

// Fills every empty code table with a Huffman code for its color distribution.
void assign_huffman_codes(const ProblemInstance& inst, Scheme& scheme, std::size_t budget = default_block_budget);

// Scheme from a color cover given by (c_A, c_B, theta). Throws
// VerificationFailure naming the violating blocks when the cover is invalid.
Scheme build_scheme(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b, MergeMap theta,
                    std::size_t budget = default_block_budget);
Scheme build_scheme_from_relay_coloring(const ProblemInstance& inst, int n, std::vector<int> c_a, std::vector<int> c_b,
                                        std::vector<int> c_c, std::size_t budget = default_block_budget);

// Relay color of each support block; ValidationError when enc_c misses a
// reachable color pair.
std::vector<int> relay_colors(const ProblemInstance& inst, const Scheme& scheme, const std::vector<SupportBlock>& blocks);

std::string describe_block(const ProblemInstance& inst, const SupportBlock& block);

struct ZeroErrorVerdict {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;  // support block indices
    std::string description;
};

// True iff enc_c o (enc_a x enc_b) colors (G_XY^f)^{OR n} on support blocks.
ZeroErrorVerdict verify_zero_error(const ProblemInstance& inst, const Scheme& scheme,
                                   std::size_t budget = default_block_budget);

// Unique f^n per (own block, relay color) over reachable support blocks.
// Unreachable combinations have no entry.
struct DecoderTables {
    std::map<std::pair<std::size_t, int>, std::vector<int>> psi_a;
    std::map<std::pair<std::size_t, int>, std::vector<int>> psi_b;
};

// VerificationFailure if some entry would be ambiguous.
DecoderTables build_decoders(const ProblemInstance& inst, const Scheme& scheme,
                             std::size_t budget = default_block_budget);

// Expected codeword lengths per symbol under the product pmf.
RateTriple measure_rates_exact(const ProblemInstance& inst, const Scheme& scheme,
                               std::size_t budget = default_block_budget);

struct SimulationResult {
    RateTriple mean;
    RateTriple std_error;
    std::size_t blocks = 0;
    std::size_t decode_errors = 0;
};

// i.i.d. support blocks drawn from a seeded generator. When decoders are
// given, every sampled block is also decoded at A and B and checked.
SimulationResult simulate_rates(const ProblemInstance& inst, const Scheme& scheme, std::size_t blocks,
                                std::uint64_t seed, const DecoderTables* decoders = nullptr);

struct RelayVerdict {
    bool computable = true;
    double residual = 0.0;  // H(f^n | M_A, M_B) in bits
    std::optional<std::pair<int, int>> ambiguous_messages;
};

// Whether (M_A, M_B) determines f^n, decided on support blocks without
// floating point. VerificationFailure when the scheme is not zero-error.
RelayVerdict relay_computability(const ProblemInstance& inst, const Scheme& scheme,
                                 std::size_t budget = default_block_budget);

// Scheme documents; see README for the layout.
Scheme load_scheme(const ProblemInstance& inst, std::string_view json_text);
std::string store_scheme(const ProblemInstance& inst, const Scheme& scheme);

} // namespace zefc
