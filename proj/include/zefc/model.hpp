#pragma once

#include "zefc/rational.hpp"

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zefc {

// A finite joint source (X, Y) with a function f on X x Y.
//
// Symbols are opaque labels; every computation works on indices. The pmf and
// the function table are stored row-major (row = x, column = y). Function
// values are interned: f_table holds indices into f_labels, numbered by first
// appearance in row-major order.
struct ProblemInstance {
    std::vector<std::string> alphabet_x;
    std::vector<std::string> alphabet_y;
    std::vector<Rational> pmf;
    std::vector<std::string> f_labels;
    std::vector<int> f_table;

    std::size_t size_x() const { return alphabet_x.size(); }
    std::size_t size_y() const { return alphabet_y.size(); }
    const Rational& p(std::size_t x, std::size_t y) const { return pmf[x * size_y() + y]; }
    int f(std::size_t x, std::size_t y) const { return f_table[x * size_y() + y]; }

    bool operator==(const ProblemInstance&) const = default;
};

// Builds and validates an instance. Throws ValidationError on empty or
// duplicate alphabets, shape mismatches, negative mass, or a pmf that does
// not sum to exactly 1.
ProblemInstance make_instance(std::vector<std::string> alphabet_x,
                              std::vector<std::string> alphabet_y,
                              const std::vector<std::vector<Rational>>& pmf,
                              const std::vector<std::vector<std::string>>& f);

ProblemInstance load_instance(std::string_view json_text);
ProblemInstance load_instance_file(const std::filesystem::path& path);
std::string store_instance(const ProblemInstance& inst);

struct Cell {
    std::size_t x = 0;
    std::size_t y = 0;
    auto operator<=>(const Cell&) const = default;
};

// Positive-probability cells in row-major order.
struct SupportSet {
    std::vector<Cell> pairs;

    std::size_t size() const { return pairs.size(); }
    bool contains(Cell c) const;
    // Position of c in pairs, or pairs.size() when absent.
    std::size_t index_of(Cell c) const;
};

SupportSet support(const ProblemInstance& inst);

struct Marginals {
    std::vector<Rational> x;
    std::vector<Rational> y;
};

Marginals marginals(const ProblemInstance& inst);

//
// Length-n blocks
//

// base^n, throwing CapExceeded when it exceeds cap.
std::size_t checked_power(std::size_t base, int n, std::size_t cap);

// Mixed-radix block codec; the first coordinate is the most significant digit.
std::vector<std::size_t> decode_block(std::size_t index, std::size_t base, int n);
std::size_t encode_block(std::span<const std::size_t> symbols, std::size_t base);

std::string block_label(std::span<const std::size_t> symbols, const std::vector<std::string>& alphabet);

// n-fold i.i.d. product of a distribution over an alphabet.
std::vector<Rational> product_distribution(std::span<const Rational> dist, int n);

// One block (x^n, y^n) whose every coordinate lies in the support.
struct SupportBlock {
    std::vector<std::size_t> cells;   // indices into SupportSet::pairs
    std::size_t x_block = 0;          // encode_block of x^n over |X|
    std::size_t y_block = 0;          // encode_block of y^n over |Y|
    Rational prob;
    std::vector<int> f;               // f(x_i, y_i)
};

inline constexpr std::size_t default_block_budget = 10'000;

// All |S|^n support blocks, ordered by encode_block of their cell indices.
std::vector<SupportBlock> support_blocks(const ProblemInstance& inst, int n,
                                         std::size_t budget = default_block_budget);

} // namespace zefc
