#pragma once

#include "zefc/model.hpp"
#include "zefc/protocol.hpp"

#include <random>
#include <string>
#include <vector>

namespace zefc::testing {

inline std::vector<std::string> labels(int n, int first = 0)
{
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(first + i));
    return out;
}

// X, Y in {0..4}, p = 1/10 on y = x or y = x+1 mod 5, f = [x == y].
inline ProblemInstance equality_instance()
{
    std::vector<std::vector<Rational>> pmf(5, std::vector<Rational>(5, Rational(0)));
    std::vector<std::vector<std::string>> f(5, std::vector<std::string>(5));
    for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5; ++y) {
            if (y == x || y == (x + 1) % 5) pmf[x][y] = Rational(1, 10);
            f[x][y] = x == y ? "1" : "0";
        }
    }
    return make_instance(labels(5), labels(5), pmf, f);
}

// min(X, Y) with X, Y uniform on {0,1,2}, full support.
inline ProblemInstance min_instance()
{
    std::vector<std::vector<Rational>> pmf(3, std::vector<Rational>(3, Rational(1, 9)));
    std::vector<std::vector<std::string>> f(3, std::vector<std::string>(3));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) f[x][y] = std::to_string(std::min(x, y));
    return make_instance(labels(3), labels(3), pmf, f);
}

// X, Y in {1,2,3}, p = 1/6 off the diagonal, f = [x > y].
inline ProblemInstance greater_instance()
{
    std::vector<std::vector<Rational>> pmf(3, std::vector<Rational>(3, Rational(0)));
    std::vector<std::vector<std::string>> f(3, std::vector<std::string>(3));
    for (int x = 1; x <= 3; ++x) {
        for (int y = 1; y <= 3; ++y) {
            if (x != y) pmf[x - 1][y - 1] = Rational(1, 6);
            f[x - 1][y - 1] = x > y ? "1" : "0";
        }
    }
    return make_instance(labels(3, 1), labels(3, 1), pmf, f);
}

// The relay counterexample encoders: A and B flag symbol 1, the relay
// reports whether the flags agree.
inline Scheme greater_scheme(const ProblemInstance& inst)
{
    MergeMap theta;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) theta[{a, b}] = a == b ? 1 : 0;
    return build_scheme(inst, 1, {1, 0, 0}, {1, 0, 0}, theta);
}

inline ProblemInstance constant_instance(int nx, int ny)
{
    std::vector<std::vector<Rational>> pmf(nx, std::vector<Rational>(ny, Rational(1, nx * ny)));
    std::vector<std::vector<std::string>> f(nx, std::vector<std::string>(ny, "c"));
    return make_instance(labels(nx), labels(ny), pmf, f);
}

inline ProblemInstance uniform_instance(int nx, int ny, const std::vector<std::vector<std::string>>& f)
{
    std::vector<std::vector<Rational>> pmf(nx, std::vector<Rational>(ny, Rational(1, nx * ny)));
    return make_instance(labels(nx), labels(ny), pmf, f);
}

// Random small instance. Cell weights are integers in [1, 6], or zero with
// probability zero_rate (one cell is always kept positive).
inline ProblemInstance random_instance(std::mt19937_64& rng, int nx, int ny, int nz, double zero_rate)
{
    std::uniform_int_distribution<int> weight(1, 6);
    std::uniform_int_distribution<int> value(0, nz - 1);
    std::bernoulli_distribution zero(zero_rate);
    std::vector<std::vector<long long>> w(nx, std::vector<long long>(ny));
    long long total = 0;
    for (auto& row : w) {
        for (auto& cell : row) {
            cell = zero(rng) ? 0 : weight(rng);
            total += cell;
        }
    }
    if (total == 0) {
        w[0][0] = 1;
        total = 1;
    }
    std::vector<std::vector<Rational>> pmf(nx, std::vector<Rational>(ny));
    std::vector<std::vector<std::string>> f(nx, std::vector<std::string>(ny));
    for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) {
            pmf[x][y] = Rational(w[x][y], total);
            f[x][y] = "v" + std::to_string(value(rng));
        }
    }
    return make_instance(labels(nx), labels(ny), pmf, f);
}

} // namespace zefc::testing
