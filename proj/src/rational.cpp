#include "zefc/rational.hpp"

#include "zefc/errors.hpp"

#include <cctype>

namespace zefc {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

boost::multiprecision::cpp_int parse_integer(std::string_view s)
{
    return boost::multiprecision::cpp_int(std::string(s));
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto bad = [&]() { return ValidationError("not a rational number: '" + std::string(text) + "'"); };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw bad();
        auto d = parse_integer(den);
        if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
        value = Rational(parse_integer(num), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw bad();
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) throw bad();
        boost::multiprecision::cpp_int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        boost::multiprecision::cpp_int w = whole.empty() ? 0 : parse_integer(whole);
        boost::multiprecision::cpp_int f = frac.empty() ? 0 : parse_integer(frac);
        value = Rational(w * scale + f, scale);
    } else {
        if (!all_digits(s)) throw bad();
        value = Rational(parse_integer(s));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value)
{
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

Rational sum(std::span<const Rational> values)
{
    Rational total = 0;
    for (const auto& v : values) total += v;
    return total;
}

} // namespace zefc
