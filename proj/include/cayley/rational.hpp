#pragma once

// Exact rational arithmetic for coupling constants and energies.
// Phase-region membership and energy-gap computations decide ties on
// hyperplanes, so all comparisons happen in exact arithmetic; floating
// point only enters when a value is handed to the Gibbs exponentials.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace cayley {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "-1", "3/2", "-0.25" (optionally signed; fraction or decimal).
inline Rational parse_rational(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational: '" + text + "'");
    };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return fail();

    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        pos = 1;
    }
    auto digits = [&](std::size_t from, std::size_t to) -> BigInt {
        if (from >= to) fail();
        BigInt v = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };

    std::size_t slash = s.find('/', pos);
    std::size_t dot = s.find('.', pos);
    Rational value;
    if (slash != std::string::npos) {
        if (dot != std::string::npos) fail();
        BigInt num = digits(pos, slash);
        BigInt den = digits(slash + 1, s.size());
        if (den == 0) fail();
        value = Rational(num, den);
    } else if (dot != std::string::npos) {
        BigInt whole = (dot == pos) ? BigInt(0) : digits(pos, dot);
        BigInt frac = digits(dot + 1, s.size());
        BigInt scale = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
        value = Rational(whole * scale + frac, scale);
    } else {
        value = Rational(digits(pos, s.size()));
    }
    return negative ? -value : value;
}

// "p" for integers, "p/q" otherwise; a stable key for diffable output.
inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace cayley
