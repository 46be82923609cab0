#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "parrondo/errors.hpp"

namespace parrondo {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps values canonical: lowest terms,
// positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational r = 1;
    Rational b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

// Accepts "p", "-p", "p/q" with arbitrary-precision integer parts.
inline Rational parse_rational(std::string_view text) {
    const auto fail = [&] {
        throw InputError("invalid rational literal: '" + std::string(text) + "'");
    };
    if (text.empty()) fail();
    auto check_int = [&](std::string_view part) {
        if (part.empty()) fail();
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) fail();
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) fail();
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        check_int(text);
        return Rational(BigInt(std::string(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    BigInt d{std::string(den)};
    if (d == 0) fail();
    return Rational(BigInt(std::string(num)), d);
}

inline std::string format_rational(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

}  // namespace parrondo
