#pragma once

// Shared random generators for the property suites. Seeds are fixed by each
// test so runs are reproducible.

#include <random>
#include <vector>

#include "parrondo/jet1d.hpp"
#include "parrondo/rational.hpp"

namespace gen {

using parrondo::Jet1D;
using parrondo::Rational;

using Rng = std::mt19937_64;

// Small random rational, numerator in [-9, 9], denominator in [1, 4].
inline Rational small_rational(Rng& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    return Rational(num(rng), den(rng));
}

inline Rational nonzero_small_rational(Rng& rng) {
    for (;;) {
        Rational q = small_rational(rng);
        if (q != 0) return q;
    }
}

// Random jet of the given order with the given multiplier.
inline Jet1D random_jet(Rng& rng, int order, const Rational& multiplier) {
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(order));
    c.push_back(multiplier);
    for (int k = 2; k <= order; ++k) c.push_back(small_rational(rng));
    return Jet1D(std::move(c));
}

inline Jet1D random_jet_pm1(Rng& rng, int order) {
    std::uniform_int_distribution<int> coin(0, 1);
    return random_jet(rng, order, Rational(coin(rng) ? 1 : -1));
}

// Jets with a guaranteed determinate verdict at the origin.
//
// Orientation preserving: x + a_m x^m + tail, first nonzero a_m at odd m with
// the requested sign. Orientation reversing: the sign of the first stability
// constant is forced through V3 = 2(-a2^2 - a3) or, at depth 2, through
// V5 = 2(2 a2^4 - 3 a2 a4 - a5) after zeroing V3.
enum class Sign { Negative, Positive };

inline Jet1D random_preserving_jet(Rng& rng, int order, Sign lead) {
    std::uniform_int_distribution<int> pick_m(1, (order - 1) / 2);
    const int m = 2 * pick_m(rng) + 1;  // odd, 3 <= m <= order
    std::vector<Rational> c(static_cast<std::size_t>(order), Rational(0));
    c[0] = 1;
    Rational amp = nonzero_small_rational(rng);
    amp = abs(amp);
    c[static_cast<std::size_t>(m - 1)] = lead == Sign::Negative ? -amp : amp;
    for (int k = m + 1; k <= order; ++k) c[static_cast<std::size_t>(k - 1)] = small_rational(rng);
    return Jet1D(std::move(c));
}

inline Jet1D random_reversing_jet(Rng& rng, int order, Sign v_sign) {
    std::uniform_int_distribution<int> depth(1, 2);
    std::vector<Rational> c(static_cast<std::size_t>(order), Rational(0));
    c[0] = -1;
    const Rational a2 = small_rational(rng);
    Rational t = abs(nonzero_small_rational(rng));
    if (v_sign == Sign::Positive) t = -t;
    c[1] = a2;
    if (depth(rng) == 1 || order < 5) {
        // V3 = -2t
        c[2] = -a2 * a2 + t;
        for (int k = 4; k <= order; ++k) c[static_cast<std::size_t>(k - 1)] = small_rational(rng);
    } else {
        // V3 = 0, V5 = -2t
        const Rational a4 = small_rational(rng);
        c[2] = -a2 * a2;
        c[3] = a4;
        c[4] = 2 * parrondo::rational_pow(a2, 4) - 3 * a2 * a4 + t;
        for (int k = 6; k <= order; ++k) c[static_cast<std::size_t>(k - 1)] = small_rational(rng);
    }
    return Jet1D(std::move(c));
}

// Jet classified LAS (sign Negative) or Repeller (sign Positive), random
// orientation.
inline Jet1D random_determinate_jet(Rng& rng, int order, Sign sign) {
    std::uniform_int_distribution<int> coin(0, 1);
    return coin(rng) ? random_preserving_jet(rng, order, sign)
                     : random_reversing_jet(rng, order, sign);
}

}  // namespace gen
