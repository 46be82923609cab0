#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parrondo/errors.hpp"
#include "parrondo/jet1d.hpp"

namespace parrondo {

enum class Stability1D {
    HyperbolicAttracting,
    HyperbolicRepelling,
    LAS,
    Repeller,
    SemiASLeft,
    SemiASRight,
    InvolutionUpToOrder,
    UndeterminedAtOrder,
};

inline const char* stability_name(Stability1D s) {
    switch (s) {
        case Stability1D::HyperbolicAttracting: return "HyperbolicAttracting";
        case Stability1D::HyperbolicRepelling: return "HyperbolicRepelling";
        case Stability1D::LAS: return "LAS";
        case Stability1D::Repeller: return "Repeller";
        case Stability1D::SemiASLeft: return "SemiASLeft";
        case Stability1D::SemiASRight: return "SemiASRight";
        case Stability1D::InvolutionUpToOrder: return "InvolutionUpToOrder";
        case Stability1D::UndeterminedAtOrder: return "UndeterminedAtOrder";
    }
    return "?";
}

inline bool is_determinate(Stability1D s) {
    return s != Stability1D::InvolutionUpToOrder && s != Stability1D::UndeterminedAtOrder;
}

/// Classification outcome. order_decided is the index of the coefficient or
/// stability constant that settled the verdict; for the undetermined kinds it
/// is the jet order, an invitation to retry with a longer jet.
struct Verdict1D {
    Stability1D kind;
    int order_decided;

    bool operator==(const Verdict1D&) const = default;
};

/// The coefficients W_j of f(f(x)) - x for an orientation-reversing jet,
/// 3 <= j <= order. v_first is the first nonzero entry, i.e. the stability
/// constant V_l that decides the verdict; its index is always odd.
struct StabilityConstants1D {
    std::vector<std::pair<int, Rational>> w_values;
    std::optional<std::pair<int, Rational>> v_first;
    bool involution_up_to_order = false;
};

inline StabilityConstants1D stability_constants(const Jet1D& f) {
    if (f.multiplier() != -1)
        throw WrongMultiplier("stability constants require multiplier -1, got " +
                              format_rational(f.multiplier()));
    const Jet1D sq = jet_square(f);
    // Structural consequences of a_1 = -1: the linear coefficient of f^2 is 1
    // and the quadratic one cancels.
    if (sq.coeff(1) != 1 || (sq.order() >= 2 && sq.coeff(2) != 0))
        throw InternalError("f(f(x)) lost its leading structure");
    StabilityConstants1D out;
    for (int j = 3; j <= sq.order(); ++j) {
        out.w_values.emplace_back(j, sq.coeff(j));
        if (!out.v_first && sq.coeff(j) != 0) out.v_first = {j, sq.coeff(j)};
    }
    out.involution_up_to_order = !out.v_first.has_value();
    if (out.v_first && out.v_first->first % 2 == 0)
        throw InternalError("first nonzero stability constant has even order");
    return out;
}

/// Closed-form expressions of V3, V5, V7, V9, V11 evaluated on the jet's
/// coefficients, as (index, value) pairs for every odd index <= min(order, 11).
/// The value at index l equals the true stability constant only when all
/// earlier constants vanish; the expressions were derived under that
/// substitution.
inline std::vector<std::pair<int, Rational>> closed_form_constants(const Jet1D& f) {
    if (f.multiplier() != -1)
        throw WrongMultiplier("stability constants require multiplier -1, got " +
                              format_rational(f.multiplier()));
    if (f.order() < 3)
        throw DomainError("closed-form constants need order >= 3, got " + std::to_string(f.order()));
    const auto a = [&](int k) { return k <= f.order() ? f.coeff(k) : Rational(0); };
    const auto p = [](const Rational& b, unsigned e) { return rational_pow(b, e); };
    std::vector<std::pair<int, Rational>> v;
    v.emplace_back(3, 2 * (-p(a(2), 2) - a(3)));
    if (f.order() >= 5)
        v.emplace_back(5, 2 * (2 * p(a(2), 4) - 3 * a(2) * a(4) - a(5)));
    if (f.order() >= 7)
        v.emplace_back(7, 2 * (-13 * p(a(2), 6) + 18 * p(a(2), 3) * a(4) - 4 * a(6) * a(2) -
                               2 * p(a(4), 2) - a(7)));
    if (f.order() >= 9)
        v.emplace_back(9, 2 * (145 * p(a(2), 8) - 221 * p(a(2), 5) * a(4) + 35 * p(a(2), 3) * a(6) +
                               50 * p(a(2), 2) * p(a(4), 2) - 5 * a(2) * a(8) - 5 * a(6) * a(4) -
                               a(9)));
    if (f.order() >= 11)
        v.emplace_back(11, 2 * (-2328 * p(a(2), 10) + 3879 * p(a(2), 7) * a(4) -
                                561 * p(a(2), 5) * a(6) - 1263 * p(a(2), 4) * p(a(4), 2) +
                                61 * p(a(2), 3) * a(8) + 171 * p(a(2), 2) * a(4) * a(6) +
                                55 * a(2) * p(a(4), 3) - 6 * a(2) * a(10) - 6 * a(4) * a(8) -
                                3 * p(a(6), 2) - a(11)));
    return v;
}

/// Local stability of the origin.
///
/// |a_1| != 1 is settled by linearization. a_1 = 1 is settled by the first
/// nonzero coefficient a_m, m >= 2: even m gives a one-sided verdict with the
/// attracting side determined by the sign, odd m gives repeller (a_m > 0) or
/// LAS (a_m < 0). a_1 = -1 is settled by the sign of the first nonzero
/// stability constant.
inline Verdict1D classify_1d(const Jet1D& f) {
    const Rational& a1 = f.multiplier();
    if (abs(a1) < 1) return {Stability1D::HyperbolicAttracting, 1};
    if (abs(a1) > 1) return {Stability1D::HyperbolicRepelling, 1};
    if (a1 == 1) {
        for (int m = 2; m <= f.order(); ++m) {
            const Rational& am = f.coeff(m);
            if (am == 0) continue;
            if (m % 2 == 0)
                return {am > 0 ? Stability1D::SemiASLeft : Stability1D::SemiASRight, m};
            return {am > 0 ? Stability1D::Repeller : Stability1D::LAS, m};
        }
        return {Stability1D::UndeterminedAtOrder, f.order()};
    }
    const StabilityConstants1D sc = stability_constants(f);
    if (sc.v_first) {
        const auto& [index, value] = *sc.v_first;
        return {value < 0 ? Stability1D::LAS : Stability1D::Repeller, index};
    }
    return {Stability1D::InvolutionUpToOrder, f.order()};
}

/// Normal-form test jet  sign_linear * x + sign_nonlinear * x^(m+1) + c x^(2m+1),
/// zero-padded to the requested order. The reversing family only exists for
/// even m (m = 2r).
inline Jet1D normal_form_jet(int sign_linear, int sign_nonlinear, int m, const Rational& c,
                             int order) {
    if ((sign_linear != 1 && sign_linear != -1) || (sign_nonlinear != 1 && sign_nonlinear != -1))
        throw InvalidNormalForm("signs must be +1 or -1");
    if (m < 1) throw InvalidNormalForm("m must be positive");
    if (sign_linear == -1 && m % 2 != 0)
        throw InvalidNormalForm("the orientation-reversing normal form requires even m");
    if (order < m + 1 || (c != 0 && order < 2 * m + 1))
        throw InvalidNormalForm("order too small to hold the requested normal form");
    std::vector<Rational> coeffs(static_cast<std::size_t>(order), Rational(0));
    coeffs[0] = sign_linear;
    coeffs[static_cast<std::size_t>(m)] = sign_nonlinear;
    if (c != 0) coeffs[static_cast<std::size_t>(2 * m)] += c;
    return Jet1D(std::move(coeffs));
}

}  // namespace parrondo
