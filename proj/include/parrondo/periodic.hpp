#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "parrondo/errors.hpp"
#include "parrondo/jet1d.hpp"
#include "parrondo/planar.hpp"
#include "parrondo/stability1d.hpp"

namespace parrondo {

/// A k-periodic system as the ordered periodic set, first map applied first.
/// Mixed orders are zero-padded to the common maximum on construction.
class PeriodicSystem1D {
public:
    explicit PeriodicSystem1D(std::vector<Jet1D> maps) : maps_(std::move(maps)) {
        if (maps_.empty()) throw InputError("a periodic system needs at least one map");
        int order = 0;
        for (const Jet1D& f : maps_) order = std::max(order, f.order());
        for (Jet1D& f : maps_) f = f.padded(order);
    }

    const std::vector<Jet1D>& maps() const { return maps_; }
    int size() const { return static_cast<int>(maps_.size()); }
    int order() const { return maps_.front().order(); }

    bool operator==(const PeriodicSystem1D&) const = default;

private:
    std::vector<Jet1D> maps_;
};

class PeriodicSystem2D {
public:
    explicit PeriodicSystem2D(std::vector<PlanarPolyMap> maps) : maps_(std::move(maps)) {
        if (maps_.empty()) throw InputError("a periodic system needs at least one map");
    }

    const std::vector<PlanarPolyMap>& maps() const { return maps_; }
    int size() const { return static_cast<int>(maps_.size()); }

private:
    std::vector<PlanarPolyMap> maps_;
};

enum class Paradox { RepellersToLAS, LASToRepeller, None, Indeterminate };

inline const char* paradox_name(Paradox p) {
    switch (p) {
        case Paradox::RepellersToLAS: return "RepellersToLAS";
        case Paradox::LASToRepeller: return "LASToRepeller";
        case Paradox::None: return "None";
        case Paradox::Indeterminate: return "Indeterminate";
    }
    return "?";
}

/// f_k o ... o f_1, folded left with the first map innermost.
inline Jet1D composition_map_1d(const PeriodicSystem1D& sys) {
    Jet1D acc = sys.maps().front();
    for (int i = 1; i < sys.size(); ++i) acc = jet_compose(sys.maps()[static_cast<std::size_t>(i)], acc);
    return acc;
}

inline ComplexJet2 composition_map_2d(const PeriodicSystem2D& sys, double zero_tol = kDefaultZeroTol) {
    ComplexJet2 acc = real_to_complex(sys.maps().front(), zero_tol);
    for (int i = 1; i < sys.size(); ++i)
        acc = compose_complex(real_to_complex(sys.maps()[static_cast<std::size_t>(i)], zero_tol), acc);
    return acc;
}

struct ParrondoReport1D {
    std::vector<Verdict1D> per_map;
    Jet1D composition;
    Verdict1D composition_verdict;
    Paradox paradox;
};

struct ParrondoReport2D {
    std::vector<BirkhoffResult> per_map;
    ComplexJet2 composition;
    BirkhoffResult composition_result;
    Paradox paradox;
};

namespace detail {

template <typename Kind>
Paradox paradox_of(const std::vector<Kind>& per_map, Kind composition, Kind las, Kind repeller,
                   bool any_undetermined) {
    if (any_undetermined) return Paradox::Indeterminate;
    const bool all_las = std::all_of(per_map.begin(), per_map.end(), [&](Kind k) { return k == las; });
    const bool all_rep =
        std::all_of(per_map.begin(), per_map.end(), [&](Kind k) { return k == repeller; });
    if (all_rep && composition == las) return Paradox::RepellersToLAS;
    if (all_las && composition == repeller) return Paradox::LASToRepeller;
    return Paradox::None;
}

}  // namespace detail

inline ParrondoReport1D detect_parrondo_1d(const PeriodicSystem1D& sys) {
    ParrondoReport1D report{{}, composition_map_1d(sys), {}, Paradox::None};
    bool undetermined = false;
    std::vector<Stability1D> kinds;
    for (const Jet1D& f : sys.maps()) {
        report.per_map.push_back(classify_1d(f));
        kinds.push_back(report.per_map.back().kind);
        undetermined = undetermined || !is_determinate(kinds.back());
    }
    report.composition_verdict = classify_1d(report.composition);
    undetermined = undetermined || !is_determinate(report.composition_verdict.kind);
    report.paradox = detail::paradox_of(kinds, report.composition_verdict.kind, Stability1D::LAS,
                                        Stability1D::Repeller, undetermined);
    return report;
}

inline ParrondoReport2D detect_parrondo_2d(const PeriodicSystem2D& sys,
                                           double zero_tol = kDefaultZeroTol) {
    ParrondoReport2D report{{}, composition_map_2d(sys, zero_tol), {}, Paradox::None};
    bool undetermined = false;
    std::vector<PlanarStability> kinds;
    for (const PlanarPolyMap& f : sys.maps()) {
        report.per_map.push_back(classify_planar(f, zero_tol));
        kinds.push_back(report.per_map.back().verdict);
        undetermined = undetermined || kinds.back() == PlanarStability::UndeterminedByB1;
    }
    report.composition_result = birkhoff_b1(report.composition, zero_tol);
    undetermined = undetermined || report.composition_result.verdict == PlanarStability::UndeterminedByB1;
    report.paradox = detail::paradox_of(kinds, report.composition_result.verdict, PlanarStability::LAS,
                                        PlanarStability::Repeller, undetermined);
    return report;
}

/// The three-map family behind the 1-D stability reversal:
///
///   f_i = -x + a_{2,i} x^2 - a_{2,i}^2 x^3 + a4 x^4 + (2 a_{2,i}^4 - 3 a_{2,i} a4 + Ai^2) x^5
///
/// with a_{2,2} = a22, a_{2,3} = a23 and a_{2,1} = a22 - a23 so that the
/// quadratic and cubic terms of the composition cancel. Each map then has
/// V3 = 0 and V5 = -2 Ai^2.
inline PeriodicSystem1D construct_1d_triple(const Rational& a22, const Rational& A1sq,
                                            const Rational& A2sq, const Rational& A3sq,
                                            const Rational& a23, const Rational& a4) {
    for (const Rational* q : {&A1sq, &A2sq, &A3sq})
        if (*q < 0) throw InputError("Ai^2 parameters must be nonnegative");
    const std::array<Rational, 3> a2{a22 - a23, a22, a23};
    const std::array<Rational, 3> asq{A1sq, A2sq, A3sq};
    std::vector<Jet1D> maps;
    for (int i = 0; i < 3; ++i) {
        const Rational& b = a2[static_cast<std::size_t>(i)];
        maps.push_back(Jet1D({Rational(-1), b, -b * b, a4,
                              2 * rational_pow(b, 4) - 3 * b * a4 + asq[static_cast<std::size_t>(i)]}));
    }
    return PeriodicSystem1D(std::move(maps));
}

/// The planar pair behind the 2-D stability reversal:
///
///   g1 = i z + (t + s i) z^2 + z zbar,   g2 = (1 + sqrt(3) i)/2 z + u z^2 zbar
///
/// returned in real coordinates. The Birkhoff constants come out as
/// V1(g1) = (3t + s - 1)/2, V1(g2) = u/2 and
/// V1(g2 o g1) = (1 - sqrt(3)/2) s + (3/2) t + u/2 - 1/2.
inline PeriodicSystem2D construct_2d_pair(double t, double s, double u) {
    ComplexJet2 g1;
    g1.lambda = {0.0, 1.0};
    g1.set_a(2, 0, {t, s});
    g1.set_a(1, 1, {1.0, 0.0});
    ComplexJet2 g2;
    g2.lambda = {0.5, std::sqrt(3.0) / 2.0};
    g2.set_a(2, 1, {u, 0.0});
    return PeriodicSystem2D({complex_to_real(g1), complex_to_real(g2)});
}

/// Extends a system to k maps by appending degree-7 one-term maps that leave
/// the degree <= 5 part of the composition unchanged: x - x^7 when the
/// existing maps are LAS, x + x^7 when they are repellers.
inline PeriodicSystem1D extend_with_padding_1d(const PeriodicSystem1D& sys, int k) {
    if (k < sys.size())
        throw InvalidPaddingTarget("target size " + std::to_string(k) + " is smaller than the system");
    if (sys.order() < 5)
        throw InvalidPaddingTarget("padding requires maps of order >= 5");
    Stability1D common = classify_1d(sys.maps().front()).kind;
    for (const Jet1D& f : sys.maps())
        if (classify_1d(f).kind != common)
            throw InvalidPaddingTarget("per-map verdicts disagree; no padding sign matches");
    if (common != Stability1D::LAS && common != Stability1D::Repeller)
        throw InvalidPaddingTarget("padding sign is only defined for LAS or repeller systems");

    const int order = std::max(sys.order(), 7);
    std::vector<Rational> pad_coeffs(static_cast<std::size_t>(order), Rational(0));
    pad_coeffs[0] = 1;
    pad_coeffs[6] = common == Stability1D::LAS ? -1 : 1;
    const Jet1D pad{pad_coeffs};

    std::vector<Jet1D> maps = sys.maps();
    while (static_cast<int>(maps.size()) < k) maps.push_back(pad);
    return PeriodicSystem1D(std::move(maps));
}

/// Product lift: n uncoupled copies of the base system acting componentwise.
/// The verdict of the lift is the verdict of the base, so only the base and
/// the multiplicity are stored.
struct ProductSystem {
    std::variant<PeriodicSystem1D, PeriodicSystem2D> base;
    int copies;

    int base_dimension() const { return std::holds_alternative<PeriodicSystem1D>(base) ? 1 : 2; }
    int dimension() const { return base_dimension() * copies; }
    int size() const {
        return std::visit([](const auto& sys) { return sys.size(); }, base);
    }
};

inline ProductSystem lift_product(PeriodicSystem1D base, int copies) {
    if (copies < 1) throw InputError("product lift needs at least one copy");
    return {std::move(base), copies};
}

inline ProductSystem lift_product(PeriodicSystem2D base, int copies) {
    if (copies < 1) throw InputError("product lift needs at least one copy");
    return {std::move(base), copies};
}

inline Paradox lift_paradox(const ProductSystem& lift, double zero_tol = kDefaultZeroTol) {
    if (const auto* sys1 = std::get_if<PeriodicSystem1D>(&lift.base))
        return detect_parrondo_1d(*sys1).paradox;
    return detect_parrondo_2d(std::get<PeriodicSystem2D>(lift.base), zero_tol).paradox;
}

/// Row-major 2x2 real matrix.
struct Matrix2 {
    double a, b, c, d;

    friend Matrix2 operator*(const Matrix2& lhs, const Matrix2& rhs) {
        return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
    }
};

struct LinearSpectrum {
    Matrix2 product;
    std::array<Complex, 2> eigenvalues;
};

/// Product A_k ... A_1 of the composition (first matrix applied first) and its
/// eigenvalues by the quadratic formula, complex when the discriminant is
/// negative. Eigenvalues are ordered by modulus, largest last.
inline LinearSpectrum linear_spectrum_2x2(const std::vector<Matrix2>& matrices) {
    if (matrices.empty()) throw InputError("need at least one matrix");
    Matrix2 prod = matrices.front();
    for (std::size_t i = 1; i < matrices.size(); ++i) prod = matrices[i] * prod;
    const double tr = prod.a + prod.d;
    const double det = prod.a * prod.d - prod.b * prod.c;
    const double disc = tr * tr - 4 * det;
    std::array<Complex, 2> eig;
    if (disc >= 0) {
        const double root = std::sqrt(disc);
        eig = {Complex{(tr - root) / 2, 0}, Complex{(tr + root) / 2, 0}};
    } else {
        const double root = std::sqrt(-disc);
        eig = {Complex{tr / 2, -root / 2}, Complex{tr / 2, root / 2}};
    }
    if (std::abs(eig[0]) > std::abs(eig[1])) std::swap(eig[0], eig[1]);
    return {prod, eig};
}

}  // namespace parrondo
