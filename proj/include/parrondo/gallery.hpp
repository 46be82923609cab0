#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "parrondo/errors.hpp"
#include "parrondo/periodic.hpp"
#include "parrondo/simulate.hpp"

namespace parrondo {

/// Exact a + b*sqrt(k) with rational a, b; evaluated to double only at
/// comparison time so expected values keep their provenance.
struct QuadExpr {
    Rational a;
    Rational b;
    int k = 1;

    double value() const { return to_double(a) + to_double(b) * std::sqrt(double(k)); }

    std::string text() const {
        if (b == 0) return format_rational(a);
        std::ostringstream os;
        os << format_rational(a) << " + (" << format_rational(b) << ")*sqrt(" << k << ")";
        return os.str();
    }
};

struct Expected1D {
    std::vector<Rational> per_map_v;  // first stability constant of each map
    int per_map_v_index = 5;
    std::vector<Stability1D> per_map_verdicts;
    std::vector<Rational> composition_coeffs;
    std::optional<std::pair<int, Rational>> composition_v;
    Stability1D composition_verdict;
    Paradox paradox;
};

struct Expected2D {
    std::vector<QuadExpr> per_map_v1;
    std::vector<PlanarStability> per_map_verdicts;
    QuadExpr composition_b1_re;
    QuadExpr composition_b1_im;
    PlanarStability composition_verdict;
    Paradox paradox;
};

struct ExpectedLinear {
    QuadExpr eigenvalue_small;
    QuadExpr eigenvalue_large;
};

struct ExpectedUnbounded {
    double a0 = -0.7959;
    double a0_tol = 1e-4;
    double residual_tol = 1e-8;
    int n_check = 200;
};

struct UnboundedTag {};

struct GalleryEntry {
    std::string name;
    std::string summary;
    std::variant<UnboundedTag, PeriodicSystem1D, PeriodicSystem2D, std::vector<Matrix2>> system;
    std::variant<Expected1D, Expected2D, ExpectedLinear, ExpectedUnbounded> expected;

    /// The analytic verdict a simulation should corroborate, when one exists:
    /// the composition verdict mapped to the empirical vocabulary.
    std::optional<EmpiricalVerdict> expected_empirical() const {
        if (const auto* e1 = std::get_if<Expected1D>(&expected)) {
            switch (e1->composition_verdict) {
                case Stability1D::LAS:
                case Stability1D::HyperbolicAttracting: return EmpiricalVerdict::AttractingAll;
                case Stability1D::Repeller:
                case Stability1D::HyperbolicRepelling: return EmpiricalVerdict::RepellingAll;
                case Stability1D::SemiASLeft:
                case Stability1D::SemiASRight: return EmpiricalVerdict::Mixed;
                default: return std::nullopt;
            }
        }
        if (const auto* e2 = std::get_if<Expected2D>(&expected)) {
            switch (e2->composition_verdict) {
                case PlanarStability::LAS: return EmpiricalVerdict::AttractingAll;
                case PlanarStability::Repeller: return EmpiricalVerdict::RepellingAll;
                default: return std::nullopt;
            }
        }
        return std::nullopt;
    }
};

namespace detail {

inline Jet1D int_jet(std::vector<long> ints) {
    std::vector<Rational> c(ints.begin(), ints.end());
    return Jet1D(std::move(c));
}

inline std::vector<GalleryEntry> build_gallery() {
    std::vector<GalleryEntry> entries;

    const Rational half{1, 2};

    // Three maps with a LAS origin whose composition repels. Built from the
    // parametric family at a22 = 5, A^2 = (2, 9, 1), a23 = 2, a4 = 0.
    {
        GalleryEntry e;
        e.name = "e-f1f2f3";
        e.summary = "three LAS maps whose composition repels";
        e.system = construct_1d_triple(5, 2, 9, 1, 2, 0);
        Expected1D x;
        x.per_map_v = {-4, -18, -2};
        x.per_map_verdicts = {Stability1D::LAS, Stability1D::LAS, Stability1D::LAS};
        x.composition_coeffs = {-1, 0, 0, 90, -48};
        x.composition_v = {{5, Rational(96)}};
        x.composition_verdict = Stability1D::Repeller;
        x.paradox = Paradox::LASToRepeller;
        e.expected = std::move(x);
        entries.push_back(std::move(e));
    }

    // The degree-5 inverses of the maps above, applied in reversed order:
    // repellers whose composition attracts.
    {
        GalleryEntry e;
        e.name = "e-F1F2F3";
        e.summary = "three repellers whose composition attracts";
        e.system = PeriodicSystem1D{{int_jet({-1, 2, -4, 0, 31}), int_jet({-1, 5, -25, 0, 1241}),
                                     int_jet({-1, 3, -9, 0, 160})}};
        Expected1D x;
        x.per_map_v = {2, 18, 4};
        x.per_map_verdicts = {Stability1D::Repeller, Stability1D::Repeller, Stability1D::Repeller};
        x.composition_coeffs = {-1, 0, 0, 90, 48};
        x.composition_v = {{5, Rational(-96)}};
        x.composition_verdict = Stability1D::LAS;
        x.paradox = Paradox::RepellersToLAS;
        e.expected = std::move(x);
        entries.push_back(std::move(e));
    }

    // The same repellers applied in the opposite order: the paradox is order
    // sensitive and disappears.
    {
        GalleryEntry e;
        e.name = "g-123-reversed";
        e.summary = "the inverse family in reversed order; repelling composition";
        e.system = PeriodicSystem1D{{int_jet({-1, 3, -9, 0, 160}), int_jet({-1, 5, -25, 0, 1241}),
                                     int_jet({-1, 2, -4, 0, 31})}};
        Expected1D x;
        x.per_map_v = {4, 18, 2};
        x.per_map_verdicts = {Stability1D::Repeller, Stability1D::Repeller, Stability1D::Repeller};
        x.composition_coeffs = {-1, 0, 0, 90, -72};
        x.composition_v = {{5, Rational(144)}};
        x.composition_verdict = Stability1D::Repeller;
        x.paradox = Paradox::None;
        e.expected = std::move(x);
        entries.push_back(std::move(e));
    }

    // Middle branch of the piecewise composition of two maps with a GAS
    // origin. Only the local jet matters here; the piecewise pieces put a
    // second fixed point at 1 - sqrt(2)/2, so the origin is neither globally
    // attracting nor stable.
    {
        GalleryEntry e;
        e.name = "glue-semi-as";
        e.summary = "one-sided stability of a composition of two GAS maps";
        e.system = PeriodicSystem1D{{int_jet({1, 1, -4, 2})}};
        Expected1D x;
        x.per_map_v = {};
        x.per_map_verdicts = {Stability1D::SemiASLeft};
        x.composition_coeffs = {1, 1, -4, 2};
        x.composition_verdict = Stability1D::SemiASLeft;
        x.paradox = Paradox::None;
        e.expected = std::move(x);
        entries.push_back(std::move(e));
    }

    // Non-periodic family with a GAS origin for every map and an unbounded
    // solution.
    {
        GalleryEntry e;
        e.name = "unbounded";
        e.summary = "GAS maps threaded so that y_n = (-1)^n (n+1) solves the system";
        e.system = UnboundedTag{};
        e.expected = ExpectedUnbounded{};
        entries.push_back(std::move(e));
    }

    // Two super-attracting linear maps composing to a saddle.
    {
        GalleryEntry e;
        e.name = "lin1";
        e.summary = "two stable linear maps composing to a saddle";
        e.system = std::vector<Matrix2>{{0, 2, 0, 0.5}, {0.5, 0, 2, 0}};
        e.expected = ExpectedLinear{QuadExpr{0, 0, 1}, QuadExpr{4, 0, 1}};
        entries.push_back(std::move(e));
    }

    // Scaled shears: stability of the composition flips at |alpha| =
    // (sqrt(5)-1)/2.
    {
        GalleryEntry e;
        e.name = "lin2";
        e.summary = "scaled shears at alpha = 1/2; spectrum (3 +- sqrt(5)) alpha^2 / 2";
        e.system = std::vector<Matrix2>{{0.5, 0.5, 0, 0.5}, {0.5, 0, 0.5, 0.5}};
        e.expected = ExpectedLinear{QuadExpr{Rational(3, 8), Rational(-1, 8), 5},
                                    QuadExpr{Rational(3, 8), Rational(1, 8), 5}};
        entries.push_back(std::move(e));
    }

    // Planar pair with LAS origins and a repelling composition; the (t, s, u)
    // family at (1, -3, -1).
    {
        GalleryEntry e;
        e.name = "ex-dim2-1";
        e.summary = "two planar LAS maps whose composition repels";
        e.system = construct_2d_pair(1, -3, -1);
        Expected2D x;
        x.per_map_v1 = {QuadExpr{-half, 0, 3}, QuadExpr{-half, 0, 3}};
        x.per_map_verdicts = {PlanarStability::LAS, PlanarStability::LAS};
        x.composition_b1_re = QuadExpr{Rational(-5, 2), Rational(3, 2), 3};
        x.composition_b1_im = QuadExpr{Rational(-13, 2), Rational(3, 2), 3};
        x.composition_verdict = PlanarStability::Repeller;
        x.paradox = Paradox::LASToRepeller;
        e.expected = std::move(x);
        entries.push_back(std::move(e));
    }

    // Planar pair with repelling origins and an attracting composition; the
    // family at (-2/3, 4, 1).
    {
        GalleryEntry e;
        e.name = "ex-dim2-2";
        e.summary = "two planar repellers whose composition attracts";
        e.system = construct_2d_pair(-2.0 / 3.0, 4, 1);
        Expected2D x;
        x.per_map_v1 = {QuadExpr{half, 0, 3}, QuadExpr{half, 0, 3}};
        x.per_map_verdicts = {PlanarStability::Repeller, PlanarStability::Repeller};
        x.composition_b1_re = QuadExpr{3, -2, 3};
        x.composition_b1_im = QuadExpr{Rational(17, 3), Rational(-1, 3), 3};
        x.composition_verdict = PlanarStability::LAS;
        x.paradox = Paradox::RepellersToLAS;
        e.expected = std::move(x);
        entries.push_back(std::move(e));
    }

    return entries;
}

}  // namespace detail

inline const std::vector<GalleryEntry>& gallery_all() {
    static const std::vector<GalleryEntry> entries = detail::build_gallery();
    return entries;
}

inline const GalleryEntry& gallery_get(std::string_view name) {
    for (const GalleryEntry& e : gallery_all())
        if (e.name == name) return e;
    throw UnknownGalleryEntry(std::string(name));
}

struct CheckRow {
    std::string label;
    std::string expected;
    std::string computed;
    bool ok = true;
};

struct EntryCheck {
    std::string name;
    bool passed = true;
    std::vector<CheckRow> rows;
    std::vector<std::string> diffs;  // failing rows, one line each
};

struct GalleryReport {
    std::vector<EntryCheck> entries;
    bool all_passed = true;
};

namespace detail {

inline constexpr double kFloatTol = 1e-12;

inline void add_row(EntryCheck& check, const std::string& label, const std::string& expected,
                    const std::string& computed, bool ok) {
    check.rows.push_back({label, expected, computed, ok});
    if (!ok) {
        check.passed = false;
        check.diffs.push_back(label + ": computed " + computed + ", expected " + expected);
    }
}

template <typename T>
void diff_eq(EntryCheck& check, const std::string& what, const T& computed, const T& expected) {
    std::ostringstream ce, cc;
    ce << expected;
    cc << computed;
    add_row(check, what, ce.str(), cc.str(), computed == expected);
}

inline void diff_close(EntryCheck& check, const std::string& what, double computed, double expected,
                       double tol = kFloatTol) {
    std::ostringstream ce, cc;
    ce.precision(17);
    cc.precision(17);
    ce << expected;
    cc << computed;
    add_row(check, what, ce.str(), cc.str(), std::abs(computed - expected) <= tol);
}

inline void check_1d(EntryCheck& check, const PeriodicSystem1D& sys, const Expected1D& x) {
    const ParrondoReport1D report = detect_parrondo_1d(sys);
    for (std::size_t i = 0; i < x.per_map_v.size(); ++i) {
        const auto sc = stability_constants(sys.maps()[i]);
        const std::string tag = "map " + std::to_string(i + 1);
        if (!sc.v_first) {
            add_row(check, tag + " V value", format_rational(x.per_map_v[i]), "none", false);
            continue;
        }
        diff_eq(check, tag + " V index", sc.v_first->first, x.per_map_v_index);
        diff_eq(check, tag + " V value", format_rational(sc.v_first->second),
                format_rational(x.per_map_v[i]));
    }
    for (std::size_t i = 0; i < x.per_map_verdicts.size(); ++i)
        diff_eq(check, "map " + std::to_string(i + 1) + " verdict",
                std::string(stability_name(report.per_map[i].kind)),
                std::string(stability_name(x.per_map_verdicts[i])));
    const Jet1D expected_comp{x.composition_coeffs};
    {
        std::string got, want;
        for (int k = 1; k <= report.composition.order(); ++k)
            got += format_rational(report.composition.coeff(k)) + (k < report.composition.order() ? " " : "");
        for (int k = 1; k <= expected_comp.order(); ++k)
            want += format_rational(expected_comp.coeff(k)) + (k < expected_comp.order() ? " " : "");
        add_row(check, "composition jet", "[" + want + "]", "[" + got + "]",
                report.composition == expected_comp);
    }
    if (x.composition_v) {
        const auto sc = stability_constants(report.composition);
        if (!sc.v_first) {
            add_row(check, "composition V value", format_rational(x.composition_v->second), "none",
                    false);
        } else {
            diff_eq(check, "composition V index", sc.v_first->first, x.composition_v->first);
            diff_eq(check, "composition V value", format_rational(sc.v_first->second),
                    format_rational(x.composition_v->second));
        }
    }
    diff_eq(check, "composition verdict", std::string(stability_name(report.composition_verdict.kind)),
            std::string(stability_name(x.composition_verdict)));
    diff_eq(check, "paradox", std::string(paradox_name(report.paradox)),
            std::string(paradox_name(x.paradox)));
}

inline void check_2d(EntryCheck& check, const PeriodicSystem2D& sys, const Expected2D& x) {
    const ParrondoReport2D report = detect_parrondo_2d(sys);
    for (std::size_t i = 0; i < x.per_map_v1.size(); ++i) {
        diff_close(check, "map " + std::to_string(i + 1) + " V1", report.per_map[i].v1,
                   x.per_map_v1[i].value());
        diff_eq(check, "map " + std::to_string(i + 1) + " verdict",
                std::string(planar_stability_name(report.per_map[i].verdict)),
                std::string(planar_stability_name(x.per_map_verdicts[i])));
    }
    diff_close(check, "composition Re B1", report.composition_result.b1.real(),
               x.composition_b1_re.value());
    diff_close(check, "composition Im B1", report.composition_result.b1.imag(),
               x.composition_b1_im.value());
    diff_eq(check, "composition verdict",
            std::string(planar_stability_name(report.composition_result.verdict)),
            std::string(planar_stability_name(x.composition_verdict)));
    diff_eq(check, "paradox", std::string(paradox_name(report.paradox)),
            std::string(paradox_name(x.paradox)));
}

inline void check_linear(EntryCheck& check, const std::vector<Matrix2>& mats,
                         const ExpectedLinear& x) {
    const LinearSpectrum spec = linear_spectrum_2x2(mats);
    diff_close(check, "small eigenvalue (re)", spec.eigenvalues[0].real(), x.eigenvalue_small.value());
    diff_close(check, "small eigenvalue (im)", spec.eigenvalues[0].imag(), 0.0);
    diff_close(check, "large eigenvalue (re)", spec.eigenvalues[1].real(), x.eigenvalue_large.value());
    diff_close(check, "large eigenvalue (im)", spec.eigenvalues[1].imag(), 0.0);
}

inline void check_unbounded(EntryCheck& check, const ExpectedUnbounded& x) {
    const UnboundedDemo demo = unbounded_demo(x.n_check);
    diff_close(check, "a0", demo.a0, x.a0, x.a0_tol);
    diff_close(check, "f0(1)", demo.f0_at_1, -2.0, 1e-10);
    std::ostringstream os;
    os << demo.max_residual;
    add_row(check, "max residual", "< " + std::to_string(x.residual_tol), os.str(),
            demo.max_residual < x.residual_tol);
}

}  // namespace detail

/// Recomputes every value of one entry and compares against the expectations:
/// exact where the source is exact, 1e-12 where floating.
inline EntryCheck gallery_check(const GalleryEntry& entry) {
    EntryCheck check;
    check.name = entry.name;
    if (const auto* sys1 = std::get_if<PeriodicSystem1D>(&entry.system))
        detail::check_1d(check, *sys1, std::get<Expected1D>(entry.expected));
    else if (const auto* sys2 = std::get_if<PeriodicSystem2D>(&entry.system))
        detail::check_2d(check, *sys2, std::get<Expected2D>(entry.expected));
    else if (const auto* mats = std::get_if<std::vector<Matrix2>>(&entry.system))
        detail::check_linear(check, *mats, std::get<ExpectedLinear>(entry.expected));
    else
        detail::check_unbounded(check, std::get<ExpectedUnbounded>(entry.expected));
    return check;
}

inline GalleryReport gallery_run(const std::vector<std::string>& names) {
    GalleryReport report;
    for (const std::string& name : names) {
        report.entries.push_back(gallery_check(gallery_get(name)));
        report.all_passed = report.all_passed && report.entries.back().passed;
    }
    return report;
}

inline GalleryReport gallery_run_all() {
    std::vector<std::string> names;
    for (const GalleryEntry& e : gallery_all()) names.push_back(e.name);
    return gallery_run(names);
}

}  // namespace parrondo
