#pragma once

#include <string>

#include <json.hpp>

#include "parrondo/gallery.hpp"
#include "parrondo/mapfile.hpp"
#include "parrondo/periodic.hpp"
#include "parrondo/simulate.hpp"
#include "parrondo/stability1d.hpp"

// JSON report builders shared by the CLI and the schema tests. Key sets are
// part of the public interface and frozen by tests.

namespace parrondo {

inline const char* theorem_for(const Jet1D& f) {
    const Rational& a1 = f.multiplier();
    if (abs(a1) != 1) return "hyperbolic-linearization";
    if (a1 == 1) return "orientation-preserving-leading-term";
    return "orientation-reversing-stability-constants";
}

inline json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json constants_json_1d(const Jet1D& f) {
    json constants = json::object();
    const Rational& a1 = f.multiplier();
    constants["multiplier"] = format_rational(a1);
    if (a1 == -1) {
        const StabilityConstants1D sc = stability_constants(f);
        json w = json::array();
        for (const auto& [index, value] : sc.w_values)
            w.push_back(json::array({index, format_rational(value)}));
        constants["W"] = std::move(w);
        constants["v_first"] =
            sc.v_first ? json{{"index", sc.v_first->first}, {"value", format_rational(sc.v_first->second)}}
                       : json(nullptr);
    } else if (a1 == 1) {
        json leading(nullptr);
        for (int m = 2; m <= f.order(); ++m)
            if (f.coeff(m) != 0) {
                leading = json{{"index", m}, {"value", format_rational(f.coeff(m))}};
                break;
            }
        constants["leading"] = std::move(leading);
    }
    return constants;
}

inline json analyze_report_1d(const Jet1D& f, const json& input) {
    const Verdict1D verdict = classify_1d(f);
    return json{{"input", input},
                {"constants", constants_json_1d(f)},
                {"verdict", stability_name(verdict.kind)},
                {"theorem", theorem_for(f)},
                {"order_decided", verdict.order_decided}};
}

inline json analyze_report_2d(const PlanarPolyMap& f, const json& input, double zero_tol) {
    const ComplexJet2 g = real_to_complex(f, zero_tol);
    const BirkhoffResult result = birkhoff_b1(g, zero_tol);
    const json constants{{"lambda", complex_json(g.lambda)},
                         {"B1", complex_json(result.b1)},
                         {"V1", result.v1}};
    return json{{"input", input},
                {"constants", constants},
                {"verdict", planar_stability_name(result.verdict)},
                {"theorem", "birkhoff-first-constant"},
                {"order_decided", 1}};
}

inline json parrondo_report_json(const ParrondoReport1D& report) {
    json per_map = json::array();
    for (const Verdict1D& v : report.per_map)
        per_map.push_back(json{{"verdict", stability_name(v.kind)}, {"order_decided", v.order_decided}});
    return json{{"per_map", std::move(per_map)},
                {"composition", jet_to_json(report.composition)},
                {"composition_constants", constants_json_1d(report.composition)},
                {"composition_verdict", stability_name(report.composition_verdict.kind)},
                {"paradox", paradox_name(report.paradox)}};
}

inline json parrondo_report_json(const ParrondoReport2D& report) {
    json per_map = json::array();
    for (const BirkhoffResult& r : report.per_map)
        per_map.push_back(json{{"verdict", planar_stability_name(r.verdict)},
                               {"B1", complex_json(r.b1)},
                               {"V1", r.v1}});
    json composition = json::object();
    composition["lambda"] = complex_json(report.composition.lambda);
    json terms = json::array();
    report.composition.for_each_a([&](int m, int j, Complex a) {
        if (a != Complex{}) terms.push_back(json::array({m, j, complex_json(a)}));
    });
    composition["terms"] = std::move(terms);
    return json{{"per_map", std::move(per_map)},
                {"composition", std::move(composition)},
                {"composition_constants",
                 json{{"B1", complex_json(report.composition_result.b1)},
                      {"V1", report.composition_result.v1}}},
                {"composition_verdict", planar_stability_name(report.composition_result.verdict)},
                {"paradox", paradox_name(report.paradox)}};
}

inline const char* orbit_status_name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::Converged: return "Converged";
        case OrbitStatus::Escaped: return "Escaped";
        case OrbitStatus::MaxedOut: return "MaxedOut";
    }
    return "?";
}

inline const char* trend_name(RadialTrend t) {
    switch (t) {
        case RadialTrend::Contracting: return "Contracting";
        case RadialTrend::Expanding: return "Expanding";
        case RadialTrend::Indeterminate: return "Indeterminate";
    }
    return "?";
}

inline json orbit_json(const OrbitResult& r) {
    return json{{"status", orbit_status_name(r.status)},
                {"iterations", r.iterations},
                {"final_radius", r.final_radius},
                {"non_finite", r.non_finite},
                {"trend", trend_name(r.trend)}};
}

inline json empirical_json(const EmpiricalReport& report) {
    json orbits = json::array();
    for (const OrbitResult& r : report.orbits) orbits.push_back(orbit_json(r));
    return json{{"verdict", empirical_name(report.verdict)}, {"orbits", std::move(orbits)}};
}

inline json gallery_report_json(const GalleryReport& report) {
    json entries = json::array();
    for (const EntryCheck& e : report.entries)
        entries.push_back(json{{"name", e.name}, {"passed", e.passed}, {"diffs", e.diffs}});
    return json{{"entries", std::move(entries)}, {"all_passed", report.all_passed}};
}

inline json unbounded_json(const UnboundedDemo& demo) {
    return json{{"a0", demo.a0},
                {"f0_at_1", demo.f0_at_1},
                {"max_residual", demo.max_residual},
                {"steps_checked", demo.residuals.size()}};
}

}  // namespace parrondo
