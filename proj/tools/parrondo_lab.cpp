// parrondo-lab: stability analysis of common fixed points of periodic systems
// of 1-D and planar maps given as truncated jets, with paradox detection,
// orbit simulation, and a gallery of reproducible examples.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "parrondo/gallery.hpp"
#include "parrondo/mapfile.hpp"
#include "parrondo/periodic.hpp"
#include "parrondo/report.hpp"
#include "parrondo/simulate.hpp"

namespace {

using namespace parrondo;

double tol_default() {
    if (const char* env = std::getenv("PARRONDO_LAB_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0) return v;
        } catch (...) {
        }
        throw InputError("PARRONDO_LAB_TOL must be a positive number");
    }
    return kDefaultZeroTol;
}

// A command input is either a gallery entry name or a map file path.
struct Resolved {
    std::variant<UnboundedTag, MapInput, std::vector<Matrix2>> payload;
    json original;  // the map-file JSON when there is one
    std::string name;
};

Resolved resolve_input(const std::string& arg) {
    for (const GalleryEntry& e : gallery_all()) {
        if (e.name != arg) continue;
        Resolved r;
        r.name = e.name;
        if (const auto* sys1 = std::get_if<PeriodicSystem1D>(&e.system)) {
            r.payload = MapInput{*sys1, sys1->size() == 1};
            r.original = system_to_json(*sys1);
        } else if (const auto* sys2 = std::get_if<PeriodicSystem2D>(&e.system)) {
            r.payload = MapInput{*sys2, sys2->size() == 1};
            r.original = system_to_json(*sys2);
        } else if (const auto* mats = std::get_if<std::vector<Matrix2>>(&e.system)) {
            r.payload = *mats;
            r.original = json{{"type", "linear2x2"}, {"name", e.name}};
        } else {
            r.payload = UnboundedTag{};
            r.original = json{{"type", "unbounded"}};
        }
        return r;
    }
    Resolved r;
    r.original = load_json_file(arg);
    r.payload = parse_map_input(r.original, arg);
    r.name = arg;
    return r;
}

MapInput& require_maps(Resolved& r, const std::string& command) {
    if (auto* input = std::get_if<MapInput>(&r.payload)) return *input;
    throw InputError("'" + r.name + "' is not a jet/planar map input; " + command +
                     " needs a map1d, map2d, or system input");
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write file: " + out_path);
    out << j.dump(2) << "\n";
}

std::string jet_text(const Jet1D& f) {
    std::string s = "[";
    for (int k = 1; k <= f.order(); ++k)
        s += format_rational(f.coeff(k)) + (k < f.order() ? " " : "");
    return s + "]";
}

// ---------------------------------------------------------------- analyze --

int cmd_analyze(const std::string& input_arg, int map_index, double tol, bool as_json) {
    Resolved resolved = resolve_input(input_arg);
    MapInput& input = require_maps(resolved, "analyze");

    const auto pick = [&](auto& sys) {
        if (map_index == 0) return -1;  // composition
        if (map_index < 1 || map_index > sys.size())
            throw InputError("--map index out of range (system has " +
                             std::to_string(sys.size()) + " maps)");
        return map_index - 1;
    };

    json report;
    if (auto* sys1 = std::get_if<PeriodicSystem1D>(&input.system)) {
        const int idx = pick(*sys1);
        const Jet1D f = idx < 0 ? composition_map_1d(*sys1) : sys1->maps()[static_cast<std::size_t>(idx)];
        report = analyze_report_1d(f, resolved.original);
        if (!as_json) {
            std::cout << "map: " << jet_text(f) << "\n";
            const json& c = report["constants"];
            std::cout << "multiplier: " << c["multiplier"].get<std::string>() << "\n";
            if (c.contains("W")) {
                std::cout << "W:";
                for (const auto& pair : c["W"])
                    std::cout << " W" << pair[0].get<int>() << "=" << pair[1].get<std::string>();
                std::cout << "\n";
                if (!c["v_first"].is_null())
                    std::cout << "first stability constant: V" << c["v_first"]["index"].get<int>()
                              << " = " << c["v_first"]["value"].get<std::string>() << "\n";
            }
            if (c.contains("leading") && !c["leading"].is_null())
                std::cout << "leading term: a_" << c["leading"]["index"].get<int>() << " = "
                          << c["leading"]["value"].get<std::string>() << "\n";
        }
    } else {
        auto& sys2 = std::get<PeriodicSystem2D>(input.system);
        const int idx = pick(sys2);
        if (idx < 0 && sys2.size() > 1) {
            const ComplexJet2 comp = composition_map_2d(sys2, tol);
            const BirkhoffResult result = birkhoff_b1(comp, tol);
            report = json{{"input", resolved.original},
                          {"constants",
                           json{{"lambda", complex_json(comp.lambda)},
                                {"B1", complex_json(result.b1)},
                                {"V1", result.v1}}},
                          {"verdict", planar_stability_name(result.verdict)},
                          {"theorem", "birkhoff-first-constant"},
                          {"order_decided", 1}};
        } else {
            const PlanarPolyMap& f = sys2.maps()[static_cast<std::size_t>(std::max(idx, 0))];
            report = analyze_report_2d(f, resolved.original, tol);
        }
        if (!as_json) {
            const json& c = report["constants"];
            std::cout << "lambda: " << c["lambda"]["re"].get<double>() << " + "
                      << c["lambda"]["im"].get<double>() << "i\n";
            std::cout << "B1: " << c["B1"]["re"].get<double>() << " + " << c["B1"]["im"].get<double>()
                      << "i\n";
            std::cout << "V1: " << c["V1"].get<double>() << "\n";
        }
    }
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << "verdict: " << report["verdict"].get<std::string>() << " (decided at order "
                  << report["order_decided"].get<int>() << ")\n"
                  << "theorem: " << report["theorem"].get<std::string>() << "\n";
    return 0;
}

// --------------------------------------------------------------- parrondo --

int cmd_parrondo(const std::string& input_arg, double tol, bool as_json) {
    Resolved resolved = resolve_input(input_arg);
    MapInput& input = require_maps(resolved, "parrondo");

    json report;
    if (auto* sys1 = std::get_if<PeriodicSystem1D>(&input.system)) {
        const ParrondoReport1D r = detect_parrondo_1d(*sys1);
        report = parrondo_report_json(r);
        if (!as_json) {
            for (std::size_t i = 0; i < r.per_map.size(); ++i)
                std::cout << "map " << i + 1 << ": " << jet_text(sys1->maps()[i]) << "  -> "
                          << stability_name(r.per_map[i].kind) << "\n";
            std::cout << "composition: " << jet_text(r.composition) << "  -> "
                      << stability_name(r.composition_verdict.kind) << "\n";
        }
    } else {
        const ParrondoReport2D r = detect_parrondo_2d(std::get<PeriodicSystem2D>(input.system), tol);
        report = parrondo_report_json(r);
        if (!as_json) {
            for (std::size_t i = 0; i < r.per_map.size(); ++i)
                std::cout << "map " << i + 1 << ": V1 = " << r.per_map[i].v1 << "  -> "
                          << planar_stability_name(r.per_map[i].verdict) << "\n";
            std::cout << "composition: V1 = " << r.composition_result.v1 << "  -> "
                      << planar_stability_name(r.composition_result.verdict) << "\n";
        }
    }
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << "paradox: " << report["paradox"].get<std::string>() << "\n";
    return 0;
}

// --------------------------------------------------------------- simulate --

std::vector<double> parse_x0(const std::string& text, int dimension) {
    std::vector<double> x;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            x.push_back(std::stod(part));
        } catch (...) {
            throw InputError("bad --x0 component: '" + part + "'");
        }
    }
    if (static_cast<int>(x.size()) != dimension)
        throw InputError("--x0 needs " + std::to_string(dimension) + " comma-separated values");
    return x;
}

void write_trace(const std::string& path, const OrbitResult& orbit, int period, int dimension) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << "step,map_index";
    for (int d = 1; d <= dimension; ++d) out << ",x" << d;
    out << "\n";
    out.precision(17);
    for (const auto& [step, point] : orbit.trace) {
        out << step << "," << (step == 0 ? 0 : static_cast<int>((step - 1) % period) + 1);
        for (double v : point) out << "," << v;
        out << "\n";
    }
}

int cmd_simulate(const std::string& input_arg, const std::optional<std::string>& x0_text,
                 const SimConfig& cfg, const std::string& trace_path, long unbounded_steps,
                 bool as_json) {
    Resolved resolved = resolve_input(input_arg);

    if (std::holds_alternative<UnboundedTag>(resolved.payload)) {
        const UnboundedDemo demo = unbounded_demo(static_cast<int>(unbounded_steps));
        if (as_json) {
            json j = unbounded_json(demo);
            j["residuals"] = demo.residuals;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        std::cout << "a0 = " << demo.a0 << "  (f0(1) = " << demo.f0_at_1 << ")\n";
        std::cout << "n\ty_n\ty_{n+1}\t|f_n(y_n) - y_{n+1}|\n";
        for (std::size_t n = 0; n < demo.residuals.size(); ++n) {
            const double yn = (n % 2 == 0 ? 1.0 : -1.0) * (double(n) + 1);
            const double yn1 = ((n + 1) % 2 == 0 ? 1.0 : -1.0) * (double(n) + 2);
            std::cout << n << "\t" << yn << "\t" << yn1 << "\t" << demo.residuals[n] << "\n";
        }
        std::cout << "max residual: " << demo.max_residual << "\n";
        return 0;
    }

    const SimSystem system = [&] {
        if (auto* mats = std::get_if<std::vector<Matrix2>>(&resolved.payload))
            return SimSystem::from_matrices(*mats);
        auto& input = std::get<MapInput>(resolved.payload);
        if (auto* sys1 = std::get_if<PeriodicSystem1D>(&input.system)) return SimSystem::from(*sys1);
        return SimSystem::from(std::get<PeriodicSystem2D>(input.system));
    }();

    if (x0_text) {
        const OrbitResult orbit =
            iterate_orbit(system, parse_x0(*x0_text, system.dimension()), cfg, !trace_path.empty());
        if (!trace_path.empty()) write_trace(trace_path, orbit, system.period(), system.dimension());
        if (as_json)
            std::cout << orbit_json(orbit).dump(2) << "\n";
        else
            std::cout << "status: " << orbit_status_name(orbit.status) << " at iteration "
                      << orbit.iterations << "\nfinal radius: " << orbit.final_radius
                      << "\ntrend: " << trend_name(orbit.trend) << "\n";
        return 0;
    }

    const EmpiricalReport report = empirical_report(system, cfg);
    if (as_json) {
        std::cout << empirical_json(report).dump(2) << "\n";
        return 0;
    }
    int converged = 0, escaped = 0, maxed = 0;
    for (const OrbitResult& r : report.orbits) {
        if (r.status == OrbitStatus::Converged) ++converged;
        if (r.status == OrbitStatus::Escaped) ++escaped;
        if (r.status == OrbitStatus::MaxedOut) ++maxed;
    }
    std::cout << "samples: " << report.orbits.size() << " (converged " << converged << ", escaped "
              << escaped << ", maxed-out " << maxed << ")\n";
    std::cout << "empirical verdict: " << empirical_name(report.verdict) << "\n";
    return 0;
}

// ---------------------------------------------------------------- gallery --

int cmd_gallery(const std::string& name, bool all, bool as_json) {
    const GalleryReport report = all ? gallery_run_all() : gallery_run({name});
    if (as_json) {
        std::cout << gallery_report_json(report).dump(2) << "\n";
        return 0;
    }
    for (const EntryCheck& entry : report.entries) {
        std::cout << entry.name << ": " << (entry.passed ? "PASS" : "FAIL") << "\n";
        if (!all) {
            for (const CheckRow& row : entry.rows)
                std::cout << "  " << (row.ok ? "  " : "! ") << row.label << ": expected "
                          << row.expected << ", computed " << row.computed << "\n";
            std::cout << "  " << gallery_get(entry.name).summary << "\n";
        } else {
            for (const std::string& diff : entry.diffs) std::cout << "  ! " << diff << "\n";
        }
    }
    std::cout << (report.all_passed ? "all entries pass" : "FAILURES present") << "\n";
    return 0;
}

// -------------------------------------------------------------- construct --

int cmd_construct_1d(const std::string& a22, const std::string& a1sq, const std::string& a2sq,
                     const std::string& a3sq, const std::string& a23, const std::string& a4,
                     const std::string& out_path) {
    const PeriodicSystem1D sys =
        construct_1d_triple(parse_rational(a22), parse_rational(a1sq), parse_rational(a2sq),
                            parse_rational(a3sq), parse_rational(a23), parse_rational(a4));
    emit(system_to_json(sys), out_path);
    return 0;
}

int cmd_construct_2d(double t, double s, double u, const std::string& out_path) {
    emit(system_to_json(construct_2d_pair(t, s, u)), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability of common fixed points of periodic systems of maps"};
    app.require_subcommand(1);

    std::string input, x0_text, trace_path, out_path, gallery_name;
    bool as_json = false, gallery_all_flag = false;
    double tol = 0;
    SimConfig cfg;
    long unbounded_steps = 50;
    int map_index = 0;
    std::string a22, a1sq = "0", a2sq = "0", a3sq = "0", a23 = "2", a4 = "0";
    double t = 0, s = 0, u = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "classify one map or a composition");
    analyze->add_option("input", input, "map file or gallery entry name")->required();
    analyze->add_option("--map", map_index, "1-based map index inside a system (default: composition)");
    analyze->add_option("--tol", tol, "zero tolerance for planar sign tests");
    analyze->add_flag("--json", as_json, "machine-readable report");

    CLI::App* parrondo_cmd = app.add_subcommand("parrondo", "per-map and composition verdicts");
    parrondo_cmd->add_option("input", input, "system file or gallery entry name")->required();
    parrondo_cmd->add_option("--tol", tol, "zero tolerance for planar sign tests");
    parrondo_cmd->add_flag("--json", as_json, "machine-readable report");

    CLI::App* simulate = app.add_subcommand("simulate", "orbit iteration and empirical verdicts");
    simulate->add_option("input", input, "map file or gallery entry name")->required();
    simulate->add_option("--x0", x0_text, "initial point (comma-separated); runs a single orbit");
    simulate->add_option("--iters", cfg.max_iters, "maximum iterations (or table length for 'unbounded')");
    simulate->add_option("--escape", cfg.escape_radius, "escape radius");
    simulate->add_option("--radius", cfg.initial_radius, "initial sample radius");
    simulate->add_option("--converge", cfg.converge_radius, "convergence radius");
    simulate->add_option("--samples", cfg.n_samples, "number of sample orbits");
    simulate->add_option("--trace", trace_path, "write a CSV orbit trace (single-orbit mode)");
    simulate->add_flag("--json", as_json, "machine-readable report");

    CLI::App* gallery = app.add_subcommand("gallery", "reproduce the example gallery");
    gallery->add_option("name", gallery_name, "entry name");
    gallery->add_flag("--all", gallery_all_flag, "run every entry");
    gallery->add_flag("--json", as_json, "machine-readable report");

    CLI::App* construct = app.add_subcommand("construct", "emit parametric example systems");
    construct->require_subcommand(1);
    CLI::App* one_d = construct->add_subcommand("one-d", "three 1-D maps with prescribed constants");
    one_d->add_option("--a22", a22, "quadratic coefficient of the second map")->required();
    one_d->add_option("--A1sq", a1sq, "A_1^2 (V5 of map 1 is -2 A_1^2)");
    one_d->add_option("--A2sq", a2sq, "A_2^2");
    one_d->add_option("--A3sq", a3sq, "A_3^2");
    one_d->add_option("--a23", a23, "quadratic coefficient of the third map");
    one_d->add_option("--a4", a4, "shared quartic coefficient");
    one_d->add_option("--out", out_path, "output file (default stdout)");
    CLI::App* two_d = construct->add_subcommand("two-d", "planar pair from the (t, s, u) family");
    two_d->add_option("--t", t, "Re a20 of the first map")->required();
    two_d->add_option("--s", s, "Im a20 of the first map")->required();
    two_d->add_option("--u", u, "z^2 zbar coefficient of the second map")->required();
    two_d->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (tol == 0) tol = tol_default();

        if (*analyze) return cmd_analyze(input, map_index, tol, as_json);
        if (*parrondo_cmd) return cmd_parrondo(input, tol, as_json);
        if (*simulate) {
            std::optional<std::string> x0;
            if (simulate->count("--x0")) x0 = x0_text;
            if (simulate->count("--iters")) unbounded_steps = cfg.max_iters;
            return cmd_simulate(input, x0, cfg, trace_path, unbounded_steps, as_json);
        }
        if (*gallery) {
            if (!gallery_all_flag && gallery_name.empty())
                throw InputError("gallery needs an entry name or --all");
            return cmd_gallery(gallery_name, gallery_all_flag, as_json);
        }
        if (*one_d) return cmd_construct_1d(a22, a1sq, a2sq, a3sq, a23, a4, out_path);
        if (*two_d) return cmd_construct_2d(t, s, u, out_path);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
