#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "parrondo/errors.hpp"
#include "parrondo/jet1d.hpp"
#include "parrondo/periodic.hpp"
#include "parrondo/planar.hpp"

namespace parrondo {

using nlohmann::json;

/// Parsed contents of a map file: a periodic system of either dimension.
/// A bare map file parses as a singleton system with the flag set.
struct MapInput {
    std::variant<PeriodicSystem1D, PeriodicSystem2D> system;
    bool singleton = false;
};

namespace mapfile {

inline constexpr double kSqrt3Half = 0.86602540378443864676;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

inline Rational parse_coeff_1d(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const InputError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected an integer or a rational string");
}

/// Planar coefficients are decimals, plus the four exact rotation tokens.
inline double parse_coeff_2d(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "1/2") return 0.5;
        if (s == "-1/2") return -0.5;
        if (s == "sqrt3/2") return kSqrt3Half;
        if (s == "-sqrt3/2") return -kSqrt3Half;
        fail(where, "unknown coefficient token '" + s + "' (allowed: 1/2, -1/2, sqrt3/2, -sqrt3/2)");
    }
    fail(where, "expected a number or a coefficient token");
}

inline Jet1D parse_map1d(const json& j, const std::string& where) {
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
        fail(where, "map1d needs a nonempty 'coeffs' array");
    std::vector<Rational> coeffs;
    for (std::size_t k = 0; k < j["coeffs"].size(); ++k)
        coeffs.push_back(
            parse_coeff_1d(j["coeffs"][k], where + ".coeffs[" + std::to_string(k) + "]"));
    return Jet1D(std::move(coeffs));
}

inline PlanarPolyMap parse_map2d(const json& j, const std::string& where) {
    PlanarPolyMap f;
    for (const char* side : {"P", "Q"}) {
        if (!j.contains(side) || !j[side].is_array())
            fail(where, std::string("map2d needs a '") + side + "' term array");
        for (std::size_t t = 0; t < j[side].size(); ++t) {
            const std::string term_where =
                where + "." + side + "[" + std::to_string(t) + "]";
            const json& term = j[side][t];
            if (!term.is_array() || term.size() != 3)
                fail(term_where, "expected a term [i, j, coeff]");
            if (!term[0].is_number_integer() || !term[1].is_number_integer())
                fail(term_where, "exponents must be integers");
            const int i = term[0].get<int>(), jj = term[1].get<int>();
            if (i < 0 || jj < 0 || i + jj < 1 || i + jj > 3)
                fail(term_where, "exponents must satisfy 1 <= i + j <= 3");
            const double c = parse_coeff_2d(term[2], term_where + "[2]");
            if (side[0] == 'P')
                f.set_p(i, jj, f.p(i, jj) + c);
            else
                f.set_q(i, jj, f.q(i, jj) + c);
        }
    }
    return f;
}

}  // namespace mapfile

inline MapInput parse_map_input(const json& j, const std::string& where = "input") {
    using mapfile::fail;
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail(where, "expected an object with a 'type' field");
    const std::string type = j["type"].get<std::string>();
    if (type == "map1d")
        return {PeriodicSystem1D{{mapfile::parse_map1d(j, where)}}, true};
    if (type == "map2d")
        return {PeriodicSystem2D{{mapfile::parse_map2d(j, where)}}, true};
    if (type != "system") fail(where, "unknown type '" + type + "'");

    if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
        fail(where, "system needs a nonempty 'maps' array");
    const json& maps = j["maps"];
    std::string kind;
    std::vector<Jet1D> jets;
    std::vector<PlanarPolyMap> planars;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const std::string map_where = where + ".maps[" + std::to_string(k) + "]";
        if (!maps[k].is_object() || !maps[k].contains("type") || !maps[k]["type"].is_string())
            fail(map_where, "expected a map object with a 'type' field");
        const std::string t = maps[k]["type"].get<std::string>();
        if (t != "map1d" && t != "map2d") fail(map_where, "unknown type '" + t + "'");
        if (kind.empty())
            kind = t;
        else if (kind != t)
            fail(map_where, "all maps in a system must have the same type");
        if (t == "map1d")
            jets.push_back(mapfile::parse_map1d(maps[k], map_where));
        else
            planars.push_back(mapfile::parse_map2d(maps[k], map_where));
    }
    if (kind == "map1d") return {PeriodicSystem1D{std::move(jets)}, false};
    return {PeriodicSystem2D{std::move(planars)}, false};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return j;
}

inline MapInput load_map_file(const std::string& path) {
    return parse_map_input(load_json_file(path), path);
}

/// Serialization. 1-D coefficients are written as exact rational strings; the
/// four rotation constants get their tokens back so files round-trip
/// bit-exactly.
inline json jet_to_json(const Jet1D& f) {
    json coeffs = json::array();
    for (int k = 1; k <= f.order(); ++k) coeffs.push_back(format_rational(f.coeff(k)));
    return json{{"type", "map1d"}, {"coeffs", std::move(coeffs)}};
}

inline json planar_to_json(const PlanarPolyMap& f) {
    const auto coeff_json = [](double c) -> json {
        if (c == 0.5) return "1/2";
        if (c == -0.5) return "-1/2";
        if (c == mapfile::kSqrt3Half) return "sqrt3/2";
        if (c == -mapfile::kSqrt3Half) return "-sqrt3/2";
        return c;
    };
    json p = json::array(), q = json::array();
    f.for_each_term([&](int i, int j, double pc, double qc) {
        if (pc != 0.0) p.push_back(json::array({i, j, coeff_json(pc)}));
        if (qc != 0.0) q.push_back(json::array({i, j, coeff_json(qc)}));
    });
    return json{{"type", "map2d"}, {"P", std::move(p)}, {"Q", std::move(q)}};
}

inline json system_to_json(const PeriodicSystem1D& sys) {
    json maps = json::array();
    for (const Jet1D& f : sys.maps()) maps.push_back(jet_to_json(f));
    return json{{"type", "system"}, {"maps", std::move(maps)}};
}

inline json system_to_json(const PeriodicSystem2D& sys) {
    json maps = json::array();
    for (const PlanarPolyMap& f : sys.maps()) maps.push_back(planar_to_json(f));
    return json{{"type", "system"}, {"maps", std::move(maps)}};
}

}  // namespace parrondo
