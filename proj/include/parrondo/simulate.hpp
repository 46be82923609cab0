#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "parrondo/errors.hpp"
#include "parrondo/jet1d.hpp"
#include "parrondo/periodic.hpp"
#include "parrondo/planar.hpp"

namespace parrondo {

/// Knobs for orbit iteration. The defaults match the CLI defaults.
struct SimConfig {
    long max_iters = 1'000'000;
    double escape_radius = 0.5;
    double converge_radius = 1e-10;
    double initial_radius = 1e-2;
    int n_samples = 16;

    void validate() const {
        if (!(0 < converge_radius && converge_radius < initial_radius &&
              initial_radius < escape_radius))
            throw InputError("radii must satisfy 0 < converge < initial < escape");
        if (max_iters < 1 || n_samples < 1) throw InputError("iteration and sample counts must be positive");
    }
};

enum class OrbitStatus { Converged, Escaped, MaxedOut };

/// Direction of the stroboscopic radius drift over a maxed-out run. Decided
/// by strictly monotone windowed extrema with a floor well above the rounding
/// drift a neutral orbit can accumulate, so polynomially slow dynamics are
/// still recognized without ever certifying a neutral one.
enum class RadialTrend { Contracting, Expanding, Indeterminate };

struct OrbitResult {
    OrbitStatus status;
    long iterations = 0;
    bool non_finite = false;
    RadialTrend trend = RadialTrend::Indeterminate;
    double final_radius = 0.0;
    std::vector<std::pair<long, std::vector<double>>> trace;  // (step, point), sampled
};

enum class EmpiricalVerdict { AttractingAll, RepellingAll, Mixed, Inconclusive };

inline const char* empirical_name(EmpiricalVerdict v) {
    switch (v) {
        case EmpiricalVerdict::AttractingAll: return "AttractingAll";
        case EmpiricalVerdict::RepellingAll: return "RepellingAll";
        case EmpiricalVerdict::Mixed: return "Mixed";
        case EmpiricalVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace detail {

struct System1DPayload {
    std::vector<std::vector<double>> maps;  // per map: a_1..a_N
};

struct System2DPayload {
    std::vector<PlanarPolyMap> maps;
};

struct Linear2DPayload {
    std::vector<Matrix2> mats;
};

struct ProductPayload {
    std::variant<System1DPayload, System2DPayload> base;
    int copies;
};

inline double horner(const std::vector<double>& c, double x) {
    double acc = 0;
    for (std::size_t k = c.size(); k > 0; --k) acc = c[k - 1] + x * acc;
    return acc * x;
}

inline std::vector<double> jet_to_doubles(const Jet1D& f) {
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(f.order()));
    for (int k = 1; k <= f.order(); ++k) c.push_back(to_double(f.coeff(k)));
    return c;
}

}  // namespace detail

/// Iteration-ready view of any composition-capable system: the periodic maps
/// in application order, evaluated in double precision.
class SimSystem {
public:
    static SimSystem from(const PeriodicSystem1D& sys) {
        detail::System1DPayload p;
        for (const Jet1D& f : sys.maps()) p.maps.push_back(detail::jet_to_doubles(f));
        const int period = static_cast<int>(p.maps.size());
        return SimSystem(std::move(p), 1, period);
    }

    static SimSystem from(const Jet1D& f) { return from(PeriodicSystem1D{{f}}); }

    static SimSystem from(const PeriodicSystem2D& sys) {
        return SimSystem(detail::System2DPayload{sys.maps()}, 2, sys.size());
    }

    static SimSystem from(const PlanarPolyMap& f) { return from(PeriodicSystem2D{{f}}); }

    static SimSystem from(const ProductSystem& lift) {
        if (const auto* b1 = std::get_if<PeriodicSystem1D>(&lift.base)) {
            detail::System1DPayload p;
            for (const Jet1D& f : b1->maps()) p.maps.push_back(detail::jet_to_doubles(f));
            const int period = static_cast<int>(p.maps.size());
            return SimSystem(detail::ProductPayload{std::move(p), lift.copies}, lift.dimension(),
                             period);
        }
        const auto& b2 = std::get<PeriodicSystem2D>(lift.base);
        return SimSystem(detail::ProductPayload{detail::System2DPayload{b2.maps()}, lift.copies},
                         lift.dimension(), b2.size());
    }

    static SimSystem from_matrices(const std::vector<Matrix2>& mats) {
        if (mats.empty()) throw InputError("need at least one matrix");
        return SimSystem(detail::Linear2DPayload{mats}, 2, static_cast<int>(mats.size()));
    }

    int dimension() const { return dimension_; }
    int period() const { return period_; }

    void apply(int map_index, std::vector<double>& state) const {
        std::visit([&](const auto& payload) { apply_impl(payload, map_index, state); }, impl_);
    }

    /// Sign-uniform (1-D) or angularly uniform (planar) start points at the
    /// given distance from the origin; product lifts replicate the base
    /// pattern per block, scaled to keep the requested norm.
    std::vector<std::vector<double>> initial_points(int n, double radius) const {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < n; ++i) pts.push_back(initial_point(i, n, radius));
        return pts;
    }

private:
    using Impl = std::variant<detail::System1DPayload, detail::System2DPayload,
                              detail::Linear2DPayload, detail::ProductPayload>;

    SimSystem(Impl impl, int dimension, int period)
        : impl_(std::move(impl)), dimension_(dimension), period_(period) {}

    static void apply_impl(const detail::System1DPayload& p, int k, std::vector<double>& s) {
        s[0] = detail::horner(p.maps[static_cast<std::size_t>(k)], s[0]);
    }

    static void apply_impl(const detail::System2DPayload& p, int k, std::vector<double>& s) {
        const auto v = p.maps[static_cast<std::size_t>(k)].eval(s[0], s[1]);
        s[0] = v[0];
        s[1] = v[1];
    }

    static void apply_impl(const detail::Linear2DPayload& p, int k, std::vector<double>& s) {
        const Matrix2& m = p.mats[static_cast<std::size_t>(k)];
        const double x = s[0], y = s[1];
        s[0] = m.a * x + m.b * y;
        s[1] = m.c * x + m.d * y;
    }

    static void apply_impl(const detail::ProductPayload& p, int k, std::vector<double>& s) {
        if (const auto* b1 = std::get_if<detail::System1DPayload>(&p.base)) {
            for (double& x : s) x = detail::horner(b1->maps[static_cast<std::size_t>(k)], x);
            return;
        }
        const auto& b2 = std::get<detail::System2DPayload>(p.base);
        for (std::size_t off = 0; off + 1 < s.size(); off += 2) {
            const auto v = b2.maps[static_cast<std::size_t>(k)].eval(s[off], s[off + 1]);
            s[off] = v[0];
            s[off + 1] = v[1];
        }
    }

    std::vector<double> initial_point(int i, int n, double radius) const {
        const bool planar_base =
            std::holds_alternative<detail::System2DPayload>(impl_) ||
            std::holds_alternative<detail::Linear2DPayload>(impl_) ||
            (std::holds_alternative<detail::ProductPayload>(impl_) &&
             std::holds_alternative<detail::System2DPayload>(std::get<detail::ProductPayload>(impl_).base));
        std::vector<double> x(static_cast<std::size_t>(dimension_), 0.0);
        if (!planar_base) {
            const int copies = dimension_;
            const double v = (i % 2 == 0 ? radius : -radius) / std::sqrt(double(copies));
            for (double& c : x) c = v;
        } else {
            const int copies = dimension_ / 2;
            const double theta = 2.0 * M_PI * i / n;
            const double scale = radius / std::sqrt(double(copies));
            for (int b = 0; b < copies; ++b) {
                x[static_cast<std::size_t>(2 * b)] = scale * std::cos(theta);
                x[static_cast<std::size_t>(2 * b + 1)] = scale * std::sin(theta);
            }
        }
        return x;
    }

    Impl impl_;
    int dimension_;
    int period_;
};

namespace detail {

inline double norm(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline bool finite(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

/// Trend of a stroboscopic radius series over a full maxed-out run: split into
/// 8 windows and demand strictly monotone window maxima (contraction) or
/// minima (expansion), plus a total drift above the numerical noise floor.
inline RadialTrend radial_trend(const std::vector<double>& radii, long total_steps) {
    constexpr int kWindows = 8;
    if (radii.size() < 4 * kWindows) return RadialTrend::Indeterminate;
    double max_w[kWindows], min_w[kWindows];
    const std::size_t per = radii.size() / kWindows;
    for (int w = 0; w < kWindows; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * per;
        const std::size_t hi = (w == kWindows - 1) ? radii.size() : lo + per;
        max_w[w] = *std::max_element(radii.begin() + lo, radii.begin() + hi);
        min_w[w] = *std::min_element(radii.begin() + lo, radii.begin() + hi);
    }
    // Rounding drift of a neutral orbit stays orders of magnitude below this
    // floor, so it can never fake a certified drift. Monotonicity is
    // non-strict: an orbit repelled from the origin may settle on another
    // invariant set and hold its radius there.
    const double rel_floor = std::max(1e-8, static_cast<double>(total_steps) * 1e-14);
    bool contracting = max_w[0] > 0 && (max_w[0] - max_w[kWindows - 1]) >= rel_floor * max_w[0];
    bool expanding = min_w[0] > 0 && (min_w[kWindows - 1] - min_w[0]) >= rel_floor * min_w[0];
    for (int w = 0; w + 1 < kWindows; ++w) {
        contracting = contracting && max_w[w + 1] <= max_w[w];
        expanding = expanding && min_w[w + 1] >= min_w[w];
    }
    if (contracting) return RadialTrend::Contracting;
    if (expanding) return RadialTrend::Expanding;
    return RadialTrend::Indeterminate;
}

}  // namespace detail

/// Iterates the periodic system from x0, one map per step, until the orbit is
/// within converge_radius or beyond escape_radius at a stroboscopic
/// observation (every period steps), or until max_iters. Convergence and
/// escape are hard certificates; a maxed-out result carries the radial trend
/// instead. A non-finite iterate counts as escaped with the non_finite flag.
inline OrbitResult iterate_orbit(const SimSystem& system, std::vector<double> x0,
                                 const SimConfig& cfg, bool record_trace = false) {
    cfg.validate();
    if (static_cast<int>(x0.size()) != system.dimension())
        throw InputError("initial point has wrong dimension");
    if (!detail::finite(x0)) throw InputError("initial point must be finite");

    OrbitResult result;
    result.status = OrbitStatus::MaxedOut;
    const long trace_stride = record_trace ? std::max(1L, cfg.max_iters / 100000) : 0;
    if (record_trace) result.trace.emplace_back(0, x0);

    double r = detail::norm(x0);
    result.final_radius = r;
    if (r <= cfg.converge_radius) {
        result.status = OrbitStatus::Converged;
        return result;
    }

    std::vector<double> radii;
    radii.reserve(8192);
    std::size_t stride = 1, countdown = 1;

    const int period = system.period();
    for (long iter = 1; iter <= cfg.max_iters; ++iter) {
        system.apply(static_cast<int>((iter - 1) % period), x0);
        if (!detail::finite(x0)) {
            result.status = OrbitStatus::Escaped;
            result.iterations = iter;
            result.non_finite = true;
            return result;
        }
        if (record_trace && (iter % trace_stride == 0 || iter == cfg.max_iters))
            result.trace.emplace_back(iter, x0);
        if (iter % period != 0) continue;

        r = detail::norm(x0);
        result.final_radius = r;
        result.iterations = iter;
        if (r <= cfg.converge_radius) {
            result.status = OrbitStatus::Converged;
            return result;
        }
        if (r >= cfg.escape_radius) {
            result.status = OrbitStatus::Escaped;
            return result;
        }
        if (--countdown == 0) {
            radii.push_back(r);
            countdown = stride;
            if (radii.size() == 8192) {  // halve the sampling rate, keep order
                for (std::size_t k = 0; k < 4096; ++k) radii[k] = radii[2 * k + 1];
                radii.resize(4096);
                stride *= 2;
                countdown = stride;
            }
        }
    }
    result.iterations = cfg.max_iters;
    result.trend = detail::radial_trend(radii, cfg.max_iters);
    return result;
}

struct EmpiricalReport {
    EmpiricalVerdict verdict;
    std::vector<OrbitResult> orbits;
};

/// Runs n_samples orbits from distance initial_radius. Hard-converged or
/// contracting-trend orbits count as attracting, hard-escaped or
/// expanding-trend ones as repelling; a trendless maxed-out orbit makes the
/// whole answer Inconclusive.
inline EmpiricalReport empirical_report(const SimSystem& system, const SimConfig& cfg) {
    cfg.validate();
    EmpiricalReport report{EmpiricalVerdict::Inconclusive, {}};
    bool any_attract = false, any_repel = false, any_unknown = false;
    for (auto& x0 : system.initial_points(cfg.n_samples, cfg.initial_radius)) {
        report.orbits.push_back(iterate_orbit(system, std::move(x0), cfg));
        const OrbitResult& r = report.orbits.back();
        if (r.status == OrbitStatus::Converged ||
            (r.status == OrbitStatus::MaxedOut && r.trend == RadialTrend::Contracting))
            any_attract = true;
        else if (r.status == OrbitStatus::Escaped ||
                 (r.status == OrbitStatus::MaxedOut && r.trend == RadialTrend::Expanding))
            any_repel = true;
        else
            any_unknown = true;
    }
    if (any_unknown)
        report.verdict = EmpiricalVerdict::Inconclusive;
    else if (any_attract && !any_repel)
        report.verdict = EmpiricalVerdict::AttractingAll;
    else if (any_repel && !any_attract)
        report.verdict = EmpiricalVerdict::RepellingAll;
    else
        report.verdict = EmpiricalVerdict::Mixed;
    return report;
}

inline EmpiricalVerdict empirical_verdict(const SimSystem& system, const SimConfig& cfg) {
    return empirical_report(system, cfg).verdict;
}

/// The non-periodic construction with a GAS origin for every map but an
/// unbounded solution y_n = (-1)^n (n+1):
///
///   g_a(x) = a (exp(-x/a) - 1),  f_0 = g_{a0} with g_{a0}(1) = -2,
///   h_n(x) = ((-1)^n / 3)((2n+3) x + n),  f_n = h_n o f_0 o h_n^{-1}.
struct UnboundedDemo {
    double a0;
    double f0_at_1;
    // |f_n(y_n) - y_{n+1}| for n = 0..n_max, each step checked from the exact
    // y_n. The orbit amplifies errors by |f_0'(1)| ~ 3.5 per step, so a plain
    // float iteration drifts; the step-wise residuals are the meaningful
    // verification that y solves the system.
    std::vector<double> residuals;
    double max_residual;
};

namespace detail {

inline double g_aux(double a, double x) { return a * (std::exp(-x / a) - 1.0); }

inline double solve_a0() {
    // g_a(1) = -2 on a in (-1, -0.5); bisection then a secant polish.
    const auto f = [](double a) { return g_aux(a, 1.0) + 2.0; };
    double lo = -1.0, hi = -0.5;
    if (!(f(lo) > 0 && f(hi) < 0)) throw RootNotBracketed();
    for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? lo : hi) = mid;
    }
    double a = 0.5 * (lo + hi), b = lo;
    for (int k = 0; k < 4; ++k) {
        const double fa = f(a), fb = f(b);
        if (fa == fb) break;
        const double next = a - fa * (a - b) / (fa - fb);
        b = a;
        a = next;
    }
    return a;
}

}  // namespace detail

inline UnboundedDemo unbounded_demo(int n_max) {
    if (n_max < 1) throw InputError("n_max must be at least 1");
    UnboundedDemo demo{};
    demo.a0 = detail::solve_a0();
    demo.f0_at_1 = detail::g_aux(demo.a0, 1.0);

    const auto y = [](int n) { return (n % 2 == 0 ? 1.0 : -1.0) * (n + 1); };
    const auto h = [](int n, double x) {
        return ((n % 2 == 0 ? 1.0 : -1.0) / 3.0) * ((2.0 * n + 3.0) * x + n);
    };
    const auto h_inv = [](int n, double v) {
        return (3.0 * (n % 2 == 0 ? 1.0 : -1.0) * v - n) / (2.0 * n + 3.0);
    };
    const auto f = [&](int n, double x) {
        if (n == 0) return detail::g_aux(demo.a0, x);
        return h(n, detail::g_aux(demo.a0, h_inv(n, x)));
    };

    demo.max_residual = 0;
    for (int n = 0; n <= n_max; ++n) {
        demo.residuals.push_back(std::abs(f(n, y(n)) - y(n + 1)));
        demo.max_residual = std::max(demo.max_residual, demo.residuals.back());
    }
    return demo;
}

}  // namespace parrondo
