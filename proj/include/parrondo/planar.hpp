#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "parrondo/errors.hpp"

namespace parrondo {

using Complex = std::complex<double>;

inline constexpr double kDefaultZeroTol = 1e-9;

namespace detail {

// Bivariate polynomial of total degree <= 3 with complex coefficients,
// truncating products at degree 3. Used both for (z, zbar) and (x, y)
// expansions.
struct Poly2 {
    // slots ordered by total degree: (0,0) | (1,0),(0,1) | (2,0),(1,1),(0,2) |
    // (3,0),(2,1),(1,2),(0,3)
    std::array<Complex, 10> c{};

    static constexpr int index(int e1, int e2) {
        constexpr int offset[4] = {0, 1, 3, 6};
        return offset[e1 + e2] + e2;
    }

    Complex get(int e1, int e2) const { return c[static_cast<std::size_t>(index(e1, e2))]; }
    void add(int e1, int e2, Complex v) { c[static_cast<std::size_t>(index(e1, e2))] += v; }

    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (int d1 = 0; d1 <= 3; ++d1)
            for (int i1 = 0; i1 <= d1; ++i1) {
                const Complex av = a.get(d1 - i1, i1);
                if (av == Complex{}) continue;
                for (int d2 = 0; d1 + d2 <= 3; ++d2)
                    for (int i2 = 0; i2 <= d2; ++i2) {
                        const Complex bv = b.get(d2 - i2, i2);
                        if (bv == Complex{}) continue;
                        r.add(d1 + d2 - i1 - i2, i1 + i2, av * bv);
                    }
            }
        return r;
    }

    friend Poly2 operator*(Complex s, const Poly2& a) {
        Poly2 r = a;
        for (auto& v : r.c) v *= s;
        return r;
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] += b.c[k];
        return r;
    }

    Poly2 pow(int e) const {
        Poly2 r;
        r.add(0, 0, 1.0);
        for (int k = 0; k < e; ++k) r = r * *this;
        return r;
    }
};

}  // namespace detail

/// Real planar polynomial map (P(x,y), Q(x,y)) of total degree <= 3 with no
/// constant term. The analysis entry points additionally require the linear
/// part to be a non-parabolic rotation; the container itself is permissive so
/// that files can be parsed before validation.
class PlanarPolyMap {
public:
    double p(int i, int j) const { return p_[slot(i, j)]; }
    double q(int i, int j) const { return q_[slot(i, j)]; }
    void set_p(int i, int j, double v) { p_[slot(i, j)] = v; }
    void set_q(int i, int j, double v) { q_[slot(i, j)] = v; }

    std::array<double, 2> eval(double x, double y) const {
        double px = 0, qx = 0;
        for (int d = 1; d <= 3; ++d)
            for (int j = 0; j <= d; ++j) {
                const double mono = ipow(x, d - j) * ipow(y, j);
                px += p(d - j, j) * mono;
                qx += q(d - j, j) * mono;
            }
        return {px, qx};
    }

    /// Iterates over all stored exponent pairs, for serialization.
    template <typename Fn>
    void for_each_term(Fn&& fn) const {
        for (int d = 1; d <= 3; ++d)
            for (int j = 0; j <= d; ++j) fn(d - j, j, p(d - j, j), q(d - j, j));
    }

private:
    static std::size_t slot(int i, int j) {
        constexpr int offset[4] = {0, 0, 2, 5};  // degree-1 entries first
        return static_cast<std::size_t>(offset[i + j] + j);
    }
    static double ipow(double b, int e) {
        double r = 1;
        for (int k = 0; k < e; ++k) r *= b;
        return r;
    }
    std::array<double, 9> p_{};
    std::array<double, 9> q_{};
};

/// Planar map in complex coordinates:
///   g(z, zbar) = lambda z + sum_{2 <= m+j <= 3} a_{mj} z^m zbar^j
/// with |lambda| = 1. Ellipticity (lambda != +-1) and non-resonance are
/// checked by the analysis functions, so compositions are always
/// representable.
struct ComplexJet2 {
    Complex lambda{1.0, 0.0};

    Complex a(int m, int j) const { return a_[slot(m, j)]; }
    void set_a(int m, int j, Complex v) { a_[slot(m, j)] = v; }

    template <typename Fn>
    void for_each_a(Fn&& fn) const {
        for (int d = 2; d <= 3; ++d)
            for (int j = 0; j <= d; ++j) fn(d - j, j, a(d - j, j));
    }

private:
    static std::size_t slot(int m, int j) {
        const int d = m + j;
        return static_cast<std::size_t>((d == 2 ? 0 : 3) + j);
    }
    std::array<Complex, 7> a_{};
};

enum class PlanarStability { LAS, Repeller, UndeterminedByB1 };

inline const char* planar_stability_name(PlanarStability s) {
    switch (s) {
        case PlanarStability::LAS: return "LAS";
        case PlanarStability::Repeller: return "Repeller";
        case PlanarStability::UndeterminedByB1: return "UndeterminedByB1";
    }
    return "?";
}

/// First Birkhoff constant and the verdict its real part supports.
struct BirkhoffResult {
    Complex b1;
    double v1;
    bool resonant;
    PlanarStability verdict;
};

/// True iff lambda^l is within zero_tol of 1 for some 1 <= l <= max_order.
inline bool resonance_check(Complex lambda, int max_order, double zero_tol = kDefaultZeroTol) {
    if (std::abs(std::abs(lambda) - 1.0) > zero_tol) throw NotOnUnitCircle();
    Complex power = lambda;
    for (int l = 1; l <= max_order; ++l) {
        if (std::abs(power - Complex{1.0, 0.0}) <= zero_tol) return true;
        power *= lambda;
    }
    return false;
}

/// Substitutes x = (z + zbar)/2, y = (z - zbar)/(2i) into P + iQ and collects
/// powers of z and zbar. Requires the linear part in rotation form
/// (cos t, -sin t; sin t, cos t) with cos t != +-1.
inline ComplexJet2 real_to_complex(const PlanarPolyMap& f, double zero_tol = kDefaultZeroTol) {
    const double c = f.p(1, 0);
    const double s = f.q(1, 0);
    if (std::abs(f.p(0, 1) + s) > zero_tol || std::abs(f.q(0, 1) - c) > zero_tol ||
        std::abs(c * c + s * s - 1.0) > zero_tol)
        throw NotEllipticRotationForm("linear part is not a rotation matrix");
    const Complex lambda{c, s};
    if (std::abs(lambda - Complex{1.0, 0.0}) <= zero_tol ||
        std::abs(lambda + Complex{1.0, 0.0}) <= zero_tol)
        throw NotEllipticRotationForm(
            "parabolic linear part (eigenvalues +-1) is excluded from the elliptic analysis");

    detail::Poly2 x;  // (z + zbar)/2
    x.add(1, 0, {0.5, 0.0});
    x.add(0, 1, {0.5, 0.0});
    detail::Poly2 y;  // (z - zbar)/(2i)
    y.add(1, 0, {0.0, -0.5});
    y.add(0, 1, {0.0, 0.5});

    detail::Poly2 g;
    f.for_each_term([&](int i, int j, double pc, double qc) {
        if (pc == 0.0 && qc == 0.0) return;
        const detail::Poly2 mono = x.pow(i) * y.pow(j);
        g = g + (Complex{pc, qc} * mono);
    });

    ComplexJet2 out;
    out.lambda = g.get(1, 0);
    for (int d = 2; d <= 3; ++d)
        for (int j = 0; j <= d; ++j) out.set_a(d - j, j, g.get(d - j, j));
    return out;
}

/// f(x, y) = (Re g(x + yi, x - yi), Im g(x + yi, x - yi)); exact inverse of
/// real_to_complex up to rounding.
inline PlanarPolyMap complex_to_real(const ComplexJet2& g) {
    detail::Poly2 z;  // x + iy
    z.add(1, 0, {1.0, 0.0});
    z.add(0, 1, {0.0, 1.0});
    detail::Poly2 zbar;  // x - iy
    zbar.add(1, 0, {1.0, 0.0});
    zbar.add(0, 1, {0.0, -1.0});

    detail::Poly2 value = g.lambda * z;
    g.for_each_a([&](int m, int j, Complex a) {
        if (a == Complex{}) return;
        value = value + (a * (z.pow(m) * zbar.pow(j)));
    });

    PlanarPolyMap out;
    for (int d = 1; d <= 3; ++d)
        for (int j = 0; j <= d; ++j) {
            const Complex v = value.get(d - j, j);
            out.set_p(d - j, j, v.real());
            out.set_q(d - j, j, v.imag());
        }
    return out;
}

/// Degree-3 truncation of outer(inner(z, zbar)). The conjugate jet is formed
/// explicitly: conjugated coefficients with swapped exponents.
inline ComplexJet2 compose_complex(const ComplexJet2& outer, const ComplexJet2& inner) {
    detail::Poly2 w;
    w.add(1, 0, inner.lambda);
    inner.for_each_a([&](int m, int j, Complex a) { w.add(m, j, a); });

    detail::Poly2 wbar;
    wbar.add(0, 1, std::conj(inner.lambda));
    inner.for_each_a([&](int m, int j, Complex a) { wbar.add(j, m, std::conj(a)); });

    detail::Poly2 value = outer.lambda * w;
    outer.for_each_a([&](int m, int j, Complex a) {
        if (a == Complex{}) return;
        value = value + (a * (w.pow(m) * wbar.pow(j)));
    });

    ComplexJet2 out;
    out.lambda = value.get(1, 0);
    for (int d = 2; d <= 3; ++d)
        for (int j = 0; j <= d; ++j) out.set_a(d - j, j, value.get(d - j, j));
    return out;
}

/// First Birkhoff constant
///
///   B1 = P(g) / (lambda^2 (lambda - 1) (lambda^2 + lambda + 1)),
///   P(g) = (|a11|^2 + a21) l^4 - a11 (2 a20 - conj(a11)) l^3
///        + (2 |a02|^2 - a11 a20 + |a11|^2) l^2 - (a11 a20 + a21) l + a11 a20,
///
/// defined when lambda is not a root of unity of order <= 3. The verdict is
/// the sign of Re B1: negative LAS, positive repeller, zero (within tol)
/// undetermined.
inline BirkhoffResult birkhoff_b1(const ComplexJet2& g, double zero_tol = kDefaultZeroTol) {
    const Complex l = g.lambda;
    if (resonance_check(l, 3, zero_tol))
        throw ResonantEigenvalue("eigenvalue is a root of unity of order <= 3; B1 is undefined");
    const Complex a20 = g.a(2, 0);
    const Complex a11 = g.a(1, 1);
    const Complex a02 = g.a(0, 2);
    const Complex a21 = g.a(2, 1);
    const double n11 = std::norm(a11);
    const double n02 = std::norm(a02);
    const Complex p = (n11 + a21) * (l * l * l * l) - a11 * (2.0 * a20 - std::conj(a11)) * (l * l * l) +
                      (2.0 * n02 - a11 * a20 + n11) * (l * l) - (a11 * a20 + a21) * l + a11 * a20;
    const Complex b1 = p / (l * l * (l - 1.0) * (l * l + l + 1.0));
    const double v1 = b1.real();
    PlanarStability verdict = PlanarStability::UndeterminedByB1;
    if (v1 < -zero_tol)
        verdict = PlanarStability::LAS;
    else if (v1 > zero_tol)
        verdict = PlanarStability::Repeller;
    return {b1, v1, false, verdict};
}

inline BirkhoffResult classify_planar(const PlanarPolyMap& f, double zero_tol = kDefaultZeroTol) {
    return birkhoff_b1(real_to_complex(f, zero_tol), zero_tol);
}

}  // namespace parrondo
