#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "parrondo/errors.hpp"
#include "parrondo/rational.hpp"

namespace parrondo {

/// Truncated Taylor jet at the origin of a 1-D map fixing the origin:
///
///   f(x) = a_1 x + a_2 x^2 + ... + a_N x^N
///
/// There is no constant term; coeff(1) is the multiplier f'(0). All
/// coefficients are exact rationals and every operation below is closed over
/// them. Values are immutable after construction.
class Jet1D {
public:
    explicit Jet1D(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw EmptyCoefficients();
    }

    static Jet1D identity(int order) {
        std::vector<Rational> c(static_cast<std::size_t>(order), Rational(0));
        c[0] = 1;
        return Jet1D(std::move(c));
    }

    int order() const { return static_cast<int>(coeffs_.size()); }

    /// a_k for 1 <= k <= order().
    const Rational& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k - 1)]; }

    const Rational& multiplier() const { return coeffs_.front(); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Jet1D truncated(int order) const {
        std::vector<Rational> c(coeffs_.begin(), coeffs_.begin() + order);
        return Jet1D(std::move(c));
    }

    /// Zero-extends to the requested order (no-op if already at least as long).
    Jet1D padded(int order) const {
        if (order <= this->order()) return *this;
        std::vector<Rational> c = coeffs_;
        c.resize(static_cast<std::size_t>(order), Rational(0));
        return Jet1D(std::move(c));
    }

    bool operator==(const Jet1D&) const = default;

private:
    std::vector<Rational> coeffs_;  // coeffs_[k-1] holds a_k
};

inline Jet1D jet_from_coeffs(std::vector<Rational> coeffs) { return Jet1D(std::move(coeffs)); }

/// Exact evaluation of the jet polynomial by Horner's rule.
inline Rational jet_eval(const Jet1D& f, const Rational& x) {
    Rational acc = 0;
    for (int k = f.order(); k >= 1; --k) acc = f.coeff(k) + x * acc;
    return acc * x;
}

namespace detail {

// Product of two polynomials with zero constant term, truncated to degree
// `order`. Index k-1 holds the degree-k coefficient.
inline std::vector<Rational> truncated_product(const std::vector<Rational>& p,
                                               const std::vector<Rational>& q, int order) {
    std::vector<Rational> r(static_cast<std::size_t>(order), Rational(0));
    for (int i = 1; i <= order - 1; ++i) {
        const Rational& pi = p[static_cast<std::size_t>(i - 1)];
        if (pi == 0) continue;
        for (int j = 1; i + j <= order; ++j) {
            const Rational& qj = q[static_cast<std::size_t>(j - 1)];
            if (qj == 0) continue;
            r[static_cast<std::size_t>(i + j - 1)] += pi * qj;
        }
    }
    return r;
}

}  // namespace detail

/// Coefficients of outer(inner(x)), truncated to min(outer.order, inner.order).
inline Jet1D jet_compose(const Jet1D& outer, const Jet1D& inner) {
    const int order = std::min(outer.order(), inner.order());
    std::vector<Rational> base(inner.coeffs().begin(), inner.coeffs().begin() + order);
    std::vector<Rational> result(static_cast<std::size_t>(order), Rational(0));
    // power = inner^k, truncated; inner has valuation >= 1, so inner^k has
    // valuation >= k and the loop terminates at k = order.
    std::vector<Rational> power = base;
    for (int k = 1; k <= order; ++k) {
        const Rational& ak = outer.coeff(k);
        if (ak != 0) {
            for (int d = k; d <= order; ++d)
                result[static_cast<std::size_t>(d - 1)] += ak * power[static_cast<std::size_t>(d - 1)];
        }
        if (k < order) power = detail::truncated_product(power, base, order);
    }
    return Jet1D(std::move(result));
}

inline Jet1D jet_square(const Jet1D& f) { return jet_compose(f, f); }

/// Compositional inverse g with jet_compose(f, g) == identity up to f's order.
/// Solved coefficient by coefficient: the degree-k condition is triangular in
/// g's coefficients with pivot a_1.
inline Jet1D jet_inverse(const Jet1D& f) {
    if (f.multiplier() == 0) throw NonInvertibleJet();
    const int order = f.order();
    const Rational inv_a1 = Rational(1) / f.multiplier();
    std::vector<Rational> g(static_cast<std::size_t>(order), Rational(0));
    g[0] = inv_a1;
    for (int k = 2; k <= order; ++k) {
        // With g_k still zero, the degree-k coefficient of f(g(x)) is the
        // residual r_k; setting g_k = -r_k / a_1 cancels it.
        const Jet1D partial = jet_compose(f, Jet1D(g));
        g[static_cast<std::size_t>(k - 1)] = -partial.coeff(k) * inv_a1;
    }
    return Jet1D(std::move(g));
}

}  // namespace parrondo
