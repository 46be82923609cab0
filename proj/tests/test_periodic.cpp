#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "parrondo/periodic.hpp"
#include "support/generators.hpp"

using parrondo::Complex;
using parrondo::ComplexJet2;
using parrondo::Jet1D;
using parrondo::Matrix2;
using parrondo::Paradox;
using parrondo::ParrondoReport1D;
using parrondo::ParrondoReport2D;
using parrondo::PeriodicSystem1D;
using parrondo::PeriodicSystem2D;
using parrondo::PlanarStability;
using parrondo::Rational;
using parrondo::Stability1D;
using parrondo::composition_map_1d;
using parrondo::construct_1d_triple;
using parrondo::construct_2d_pair;
using parrondo::detect_parrondo_1d;
using parrondo::detect_parrondo_2d;
using parrondo::extend_with_padding_1d;
using parrondo::jet_inverse;
using parrondo::lift_product;
using parrondo::linear_spectrum_2x2;

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

Jet1D jet(std::vector<long> ints) {
    std::vector<Rational> c(ints.begin(), ints.end());
    return Jet1D(std::move(c));
}

PeriodicSystem1D f_system() {
    return PeriodicSystem1D{{jet({-1, 3, -9, 0, 164}), jet({-1, 5, -25, 0, 1259}), jet({-1, 2, -4, 0, 33})}};
}

PeriodicSystem1D g_system() {
    return PeriodicSystem1D{{jet({-1, 2, -4, 0, 31}), jet({-1, 5, -25, 0, 1241}), jet({-1, 3, -9, 0, 160})}};
}

}  // namespace

TEST_CASE("composition order follows the periodic set") {
    CHECK(composition_map_1d(f_system()) == jet({-1, 0, 0, 90, -48}));
    CHECK(composition_map_1d(g_system()) == jet({-1, 0, 0, 90, 48}));

    // Reversing the application order changes the quintic coefficient.
    const PeriodicSystem1D gs = g_system();
    const auto& g = gs.maps();
    const PeriodicSystem1D reversed{{g[2], g[1], g[0]}};
    CHECK(composition_map_1d(reversed) == jet({-1, 0, 0, 90, -72}));
}

TEST_CASE("fold consistency over concatenation") {
    gen::Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Jet1D> a, b;
        const int na = 1 + static_cast<int>(rng() % 3), nb = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < na; ++i) a.push_back(gen::random_jet(rng, 5, gen::small_rational(rng)));
        for (int i = 0; i < nb; ++i) b.push_back(gen::random_jet(rng, 5, gen::small_rational(rng)));
        std::vector<Jet1D> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        const Jet1D whole = composition_map_1d(PeriodicSystem1D{ab});
        const Jet1D parts = parrondo::jet_compose(composition_map_1d(PeriodicSystem1D{b}),
                                                  composition_map_1d(PeriodicSystem1D{a}));
        REQUIRE(whole == parts);
    }
    CHECK(composition_map_1d(PeriodicSystem1D{{jet({-1, 7})}}) == jet({-1, 7}));
}

TEST_CASE("parrondo detection on the 1-D example systems") {
    const ParrondoReport1D rep_f = detect_parrondo_1d(f_system());
    for (const auto& v : rep_f.per_map) CHECK(v.kind == Stability1D::LAS);
    CHECK(rep_f.composition_verdict.kind == Stability1D::Repeller);
    CHECK(rep_f.paradox == Paradox::LASToRepeller);

    const ParrondoReport1D rep_g = detect_parrondo_1d(g_system());
    for (const auto& v : rep_g.per_map) CHECK(v.kind == Stability1D::Repeller);
    CHECK(rep_g.composition_verdict.kind == Stability1D::LAS);
    CHECK(rep_g.paradox == Paradox::RepellersToLAS);

    const PeriodicSystem1D gs = g_system();
    const auto& g = gs.maps();
    CHECK(detect_parrondo_1d(PeriodicSystem1D{{g[2], g[1], g[0]}}).paradox == Paradox::None);

    const ParrondoReport1D single = detect_parrondo_1d(PeriodicSystem1D{{jet({-1, 3, -9, 0, 164})}});
    CHECK(single.composition_verdict == single.per_map.front());
    CHECK(single.paradox == Paradox::None);
}

TEST_CASE("jet inversion with order reversal swaps the paradox") {
    std::vector<Jet1D> inverted;
    const PeriodicSystem1D fs = f_system();
    const auto& maps = fs.maps();
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) inverted.push_back(jet_inverse(*it));
    const PeriodicSystem1D dual{inverted};
    CHECK(dual == g_system());
    CHECK(detect_parrondo_1d(f_system()).paradox == Paradox::LASToRepeller);
    CHECK(detect_parrondo_1d(dual).paradox == Paradox::RepellersToLAS);
}

TEST_CASE("parrondo detection on the planar example pairs") {
    const ParrondoReport2D las_pair = detect_parrondo_2d(construct_2d_pair(1, -3, -1));
    REQUIRE(las_pair.per_map.size() == 2);
    CHECK(las_pair.per_map[0].v1 == Catch::Approx(-0.5).margin(1e-12));
    CHECK(las_pair.per_map[1].v1 == Catch::Approx(-0.5).margin(1e-12));
    CHECK(las_pair.composition_result.v1 == Catch::Approx((3 * kSqrt3 - 5) / 2).margin(1e-12));
    CHECK(las_pair.paradox == Paradox::LASToRepeller);

    const ParrondoReport2D rep_pair = detect_parrondo_2d(construct_2d_pair(-2.0 / 3.0, 4, 1));
    CHECK(rep_pair.per_map[0].v1 == Catch::Approx(0.5).margin(1e-12));
    CHECK(rep_pair.per_map[1].v1 == Catch::Approx(0.5).margin(1e-12));
    CHECK(rep_pair.composition_result.v1 == Catch::Approx(3 - 2 * kSqrt3).margin(1e-12));
    CHECK(rep_pair.paradox == Paradox::RepellersToLAS);

    // Two pure rotations carry no nonlinear information at all.
    ComplexJet2 rot1, rot2;
    rot1.lambda = {std::cos(1.0), std::sin(1.0)};
    rot2.lambda = {std::cos(0.4), std::sin(0.4)};
    const PeriodicSystem2D rotations{{parrondo::complex_to_real(rot1), parrondo::complex_to_real(rot2)}};
    CHECK(detect_parrondo_2d(rotations).paradox == Paradox::Indeterminate);
}

TEST_CASE("construct_1d_triple reproduces the example maps") {
    const PeriodicSystem1D sys = construct_1d_triple(5, 2, 9, 1, 2, 0);
    CHECK(sys == f_system());
    CHECK(detect_parrondo_1d(sys).paradox == Paradox::LASToRepeller);
}

TEST_CASE("construct_1d_triple at the degenerate parameter") {
    // a22 = 1 kills the composed quintic constant; nothing is decidable at
    // order 5.
    const ParrondoReport1D rep = detect_parrondo_1d(construct_1d_triple(1, 2, 9, 1, 2, 0));
    CHECK(rep.composition_verdict.kind == Stability1D::InvolutionUpToOrder);
    CHECK(rep.paradox == Paradox::Indeterminate);

    // a22 = 2 gives a negative composed constant: LAS composition, no paradox.
    const ParrondoReport1D rep2 = detect_parrondo_1d(construct_1d_triple(2, 2, 9, 1, 2, 0));
    CHECK(rep2.composition_verdict.kind == Stability1D::LAS);
    CHECK(rep2.paradox == Paradox::None);
}

TEST_CASE("construct_1d_triple constants for random parameters") {
    gen::Rng rng(424344);
    for (int trial = 0; trial < 100; ++trial) {
        const Rational a22 = gen::small_rational(rng);
        const Rational a23 = gen::small_rational(rng);
        const Rational a4 = gen::small_rational(rng);
        const std::array<Rational, 3> asq = {abs(gen::small_rational(rng)), abs(gen::small_rational(rng)),
                                             abs(gen::small_rational(rng))};
        const PeriodicSystem1D sys = construct_1d_triple(a22, asq[0], asq[1], asq[2], a23, a4);
        for (int i = 0; i < 3; ++i) {
            const auto sc = parrondo::stability_constants(sys.maps()[static_cast<std::size_t>(i)]);
            REQUIRE(sc.w_values[0].second == 0);                       // V3
            REQUIRE(sc.w_values[2].second == -2 * asq[static_cast<std::size_t>(i)]);  // V5
        }
        // With a23 = 2 and a4 = 0 the composed quintic constant has the
        // closed form -2(A1^2+A2^2+A3^2 - 4 a22^3 + 24 a22^2 - 32 a22).
        const PeriodicSystem1D std_sys = construct_1d_triple(a22, asq[0], asq[1], asq[2], 2, 0);
        const Jet1D comp = composition_map_1d(std_sys);
        const Rational expected =
            -2 * (asq[0] + asq[1] + asq[2] - 4 * parrondo::rational_pow(a22, 3) +
                  24 * a22 * a22 - 32 * a22);
        REQUIRE(comp.coeff(2) == 0);
        REQUIRE(comp.coeff(3) == 0);
        const auto comp_sc = parrondo::stability_constants(comp);
        REQUIRE(comp_sc.w_values[2].second == expected);
    }
    CHECK_THROWS_AS(construct_1d_triple(5, -2, 9, 1, 2, 0), parrondo::InputError);
}

TEST_CASE("construct_2d_pair Birkhoff constants have closed forms in (t, s, u)") {
    gen::Rng rng(515354);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double t = dist(rng), s = dist(rng), u = dist(rng);
        const PeriodicSystem2D sys = construct_2d_pair(t, s, u);
        const ComplexJet2 g1 = parrondo::real_to_complex(sys.maps()[0]);
        const ComplexJet2 g2 = parrondo::real_to_complex(sys.maps()[1]);

        const Complex b1_g1 = parrondo::birkhoff_b1(g1).b1;
        const Complex b1_g2 = parrondo::birkhoff_b1(g2).b1;
        const Complex b1_comp = parrondo::birkhoff_b1(parrondo::compose_complex(g2, g1)).b1;

        REQUIRE(std::abs(b1_g1 - 0.5 * Complex{3 * t + s - 1, -t + 3 * s - 1}) <= 1e-10);
        REQUIRE(std::abs(b1_g2 - 0.5 * Complex{1, -kSqrt3} * u) <= 1e-10);
        const Complex expected{(1 - kSqrt3 / 2) * s + 1.5 * t + 0.5 * u - 0.5,
                               1.5 * s + (kSqrt3 / 2 - 1) * t - (kSqrt3 / 2) * u - 1 + kSqrt3 / 2};
        REQUIRE(std::abs(b1_comp - expected) <= 1e-10);
    }

    // u = 0 leaves the second map with no nonlinear term at all.
    const ParrondoReport2D rep = detect_parrondo_2d(construct_2d_pair(0, 1, 0));
    CHECK(rep.per_map[1].verdict == PlanarStability::UndeterminedByB1);
    CHECK(rep.paradox == Paradox::Indeterminate);
}

TEST_CASE("padding preserves the low-order composition") {
    const PeriodicSystem1D padded_f = extend_with_padding_1d(f_system(), 5);
    CHECK(padded_f.size() == 5);
    CHECK(padded_f.order() == 7);
    CHECK(padded_f.maps().back() == jet({1, 0, 0, 0, 0, 0, -1}));
    const Jet1D comp = composition_map_1d(padded_f);
    CHECK(comp.coeff(1) == -1);
    CHECK(comp.coeff(2) == 0);
    CHECK(comp.coeff(3) == 0);
    CHECK(comp.coeff(4) == 90);
    CHECK(comp.coeff(5) == -48);

    const PeriodicSystem1D padded_g = extend_with_padding_1d(g_system(), 4);
    CHECK(padded_g.maps().back() == jet({1, 0, 0, 0, 0, 0, 1}));
    const auto sc = parrondo::stability_constants(composition_map_1d(padded_g));
    REQUIRE(sc.v_first.has_value());
    CHECK(sc.v_first->first == 5);
    CHECK(sc.v_first->second == -96);

    CHECK(extend_with_padding_1d(f_system(), 3) == f_system());
    CHECK_THROWS_AS(extend_with_padding_1d(f_system(), 2), parrondo::InvalidPaddingTarget);
}

TEST_CASE("product lifts") {
    const auto lift3 = lift_product(g_system(), 3);
    CHECK(lift3.dimension() == 3);
    CHECK(parrondo::lift_paradox(lift3) == Paradox::RepellersToLAS);

    const auto lift2d = lift_product(construct_2d_pair(1, -3, -1), 2);
    CHECK(lift2d.dimension() == 4);
    CHECK(parrondo::lift_paradox(lift2d) == Paradox::LASToRepeller);

    const auto lift1 = lift_product(f_system(), 1);
    CHECK(lift1.dimension() == 1);
    CHECK(std::get<PeriodicSystem1D>(lift1.base) == f_system());
    CHECK_THROWS_AS(lift_product(f_system(), 0), parrondo::InputError);
}

TEST_CASE("linear spectra of the matrix examples") {
    const auto lin1 = linear_spectrum_2x2({Matrix2{0, 2, 0, 0.5}, Matrix2{0.5, 0, 2, 0}});
    CHECK(lin1.eigenvalues[0] == Complex{0, 0});
    CHECK(lin1.eigenvalues[1] == Complex{4, 0});
    CHECK(lin1.product.a == 0);
    CHECK(lin1.product.b == 1);
    CHECK(lin1.product.c == 0);
    CHECK(lin1.product.d == 4);

    const double alpha = 0.5;
    const auto lin2 = linear_spectrum_2x2(
        {Matrix2{alpha, alpha, 0, alpha}, Matrix2{alpha, 0, alpha, alpha}});
    const double sqrt5 = std::sqrt(5.0);
    CHECK(lin2.eigenvalues[0].real() == Catch::Approx((3 - sqrt5) / 8).margin(1e-12));
    CHECK(lin2.eigenvalues[1].real() == Catch::Approx((3 + sqrt5) / 8).margin(1e-12));

    const auto id = linear_spectrum_2x2({Matrix2{1, 0, 0, 1}, Matrix2{1, 0, 0, 1}});
    CHECK(id.eigenvalues[0] == Complex{1, 0});
    CHECK(id.eigenvalues[1] == Complex{1, 0});

    // Complex spectrum for a rotation.
    const auto rot = linear_spectrum_2x2({Matrix2{0, -1, 1, 0}});
    CHECK(std::abs(rot.eigenvalues[1] - Complex{0, 1}) <= 1e-15);
}

TEST_CASE("mixed orders are padded on construction") {
    const PeriodicSystem1D sys{{jet({-1, 2}), jet({-1, 0, 0, 90, -48})}};
    CHECK(sys.order() == 5);
    CHECK(sys.maps()[0] == jet({-1, 2, 0, 0, 0}));
    CHECK_THROWS_AS(PeriodicSystem1D{std::vector<Jet1D>{}}, parrondo::InputError);
}
