#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "parrondo/gallery.hpp"

using parrondo::EntryCheck;
using parrondo::GalleryEntry;
using parrondo::GalleryReport;
using parrondo::Jet1D;
using parrondo::PeriodicSystem1D;
using parrondo::PeriodicSystem2D;
using parrondo::Rational;
using parrondo::gallery_all;
using parrondo::gallery_check;
using parrondo::gallery_get;
using parrondo::gallery_run;
using parrondo::gallery_run_all;

namespace {

Jet1D jet(std::vector<long> ints) {
    std::vector<Rational> c(ints.begin(), ints.end());
    return Jet1D(std::move(c));
}

}  // namespace

TEST_CASE("the gallery holds each example exactly once") {
    const std::vector<std::string> expected_names = {"e-f1f2f3",  "e-F1F2F3", "g-123-reversed",
                                                     "glue-semi-as", "unbounded", "lin1",
                                                     "lin2",      "ex-dim2-1", "ex-dim2-2"};
    REQUIRE(gallery_all().size() == expected_names.size());
    for (const std::string& name : expected_names) CHECK(gallery_get(name).name == name);
    CHECK_THROWS_AS(gallery_get("bogus-name"), parrondo::UnknownGalleryEntry);
}

TEST_CASE("constructed entries match the hand-entered literals") {
    const auto& f_sys = std::get<PeriodicSystem1D>(gallery_get("e-f1f2f3").system);
    CHECK(f_sys.maps()[0] == jet({-1, 3, -9, 0, 164}));
    CHECK(f_sys.maps()[1] == jet({-1, 5, -25, 0, 1259}));
    CHECK(f_sys.maps()[2] == jet({-1, 2, -4, 0, 33}));

    // The inverse family really is the family of degree-5 inverses.
    const auto& g_sys = std::get<PeriodicSystem1D>(gallery_get("e-F1F2F3").system);
    CHECK(g_sys.maps()[0] == parrondo::jet_inverse(f_sys.maps()[2]));
    CHECK(g_sys.maps()[1] == parrondo::jet_inverse(f_sys.maps()[1]));
    CHECK(g_sys.maps()[2] == parrondo::jet_inverse(f_sys.maps()[0]));

    // The real-coordinate coefficients of the pair, term by term.
    const auto& p_sys = std::get<PeriodicSystem2D>(gallery_get("ex-dim2-1").system);
    const parrondo::PlanarPolyMap& f1 = p_sys.maps()[0];
    CHECK(f1.p(0, 1) == -1.0);
    CHECK(f1.p(2, 0) == 2.0);
    CHECK(f1.p(1, 1) == 6.0);
    CHECK(f1.q(1, 0) == 1.0);
    CHECK(f1.q(2, 0) == -3.0);
    CHECK(f1.q(1, 1) == 2.0);
    CHECK(f1.q(0, 2) == 3.0);
    const parrondo::PlanarPolyMap& f2 = p_sys.maps()[1];
    CHECK(f2.p(1, 0) == 0.5);
    CHECK(f2.p(0, 1) == Catch::Approx(-std::sqrt(3.0) / 2).margin(1e-15));
    CHECK(f2.p(3, 0) == -1.0);
    CHECK(f2.p(1, 2) == -1.0);
    CHECK(f2.q(2, 1) == -1.0);
    CHECK(f2.q(0, 3) == -1.0);

    const auto& r_sys = std::get<PeriodicSystem2D>(gallery_get("ex-dim2-2").system);
    const parrondo::PlanarPolyMap& r1 = r_sys.maps()[0];
    CHECK(r1.p(2, 0) == Catch::Approx(1.0 / 3.0).margin(1e-15));
    CHECK(r1.p(1, 1) == -8.0);
    CHECK(r1.p(0, 2) == Catch::Approx(5.0 / 3.0).margin(1e-15));
    CHECK(r1.q(2, 0) == 4.0);
    CHECK(r1.q(1, 1) == Catch::Approx(-4.0 / 3.0).margin(1e-15));
    CHECK(r1.q(0, 2) == -4.0);
}

TEST_CASE("every gallery entry reproduces its expected values") {
    const GalleryReport report = gallery_run_all();
    for (const EntryCheck& entry : report.entries) {
        CAPTURE(entry.name, entry.diffs);
        CHECK(entry.passed);
    }
    CHECK(report.all_passed);
}

TEST_CASE("a corrupted coefficient fails with a diff") {
    GalleryEntry tampered = gallery_get("e-f1f2f3");
    auto sys = std::get<PeriodicSystem1D>(tampered.system);
    std::vector<Jet1D> maps = sys.maps();
    std::vector<Rational> coeffs = maps[0].coeffs();
    coeffs[4] += 1;  // 164 -> 165
    maps[0] = Jet1D(coeffs);
    tampered.system = PeriodicSystem1D{maps};

    const EntryCheck check = gallery_check(tampered);
    CHECK_FALSE(check.passed);
    CHECK_FALSE(check.diffs.empty());
}

TEST_CASE("filtered runs") {
    CHECK(gallery_run({}).entries.empty());
    CHECK(gallery_run({}).all_passed);
    const GalleryReport one = gallery_run({"lin1"});
    REQUIRE(one.entries.size() == 1);
    CHECK(one.entries.front().passed);
    CHECK_THROWS_AS(gallery_run({"nope"}), parrondo::UnknownGalleryEntry);
}
