#include <doctest.h>

#include <cmath>

#include "barytree/degeneration.hpp"

using namespace barytree;

namespace {
const QuadratureRule& rule30() {
    static QuadratureRule r = make_quadrature(30);
    return r;
}
} // namespace

TEST_CASE("preimages of a Mobius map") {
    BallPoint t(0.3, -0.2, 0.1);
    Isometry m = mx_translation(t);
    RationalMap f = RationalMap::from_mobius(m);
    PreimageSet p = preimages_of_origin(f, rule30());
    REQUIRE(p.solutions.size() == 1);
    BallPoint expected = apply_ball(m.inverse(), BallPoint::origin());
    CHECK(hyp_dist_frames(p.solutions[0].frame, mx_translation(expected)) < 1e-6);
    CHECK(rescale_radius(p) == doctest::Approx(hyp_dist(BallPoint::origin(), expected)).epsilon(1e-6));
}

TEST_CASE("z^2 only pulls the origin back to itself") {
    PreimageSet p = preimages_of_origin(RationalMap::power(2), rule30());
    REQUIRE(p.solutions.size() == 1);
    CHECK(rescale_radius(p) < 1e-6);
}

TEST_CASE("scaled quadratic preimage matches the closed form") {
    // extension of a z^2 composes the z^2 extension with an axis translation
    // by log|a|; its unique origin preimage sits at height -log|a|/2
    double a = 1e4;
    RationalMap f = FamilySpec::scaled_power(2, {Complex(a, 0)}).generator(Complex(a, 0));
    PreimageSet p = preimages_of_origin(f, rule30());
    double want = 0.5 * std::log(a);
    CHECK(rescale_radius(p) == doctest::Approx(want).epsilon(1e-3));
    REQUIRE(p.solutions.size() == 1);
    // on the axis toward 0 (the south pole)
    BallPoint sol = p.solutions[0].point_or_throw();
    CHECK(sol.vec().z < 0.0);
    CHECK(std::abs(sol.vec().x) < 1e-3);
}

TEST_CASE("degeneration indicator trends for z^2 + 10^k") {
    FamilySpec fam = FamilySpec::offset_power(
        2, {Complex(10, 0), Complex(100, 0), Complex(1000, 0)});
    auto rows = degeneration_indicator(fam, rule30());
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(!r.failed);
    CHECK(rows[0].radius < rows[1].radius);
    CHECK(rows[1].radius < rows[2].radius);
    CHECK(rows[0].resultant > rows[1].resultant);
    CHECK(rows[1].resultant > rows[2].resultant);
}

TEST_CASE("constant family has flat radii") {
    FamilySpec fam = FamilySpec::offset_power(2, {Complex(1, 0), Complex(1, 0)});
    auto rows = degeneration_indicator(fam, rule30());
    REQUIRE(rows.size() == 2);
    CHECK(std::abs(rows[0].radius - rows[1].radius) < 1e-6);
}

TEST_CASE("naturality gap vanishes for Mobius maps") {
    Isometry m = mx_translation(BallPoint(0.2, 0.3, -0.1));
    double gap = naturality_gap(RationalMap::from_mobius(m), 3, BallPoint(0.1, 0, 0), rule30());
    CHECK(gap < 1e-8);
}

TEST_CASE("naturality gap vanishes for z^2 at the origin") {
    double gap = naturality_gap(RationalMap::power(2), 2, BallPoint::origin(), rule30());
    CHECK(gap < 1e-8);
}

TEST_CASE("snapshot emits basepoint and marks") {
    auto recs = snapshot(RationalMap::identity(), 2.0, {BallPoint(0.5, 0, 0)}, {}, rule30());
    REQUIRE(recs.size() == 3); // basepoint, mark, image of mark
    CHECK(recs[0].label == "basepoint");
    CHECK(recs[0].depth == doctest::Approx(0.0));
    CHECK(recs[1].depth == doctest::Approx(std::log(3.0)).epsilon(1e-9));
    CHECK(recs[1].rescaled.norm() == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-9));
    // identity extension: image coincides with the mark
    CHECK(recs[2].depth == doctest::Approx(recs[1].depth).epsilon(1e-7));
}
