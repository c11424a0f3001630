#include <doctest.h>

#include <cmath>

#include "barytree/h3.hpp"
#include "barytree/rng.hpp"

using namespace barytree;

namespace {
BallPoint random_ball_point(Rng& rng, double max_depth = 6.0) {
    double d = rng.uniform(0.0, max_depth);
    return BallPoint(rng.unit_vector() * std::tanh(0.5 * d));
}
} // namespace

TEST_CASE("ball point rejects the boundary") {
    CHECK_THROWS_AS(BallPoint(1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(BallPoint(0.0, 0.0, 1.0 - 1e-15), DomainError);
    CHECK_NOTHROW(BallPoint(0.0, 0.0, 0.999));
}

TEST_CASE("hyperbolic distance along the axis") {
    CHECK(hyp_dist(BallPoint::origin(), BallPoint(0.5, 0, 0)) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(hyp_dist(BallPoint::origin(), BallPoint::origin()) == 0.0);
    Rng rng(3);
    for (int i = 0; i < 50; i++) {
        BallPoint a = random_ball_point(rng), b = random_ball_point(rng),
                  c = random_ball_point(rng);
        double ab = hyp_dist(a, b), bc = hyp_dist(b, c), ac = hyp_dist(a, c);
        CHECK(ab == doctest::Approx(hyp_dist(b, a)).epsilon(1e-14));
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("mx translation moves the origin to x and inverts to -x") {
    Isometry id = mx_translation(BallPoint::origin());
    CHECK(id.origin_displacement() == doctest::Approx(0.0));

    BallPoint x(0.3, 0.0, 0.0);
    Isometry m = mx_translation(x);
    BallPoint image = apply_ball(m, BallPoint::origin());
    CHECK((image.vec() - x.vec()).norm() < 1e-14);

    Rng rng(5);
    for (int i = 0; i < 100; i++) {
        BallPoint p = random_ball_point(rng);
        BallPoint q = random_ball_point(rng, 3.0);
        Isometry mp = mx_translation(p);
        Isometry inv = mx_translation(BallPoint(-p.vec()));
        BallPoint round = apply_ball(inv, apply_ball(mp, q));
        CHECK((round.vec() - q.vec()).norm() < 1e-10);
    }
}

TEST_CASE("matrix route matches the closed-form ball formula") {
    Rng rng(7);
    for (int i = 0; i < 100; i++) {
        BallPoint x = random_ball_point(rng, 4.0);
        BallPoint z = random_ball_point(rng, 4.0);
        Vec3 closed = mx_ball_closed_form(x.vec(), z.vec());
        BallPoint viamat = apply_ball(mx_translation(x), z);
        CHECK((closed - viamat.vec()).norm() < 1e-10);
    }
}

TEST_CASE("boundary and ball actions agree in the limit") {
    Rng rng(9);
    for (int i = 0; i < 50; i++) {
        BallPoint x = random_ball_point(rng, 3.0);
        Isometry m = mx_translation(x);
        SpherePoint zeta(rng.unit_vector());
        // push a point 1e-6 inside the sphere through the ball action
        BallPoint near_boundary(zeta.vec() * (1.0 - 1e-6));
        Vec3 ball_img = apply_ball(m, near_boundary).vec();
        Vec3 bdry_img = apply_boundary(m, zeta).vec();
        CHECK((ball_img.normalized() - bdry_img).norm() < 1e-5);
    }
}

TEST_CASE("isometries preserve distance and compose") {
    Rng rng(13);
    for (int i = 0; i < 60; i++) {
        Isometry m = mx_translation(random_ball_point(rng)) *
                     rotation_about(rng.unit_vector(), rng.uniform(0, 6.28));
        BallPoint a = random_ball_point(rng), b = random_ball_point(rng);
        CHECK(hyp_dist(apply_ball(m, a), apply_ball(m, b)) ==
              doctest::Approx(hyp_dist(a, b)).epsilon(1e-10));
        Isometry m2 = mx_translation(random_ball_point(rng));
        BallPoint lhs = apply_ball(m * m2, a);
        BallPoint rhs = apply_ball(m, apply_ball(m2, a));
        CHECK((lhs.vec() - rhs.vec()).norm() < 1e-12);
    }
}

TEST_CASE("frame displacement formula") {
    BallPoint x(0.5, 0, 0);
    Isometry m = mx_translation(x);
    CHECK(m.origin_displacement() == doctest::Approx(std::log(3.0)).epsilon(1e-13));
    Rng rng(17);
    for (int i = 0; i < 40; i++) {
        BallPoint a = random_ball_point(rng), b = random_ball_point(rng);
        double via_frames = hyp_dist_frames(mx_translation(a), mx_translation(b));
        CHECK(via_frames == doctest::Approx(hyp_dist(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("boundary jacobian") {
    Rng rng(19);
    SpherePoint zeta(rng.unit_vector());
    CHECK(boundary_jacobian(BallPoint::origin(), zeta) == doctest::Approx(1.0));
    // direct substitution: x = (1/2, 0, 0), zeta = e1 gives (0.75/2.25)^2 = 1/9
    CHECK(boundary_jacobian(BallPoint(0.5, 0, 0), SpherePoint(1, 0, 0)) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("mobius boundary action pins") {
    Isometry inv(Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0));
    CHECK(apply_boundary(inv, PlanePoint(0.0)).is_infinity());
    Isometry sc(Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(0.5, 0));
    PlanePoint four = apply_boundary(sc, PlanePoint(1.0));
    CHECK(four.value().real() == doctest::Approx(4.0));
    Isometry ident;
    PlanePoint same = apply_boundary(ident, PlanePoint(Complex(2, 3)));
    CHECK(same.value() == Complex(2, 3));
}

TEST_CASE("cylindrical coordinates") {
    CylindricalPoint o = to_cylindrical(BallPoint::origin());
    CHECK(o.r == doctest::Approx(0.0));
    CHECK(o.theta == doctest::Approx(0.0));
    CHECK(o.h == doctest::Approx(0.0));

    CylindricalPoint c = to_cylindrical(BallPoint(0.5, 0, 0));
    CHECK(c.r == doctest::Approx(std::log(3.0)).epsilon(1e-13));
    CHECK(c.h == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(c.theta == doctest::Approx(0.0));

    Rng rng(23);
    for (int i = 0; i < 100; i++) {
        BallPoint p = random_ball_point(rng, 8.0);
        CylindricalPoint cp = to_cylindrical(p);
        BallPoint back = from_cylindrical(cp);
        CHECK(hyp_dist(p, back) < 1e-10);
    }
}

TEST_CASE("axis translations double-check cylindrical h") {
    // translation along the 0-infinity axis shifts h and fixes r
    Rng rng(29);
    for (int i = 0; i < 20; i++) {
        BallPoint p = random_ball_point(rng, 4.0);
        CylindricalPoint c0 = to_cylindrical(p);
        double s = rng.uniform(-2.0, 2.0);
        double lam = std::exp(0.5 * s);
        Isometry axial(Complex(lam, 0), Complex(0, 0), Complex(0, 0), Complex(1 / lam, 0));
        CylindricalPoint c1 = to_cylindrical(apply_ball(axial, p));
        CHECK(c1.h == doctest::Approx(c0.h + s).epsilon(1e-9));
        CHECK(c1.r == doctest::Approx(c0.r).epsilon(1e-9));
    }
}

TEST_CASE("pair annulus modulus identity") {
    BallPoint x = BallPoint::origin();
    BallPoint y(0.5, 0, 0);
    PairAnnulus a = pair_annulus(x, y);
    CHECK(a.modulus == doctest::Approx(std::log(3.0) / (2 * 3.141592653589793)).epsilon(1e-12));
    CHECK(a.outer_radius == doctest::Approx(3.0).epsilon(1e-12));

    PairAnnulus b = pair_annulus(y, x);
    CHECK(b.modulus == doctest::Approx(a.modulus).epsilon(1e-12));

    CHECK_THROWS_AS(pair_annulus(x, x), DegenerateInputError);

    Rng rng(31);
    for (int i = 0; i < 100; i++) {
        BallPoint p = random_ball_point(rng, 10.0);
        BallPoint q = random_ball_point(rng, 10.0);
        double d = hyp_dist(p, q);
        if (d < 0.1) continue;
        PairAnnulus pa = pair_annulus(p, q);
        CHECK(pa.modulus == doctest::Approx(d / (2 * 3.141592653589793)).epsilon(1e-8));
    }
}

TEST_CASE("round annulus modulus") {
    double pi = 3.141592653589793238462643;
    CHECK(round_annulus_modulus(1 / std::sqrt(3.0), std::sqrt(3.0)) ==
          doctest::Approx(std::log(3.0) / (2 * pi)).epsilon(1e-14));
    CHECK(round_annulus_modulus(1.0, std::exp(2 * pi)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(round_annulus_modulus(2.0, 2.0), DomainError);
}

TEST_CASE("polar distance helper matches ball distance") {
    Rng rng(37);
    for (int i = 0; i < 60; i++) {
        double d1 = rng.uniform(0.0, 8.0), d2 = rng.uniform(0.0, 8.0);
        Vec3 u = rng.unit_vector(), v = rng.unit_vector();
        BallPoint a(u * std::tanh(0.5 * d1)), b(v * std::tanh(0.5 * d2));
        CHECK(hyp_dist_polar(d1, u, d2, v) == doctest::Approx(hyp_dist(a, b)).epsilon(1e-10));
    }
}
