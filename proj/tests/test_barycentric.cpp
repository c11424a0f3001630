#include <doctest.h>

#include <cmath>

#include "barytree/barycentric.hpp"
#include "barytree/rng.hpp"

using namespace barytree;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

RationalMap random_map(Rng& rng, int d, double guard = 1e-6) {
    for (;;) {
        std::vector<Complex> P(d + 1), Q(d + 1);
        for (int i = 0; i <= d; i++) {
            P[i] = Complex(rng.normal(), rng.normal());
            Q[i] = Complex(rng.normal(), rng.normal());
        }
        try {
            return RationalMap(P, Q, guard);
        } catch (const NearDegenerateMapError&) {
        }
    }
}

Isometry random_mobius(Rng& rng, double translation_scale = 1.0) {
    BallPoint t(rng.unit_vector() * std::tanh(0.5 * rng.uniform(0.0, translation_scale)));
    return mx_translation(t) * rotation_about(rng.unit_vector(), rng.uniform(0, 2 * kPi));
}

BallPoint random_ball_point(Rng& rng, double max_depth) {
    return BallPoint(rng.unit_vector() * std::tanh(0.5 * rng.uniform(0.0, max_depth)));
}

const QuadratureRule& rule30() {
    static QuadratureRule r = make_quadrature(30);
    return r;
}

} // namespace

TEST_CASE("pushforward of the identity is the rule") {
    QuadratureRule rule = make_quadrature(8);
    WeightedSpherePoints m = pushforward(RationalMap::identity(), BallPoint::origin(), rule);
    REQUIRE(m.atoms.size() == rule.size());
    for (std::size_t i = 0; i < m.atoms.size(); i++) {
        CHECK((m.atoms[i].point.vec() - rule.nodes()[i].point.vec()).norm() < 1e-12);
        CHECK(m.atoms[i].weight == rule.nodes()[i].weight);
    }
}

TEST_CASE("balance vector pins") {
    WeightedSpherePoints m;
    m.atoms = {{SpherePoint(0, 0, 1), 0.5}, {SpherePoint(0, 0, -1), 0.5}};
    CHECK(balance_vector(m, BallPoint::origin()).norm() < 1e-15);
    Vec3 off = balance_vector(m, BallPoint(0, 0, 0.5));
    CHECK(off.z < -0.1); // pulled toward the far pole
    CHECK(std::abs(off.x) < 1e-15);
}

TEST_CASE("barycenter of symmetric measures is the origin") {
    QuadratureRule rule = make_quadrature(10);
    WeightedSpherePoints m;
    for (const auto& n : rule.nodes()) m.atoms.push_back({n.point, n.weight});
    ExtensionResult r = barycenter(m);
    CHECK(r.residual < 1e-10);
    CHECK(r.frame.origin_displacement() < 1e-10);
}

TEST_CASE("barycenter recovers a transported rule") {
    QuadratureRule rule = make_quadrature(12);
    BallPoint x(0.4, 0.1, 0.0);
    WeightedSpherePoints m = pushforward(RationalMap::identity(), x, rule);
    ExtensionResult r = barycenter(m);
    CHECK(hyp_dist(r.point(), x) < 1e-8);
}

TEST_CASE("max-weight guard") {
    WeightedSpherePoints m;
    m.atoms = {{SpherePoint(0, 0, 1), 0.3},
               {SpherePoint(1, 0, 0), 0.3},
               {SpherePoint(0, 1, 0), 0.4}};
    CHECK_THROWS_AS(barycenter(m), PreconditionError);
}

TEST_CASE("extension of z^2 fixes the origin") {
    ExtensionResult r = extend(RationalMap::power(2), BallPoint::origin(), rule30());
    CHECK(r.frame.origin_displacement() < 1e-10);
}

TEST_CASE("extension reproduces Mobius actions") {
    Rng rng(71);
    for (int i = 0; i < 10; i++) {
        Isometry m = random_mobius(rng, 3.0);
        BallPoint x = random_ball_point(rng, 3.0);
        ExtensionResult r = extend(RationalMap::from_mobius(m), x, rule30());
        CHECK(hyp_dist(r.point(), apply_ball(m, x)) < 1e-9);
    }
}

TEST_CASE("z^d on the axis multiplies height by d") {
    for (int d : {2, 3, 4}) {
        RationalMap f = RationalMap::power(d);
        for (double h : {0.5, 1.0, 2.0}) {
            BallPoint x = from_cylindrical(0.0, 0.0, h);
            ExtensionResult r = extend(f, x, rule30());
            CylindricalPoint c = to_cylindrical(r.point());
            CHECK(c.r < 1e-8);
            CHECK(c.h == doctest::Approx(d * h).epsilon(1e-8));
        }
    }
}

TEST_CASE("fy and fx of the identity") {
    QuadratureRule rule = make_quadrature(16);
    WeightedSpherePoints m = pushforward(RationalMap::identity(), BallPoint::origin(), rule);
    Mat3 fy = fy_operator(m);
    Mat3 fx = fx_operator(m, rule);
    // T = I/3 so F_y = -(4/3) I and F_x = (4/3) I
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            CHECK(fy(i, j) == doctest::Approx(i == j ? -4.0 / 3.0 : 0.0).epsilon(1e-10));
            CHECK(fx(i, j) == doctest::Approx(i == j ? 4.0 / 3.0 : 0.0).epsilon(1e-10));
        }
}

TEST_CASE("fy axis eigenvalue of z^2 matches the closed-form height integral") {
    // For f = z^2 the axis entry of T is the 1-d integral of (2s/(1+s^2))^2
    // over uniform s in [-1,1], which evaluates to pi/2 - 1; the axis
    // eigenvalue of F_y is therefore pi - 4.
    WeightedSpherePoints m = pushforward(RationalMap::power(2), BallPoint::origin(), rule30());
    Mat3 fy = fy_operator(m);
    CHECK(fy(2, 2) == doctest::Approx(kPi - 4.0).epsilon(1e-10));
    CHECK(std::abs(fy(0, 1)) < 1e-10);
    CHECK(std::abs(fy(0, 2)) < 1e-10);
    // radial eigenvalue: -2 + 2*(1 - pi/4) = -pi/2
    CHECK(fy(0, 0) == doctest::Approx(-kPi / 2.0).epsilon(1e-10));
}

TEST_CASE("unbalanced input rejected by fy") {
    QuadratureRule rule = make_quadrature(8);
    WeightedSpherePoints m = pushforward(
        RationalMap::polynomial({Complex(1, 0), Complex(0, 0), Complex(5, 0)}),
        BallPoint::origin(), rule);
    CHECK_THROWS_AS(fy_operator(m), PreconditionError);
}

TEST_CASE("derivative of z^2 at the origin is diag(0,0,2)") {
    DerivativeMatrix d = derivative(RationalMap::power(2), BallPoint::origin(), rule30());
    CHECK(d.m(2, 2) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(d.m(0, 0)) < 1e-9);
    CHECK(std::abs(d.m(1, 1)) < 1e-9);
    CHECK(std::abs(d.m(0, 2)) < 1e-9);
    CHECK(hyperbolic_operator_norm(d) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("derivative of a Mobius map is orthogonal") {
    Rng rng(73);
    for (int i = 0; i < 5; i++) {
        Isometry m = random_mobius(rng, 2.0);
        BallPoint x = random_ball_point(rng, 2.0);
        DerivativeMatrix d = derivative(RationalMap::from_mobius(m), x, rule30());
        Mat3 should_be_identity = d.m.transposed() * d.m;
        for (int a = 0; a < 3; a++)
            for (int b = 0; b < 3; b++)
                CHECK(should_be_identity(a, b) ==
                      doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-6));
        CHECK(hyperbolic_operator_norm(d) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("derivative matches central finite differences") {
    Rng rng(79);
    for (int trial = 0; trial < 5; trial++) {
        RationalMap f = random_map(rng, 2 + trial % 3);
        BallPoint x = random_ball_point(rng, 2.0);
        DerivativeMatrix d = derivative(f, x, rule30());

        const double eps = 1e-4;
        Isometry A = d.domain_frame;
        Isometry B_inv = d.image_frame.inverse();
        Mat3 fd;
        for (int col = 0; col < 3; col++) {
            Vec3 dir(col == 0, col == 1, col == 2);
            auto probe = [&](double step) {
                Isometry X = A * mx_translation(BallPoint(dir * std::tanh(0.5 * step)));
                ExtensionResult e = extend_frame(f, X, rule30());
                return apply_ball(B_inv * e.frame, BallPoint::origin()).vec();
            };
            Vec3 plus = probe(eps), minus = probe(-eps);
            Vec3 column = (plus - minus) / (2 * std::tanh(0.5 * eps));
            fd(0, col) = column.x;
            fd(1, col) = column.y;
            fd(2, col) = column.z;
        }
        double scale = spectral_norm(d.m);
        for (int a = 0; a < 3; a++)
            for (int b = 0; b < 3; b++)
                CHECK(std::abs(fd(a, b) - d.m(a, b)) < 1e-4 * (1.0 + scale));
    }
}

TEST_CASE("conformal naturality") {
    Rng rng(83);
    for (int trial = 0; trial < 8; trial++) {
        RationalMap f = random_map(rng, 2 + trial % 3);
        Isometry m1 = random_mobius(rng, 1.5), m2 = random_mobius(rng, 1.5);
        BallPoint x = random_ball_point(rng, 1.5);
        RationalMap conj = compose(compose(RationalMap::from_mobius(m1), f),
                                   RationalMap::from_mobius(m2));
        ExtensionResult lhs = extend(conj, x, rule30());
        ExtensionResult inner = extend(f, apply_ball(m2, x), rule30());
        BallPoint rhs = apply_ball(m1, inner.point());
        CHECK(hyp_dist(lhs.point(), rhs) < 1e-6);
    }
}

TEST_CASE("quadrature convergence of the extension") {
    Rng rng(89);
    QuadratureRule coarse = make_quadrature(30), fine = make_quadrature(60);
    for (int trial = 0; trial < 3; trial++) {
        RationalMap f = random_map(rng, 3);
        BallPoint x = random_ball_point(rng, 2.0);
        ExtensionResult a = extend(f, x, coarse);
        ExtensionResult b = extend(f, x, fine);
        CHECK(hyp_dist_frames(a.frame, b.frame) < 1e-8);
    }
}

TEST_CASE("belt volume of z is exactly one half") {
    BeltVolume v = belt_volume(RationalMap::identity(), rule30());
    CHECK(v.belt == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v.cap_inner == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(v.cap_outer == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(v.belt + v.cap_inner + v.cap_outer == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("belt volume of z^d matches the closed form") {
    for (int d : {2, 3, 5}) {
        BeltVolume v = belt_volume(RationalMap::power(d), rule30());
        double R = std::pow(3.0, 1.0 / (2.0 * d));
        double expected = (R * R - 1.0) / (R * R + 1.0); // h(3^{1/2d}) since h is odd
        CHECK(v.belt == doctest::Approx(expected).epsilon(1e-10));
        CHECK(v.belt + v.cap_inner + v.cap_outer == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.belt >= v.lower_bound - 1e-3);
    }
}

TEST_CASE("belt volume requires a recentered map") {
    RationalMap off = RationalMap::polynomial({Complex(1, 0), Complex(0, 0), Complex(7, 0)});
    CHECK_THROWS_AS(belt_volume(off, rule30()), PreconditionError);
}

TEST_CASE("lipschitz scan on a Mobius map stays at 1") {
    Rng rng(97);
    Isometry m = random_mobius(rng, 1.0);
    LipschitzScanResult s =
        lipschitz_scan(RationalMap::from_mobius(m), 40, 12345, rule30(), 6.0);
    CHECK(s.error_count == 0);
    CHECK(s.max_norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.bound_ok);
}

TEST_CASE("lipschitz scan attains d on the axis for z^2") {
    LipschitzScanResult s = lipschitz_scan(RationalMap::power(2), 60, 7, rule30(), 8.0);
    CHECK(s.max_norm >= 2.0 - 1e-4);
    CHECK(s.max_norm <= s.bound);
}

TEST_CASE("kappa lands at angle pi with zero height") {
    for (double t : {0.25, 0.5, 0.75}) {
        ExtensionResult r = kappa(t, rule30());
        CylindricalPoint c = to_cylindrical(r.point());
        CHECK(std::abs(c.theta - kPi) < 1e-6);
        CHECK(std::abs(c.h) < 1e-8);
        CHECK(c.r > 0.0);
    }
}

TEST_CASE("lemma A.2 residue vs contour") {
    for (double t : {0.1, 0.5, 0.9}) {
        for (double r : {0.25, 0.5, 2.0, 4.0}) {
            LemmaA2Check c = lemma_a2_check(t, r);
            CHECK(std::abs(c.j_numeric - c.j_residue) < 1e-8 * (1.0 + std::abs(c.j_residue)));
            CHECK(c.j_numeric < 0.0);
            CHECK(c.j_residue < 0.0);
            CHECK(c.g_at_r > 0.0);
            CHECK(c.x1 < r);
            CHECK(c.x2 > r);
        }
    }
    CHECK_THROWS_AS(lemma_a2_check(0.5, 1.0), DomainError);
}

TEST_CASE("z^2 cylindrical structure: angle and height double") {
    Rng rng(103);
    RationalMap sq = RationalMap::power(2);
    for (int i = 0; i < 6; i++) {
        CylindricalPoint c{rng.uniform(0.2, 2.0), rng.uniform(0.0, 2 * kPi),
                           rng.uniform(-1.5, 1.5)};
        ExtensionResult r = extend(sq, from_cylindrical(c), rule30());
        CylindricalPoint img = to_cylindrical(r.point());
        double want_theta = std::fmod(2.0 * c.theta, 2 * kPi);
        double dtheta = std::abs(img.theta - want_theta);
        dtheta = std::min(dtheta, 2 * kPi - dtheta);
        CHECK(dtheta < 1e-6);
        CHECK(img.h == doctest::Approx(2.0 * c.h).epsilon(1e-6));
        // radial image depends only on r
        ExtensionResult r2 = extend(sq, from_cylindrical(c.r, 0.3, -0.4), rule30());
        CHECK(to_cylindrical(r2.point()).r == doctest::Approx(img.r).epsilon(1e-6));
    }
}
