#pragma once

#include <cmath>
#include <complex>

#include "barytree/errors.hpp"
#include "barytree/plane_point.hpp"
#include "barytree/sphere.hpp"
#include "barytree/vec3.hpp"

namespace barytree {

// Point of hyperbolic 3-space in the unit-ball model. Points with
// ||p|| >= 1 - 1e-14 are rejected rather than clamped; silently clamping
// corrupts distances exactly in the deep regime we care about.
class BallPoint {
  public:
    BallPoint() : p_(0, 0, 0) {}
    explicit BallPoint(const Vec3& p) : p_(p) { check(); }
    BallPoint(double x, double y, double z) : p_(x, y, z) { check(); }

    const Vec3& vec() const { return p_; }
    double norm() const { return p_.norm(); }

    static BallPoint origin() { return BallPoint(); }

  private:
    void check() const {
        double n = p_.norm();
        if (!(n < 1.0 - 1e-14) || !std::isfinite(n))
            throw DomainError("BallPoint: ||p|| must be < 1 - 1e-14");
    }
    Vec3 p_;
};

// Upper half-space coordinates (z, t), t > 0. Internal model used to apply
// 2x2 complex matrices; the boundary identification matches stereo_project.
struct HalfSpacePoint {
    Complex z{0.0, 0.0};
    double t = 1.0;
};

HalfSpacePoint ball_to_halfspace(const BallPoint& x);
BallPoint halfspace_to_ball(const HalfSpacePoint& w);

// Cylindrical coordinates about the axis geodesic from boundary 0 to
// boundary infinity: r = distance to the axis, theta = angle about it,
// h = signed position along the axis of the orthogonal projection.
struct CylindricalPoint {
    double r = 0.0;     // >= 0
    double theta = 0.0; // normalized to [0, 2*pi)
    double h = 0.0;
};

// Orientation-preserving isometry of H^3 as a 2x2 complex matrix acting on
// the boundary by z -> (az+b)/(cz+d), determinant normalized to 1 (up to
// global sign). Composition is exact matrix multiplication.
class Isometry {
  public:
    Isometry() : a_(1), b_(0), c_(0), d_(1) {}
    Isometry(Complex a, Complex b, Complex c, Complex d);

    static Isometry identity() { return Isometry(); }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Isometry operator*(const Isometry& o) const {
        return Isometry(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                        c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
    }
    Isometry inverse() const { return Isometry(d_, -b_, -c_, a_); }

    HomogPoint apply(const HomogPoint& p) const {
        return HomogPoint::normalized(a_ * p.a + b_ * p.b, c_ * p.a + d_ * p.b);
    }

    HalfSpacePoint apply(const HalfSpacePoint& w) const;

    // squared Frobenius norm; cosh(dist(O, M O)) = frob2 / 2
    double frob2() const {
        return std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
    }

    // hyperbolic distance the isometry moves the ball origin
    double origin_displacement() const {
        double s2 = std::max(0.0, (frob2() - 2.0) / 4.0);
        return 2.0 * std::asinh(std::sqrt(s2));
    }

  private:
    Complex a_, b_, c_, d_;
};

// Boundary Mobius action with infinity handled symbolically.
inline PlanePoint apply_boundary(const Isometry& m, const PlanePoint& z) {
    return m.apply(HomogPoint::from_plane(z)).to_plane();
}

inline SpherePoint apply_boundary(const Isometry& m, const SpherePoint& p) {
    return stereo_project(m.apply(stereo_unproject_homog(p)));
}

BallPoint apply_ball(const Isometry& m, const BallPoint& x);

// Hyperbolic translation sending the origin to x along the geodesic
// through both; the inverse is the translation to -x.
Isometry mx_translation(const BallPoint& x);

// Direct evaluation of the same translation through its closed-form ball
// expression; cross-checks the matrix route. Valid for ||z|| <= 1.
Vec3 mx_ball_closed_form(const Vec3& x, const Vec3& z);

// Jacobian of the boundary action of mx_translation(x) at zeta,
// ((1-||x||^2)/||zeta + x||^2)^2.
double boundary_jacobian(const BallPoint& x, const SpherePoint& zeta);

double hyp_dist(const BallPoint& a, const BallPoint& b);

// dist(A(O), B(O)) computed from the matrices; stays accurate at depths
// where ball coordinates cannot represent the points at all.
inline double hyp_dist_frames(const Isometry& A, const Isometry& B) {
    return (A.inverse() * B).origin_displacement();
}

// Distance between points given by (distance from origin, direction);
// hyperbolic law of cosines, safe for large depths.
double hyp_dist_polar(double d1, const Vec3& dir1, double d2, const Vec3& dir2);

// SU(2) matrix of the rotation by `angle` about the unit `axis`.
Isometry rotation_about(const Vec3& axis, double angle);

// Rotation taking unit vector `from` to unit vector `to`.
Isometry rotation_align(const Vec3& from, const Vec3& to);

CylindricalPoint to_cylindrical(const BallPoint& x);
BallPoint from_cylindrical(const CylindricalPoint& c);
inline BallPoint from_cylindrical(double r, double theta, double h) {
    return from_cylindrical(CylindricalPoint{r, theta, h});
}

// The round annulus bounded by the boundary circles of the two geodesic
// planes orthogonal to [x, y] through x and y. Stored after a recorded
// normalization that puts the circles at |z| = 1 and |z| = e^dist.
struct PairAnnulus {
    Isometry normalization;  // sends x to O and y onto the positive axis
    double inner_radius = 1.0; // circle through the first argument
    double outer_radius = 1.0; // circle through the second argument
    double modulus = 0.0;
};

PairAnnulus pair_annulus(const BallPoint& x, const BallPoint& y);

double round_annulus_modulus(double r_inner, double r_outer);

} // namespace barytree
