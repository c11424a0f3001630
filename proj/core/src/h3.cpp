#include "barytree/h3.hpp"

namespace barytree {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// 1 - ||v||^2 without the cancellation of summing the squares first: peel
// off the dominant component as (1-|c|)(1+|c|).
double one_minus_norm2(const Vec3& v) {
    double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
    if (az >= ax && az >= ay) return (1.0 - az) * (1.0 + az) - ax * ax - ay * ay;
    if (ax >= ay) return (1.0 - ax) * (1.0 + ax) - ay * ay - az * az;
    return (1.0 - ay) * (1.0 + ay) - ax * ax - az * az;
}
} // namespace

Isometry::Isometry(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
    Complex det = a_ * d_ - b_ * c_;
    double m = std::abs(det);
    if (!(m > 0.0) || !std::isfinite(m))
        throw DomainError("Isometry: matrix has zero or non-finite determinant");
    Complex s = std::sqrt(det);
    a_ /= s;
    b_ /= s;
    c_ /= s;
    d_ /= s;
}

HalfSpacePoint Isometry::apply(const HalfSpacePoint& w) const {
    // quaternionic evaluation of (a w + b)(c w + d)^{-1} for w = z + t j
    Complex cz_d = c_ * w.z + d_;
    Complex az_b = a_ * w.z + b_;
    double den = std::norm(cz_d) + std::norm(c_) * w.t * w.t;
    Complex z = (az_b * std::conj(cz_d) + a_ * std::conj(c_) * (w.t * w.t)) / den;
    double t = w.t / den;
    return {z, t};
}

HalfSpacePoint ball_to_halfspace(const BallPoint& x) {
    const Vec3& p = x.vec();
    double D = p.x * p.x + p.y * p.y + (1.0 - p.z) * (1.0 - p.z);
    return {Complex(2.0 * p.x / D, 2.0 * p.y / D), one_minus_norm2(p) / D};
}

BallPoint halfspace_to_ball(const HalfSpacePoint& w) {
    double z2 = std::norm(w.z);
    double E = z2 + (1.0 + w.t) * (1.0 + w.t);
    return BallPoint(2.0 * w.z.real() / E, 2.0 * w.z.imag() / E, (z2 + w.t * w.t - 1.0) / E);
}

BallPoint apply_ball(const Isometry& m, const BallPoint& x) {
    return halfspace_to_ball(m.apply(ball_to_halfspace(x)));
}

Isometry rotation_about(const Vec3& axis, double angle) {
    Vec3 n = axis.normalized();
    double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    // cos(t/2) I + i sin(t/2) (n1 s1 - n2 s2 + n3 s3): the sigma_2 component
    // is mirrored because the chart identifies a+ib with 2 xi1 conj(xi2)
    return Isometry(Complex(c, s * n.z), Complex(-s * n.y, s * n.x),
                    Complex(s * n.y, s * n.x), Complex(c, -s * n.z));
}

Isometry rotation_align(const Vec3& from, const Vec3& to) {
    Vec3 f = from.normalized(), t = to.normalized();
    Vec3 ax = f.cross(t);
    double s = ax.norm(), c = f.dot(t);
    if (s < 1e-300) {
        if (c > 0.0) return Isometry::identity();
        // antiparallel: rotate by pi about any perpendicular axis
        Vec3 perp = std::abs(f.x) < 0.9 ? f.cross(Vec3{1, 0, 0}) : f.cross(Vec3{0, 1, 0});
        return rotation_about(perp, kPi);
    }
    return rotation_about(ax, std::atan2(s, c));
}

Isometry mx_translation(const BallPoint& x) {
    double tau = x.norm();
    if (tau < 1e-300) return Isometry::identity();
    double sq = std::sqrt((1.0 + tau) / (1.0 - tau)); // e^{dist/2}
    Isometry axial(Complex(sq, 0), Complex(0, 0), Complex(0, 0), Complex(1.0 / sq, 0));
    Isometry rot = rotation_align(Vec3{0, 0, 1}, x.vec());
    return rot * axial * rot.inverse();
}

Vec3 mx_ball_closed_form(const Vec3& x, const Vec3& z) {
    double x2 = x.norm2(), z2 = z.norm2(), xz = x.dot(z);
    double den = 1.0 + x2 * z2 + 2.0 * xz;
    return (z * (1.0 - x2) + x * (1.0 + z2 + 2.0 * xz)) / den;
}

double boundary_jacobian(const BallPoint& x, const SpherePoint& zeta) {
    double q = (zeta.vec() + x.vec()).norm2();
    double v = one_minus_norm2(x.vec()) / q;
    return v * v;
}

double hyp_dist(const BallPoint& a, const BallPoint& b) {
    double q = (a.vec() - b.vec()).norm2() /
               (one_minus_norm2(a.vec()) * one_minus_norm2(b.vec()));
    // cosh(d) = 1 + 2q  <=>  sinh(d/2) = sqrt(q); asinh keeps precision near 0
    return 2.0 * std::asinh(std::sqrt(q));
}

double hyp_dist_polar(double d1, const Vec3& dir1, double d2, const Vec3& dir2) {
    double c = dir1.normalized().dot(dir2.normalized());
    c = std::min(1.0, std::max(-1.0, c));
    // cosh d = cosh d1 cosh d2 - sinh d1 sinh d2 cos(theta), evaluated as
    // sinh^2(d/2) = sinh^2((d1-d2)/2) + sinh d1 sinh d2 sin^2(theta/2)
    // which is exact and avoids cancellation for deep points.
    double sh = std::sinh(0.5 * (d1 - d2));
    double s2 = sh * sh + std::sinh(d1) * std::sinh(d2) * 0.5 * (1.0 - c);
    return 2.0 * std::asinh(std::sqrt(std::max(0.0, s2)));
}

CylindricalPoint to_cylindrical(const BallPoint& x) {
    HalfSpacePoint w = ball_to_halfspace(x);
    double z2 = std::norm(w.z);
    double m2 = z2 + w.t * w.t;
    double m = std::sqrt(m2);
    CylindricalPoint c;
    c.h = 0.5 * std::log(m2);
    // cosh r = m / t; sinh^2(r/2) = |z|^2 / (2 t (m + t))
    double s2 = z2 / (2.0 * w.t * (m + w.t));
    c.r = 2.0 * std::asinh(std::sqrt(s2));
    c.theta = (w.z == Complex(0.0, 0.0)) ? 0.0 : std::atan2(w.z.imag(), w.z.real());
    if (c.theta < 0.0) c.theta += kTwoPi;
    if (c.theta >= kTwoPi) c.theta = 0.0;
    return c;
}

BallPoint from_cylindrical(const CylindricalPoint& c) {
    if (c.r < 0.0) throw DomainError("from_cylindrical: r must be >= 0");
    double eh = std::exp(c.h);
    HalfSpacePoint w;
    w.t = eh / std::cosh(c.r);
    double rad = eh * std::tanh(c.r);
    w.z = Complex(rad * std::cos(c.theta), rad * std::sin(c.theta));
    return halfspace_to_ball(w);
}

PairAnnulus pair_annulus(const BallPoint& x, const BallPoint& y) {
    double s = hyp_dist(x, y);
    if (!(s > 0.0))
        throw DegenerateInputError("pair_annulus: coincident points bound no annulus");
    Isometry to_origin = mx_translation(x).inverse();
    BallPoint y1 = apply_ball(to_origin, y);
    Isometry rot = rotation_align(y1.vec(), Vec3{0, 0, 1});
    PairAnnulus a;
    a.normalization = rot * to_origin;
    a.inner_radius = 1.0;
    a.outer_radius = std::exp(s);
    a.modulus = s / kTwoPi;
    return a;
}

double round_annulus_modulus(double r_inner, double r_outer) {
    if (!(r_inner > 0.0) || !(r_outer > r_inner))
        throw DomainError("round_annulus_modulus: need 0 < r_inner < r_outer");
    return std::log(r_outer / r_inner) / kTwoPi;
}

} // namespace barytree
