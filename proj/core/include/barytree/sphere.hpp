#pragma once

#include <cmath>

#include "barytree/errors.hpp"
#include "barytree/plane_point.hpp"
#include "barytree/vec3.hpp"

namespace barytree {

// A point of the unit 2-sphere, kept normalized to 1e-12 by construction.
class SpherePoint {
  public:
    SpherePoint() : v_(0.0, 0.0, 1.0) {}
    explicit SpherePoint(const Vec3& v) : v_(v) { renormalize(); }
    SpherePoint(double x, double y, double z) : v_(x, y, z) { renormalize(); }

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }

    SpherePoint antipode() const {
        SpherePoint p;
        p.v_ = -v_; // exact negation, no renormalization drift
        return p;
    }

  private:
    void renormalize() {
        double n = v_.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw DomainError("SpherePoint: zero or non-finite vector");
        v_ = v_ / n;
    }
    Vec3 v_;
};

// Stereographic chart: plane point z maps to
//   ( 2z/(1+|z|^2), (|z|^2-1)/(1+|z|^2) ),
// so 0 is the south pole and infinity the north pole.
inline SpherePoint stereo_project(const PlanePoint& z) {
    if (z.is_infinity()) return SpherePoint(0.0, 0.0, 1.0);
    Complex v = z.value();
    double r2 = std::norm(v);
    if (r2 <= 1.0) {
        double d = 1.0 + r2;
        return SpherePoint(2.0 * v.real() / d, 2.0 * v.imag() / d, (r2 - 1.0) / d);
    }
    // evaluate through w = 1/z to stay finite for huge |z|
    Complex w = 1.0 / v;
    double w2 = std::norm(w);
    double d = 1.0 + w2;
    return SpherePoint(2.0 * w.real() / d, -2.0 * w.imag() / d, (1.0 - w2) / d);
}

// Same chart applied to a projective pair (a : b); never overflows.
inline SpherePoint stereo_project(const HomogPoint& h) {
    double na = std::norm(h.a), nb = std::norm(h.b);
    double d = na + nb;
    if (d == 0.0) throw DomainError("stereo_project: (0:0) is not a point");
    Complex ab = h.a * std::conj(h.b);
    return SpherePoint(2.0 * ab.real() / d, 2.0 * ab.imag() / d, (na - nb) / d);
}

// 1 - z computed as (x^2+y^2)/(1+z) in the northern hemisphere, which keeps
// full relative precision arbitrarily close to the pole.
inline double one_minus_height(const SpherePoint& p) {
    if (p.z() <= 0.0) return 1.0 - p.z();
    return (p.x() * p.x() + p.y() * p.y()) / (1.0 + p.z());
}

inline HomogPoint stereo_unproject_homog(const SpherePoint& p) {
    double d = one_minus_height(p);
    if (d == 0.0) return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    return HomogPoint::normalized(Complex(p.x(), p.y()), Complex(d, 0.0));
}

inline PlanePoint stereo_unproject(const SpherePoint& p) {
    return stereo_unproject_homog(p).to_plane();
}

} // namespace barytree
