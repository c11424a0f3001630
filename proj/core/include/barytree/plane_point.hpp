#pragma once

#include <cmath>
#include <complex>

namespace barytree {

using Complex = std::complex<double>;

// A point of the extended complex plane. Infinity is an explicit case, never
// a large float, so that rational maps evaluate exactly at poles.
class PlanePoint {
  public:
    constexpr PlanePoint() : value_(0.0, 0.0), infinite_(false) {}
    constexpr PlanePoint(Complex v) : value_(v), infinite_(false) {}
    constexpr PlanePoint(double v) : value_(v, 0.0), infinite_(false) {}

    static constexpr PlanePoint infinity() {
        PlanePoint p;
        p.infinite_ = true;
        p.value_ = Complex(0.0, 0.0);
        return p;
    }

    constexpr bool is_infinity() const { return infinite_; }
    Complex value() const { return value_; }

    bool operator==(const PlanePoint& o) const {
        if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
        return value_ == o.value_;
    }

  private:
    Complex value_;
    bool infinite_;
};

// Projective representative (a : b) of a point of the extended plane,
// normalized so max(|a|,|b|) = 1. All chained Mobius/rational evaluations go
// through this form; it cannot overflow for any input magnitude.
struct HomogPoint {
    Complex a{0.0, 0.0}; // numerator
    Complex b{1.0, 0.0}; // denominator

    static HomogPoint from_plane(const PlanePoint& z) {
        if (z.is_infinity()) return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
        Complex v = z.value();
        double m = std::max(std::abs(v.real()), std::abs(v.imag()));
        if (m > 1.0) {
            // rescale so both entries stay moderate
            return normalized(v, Complex(1.0, 0.0));
        }
        return {v, Complex(1.0, 0.0)};
    }

    static HomogPoint normalized(Complex a, Complex b) {
        double ma = std::max(std::abs(a.real()), std::abs(a.imag()));
        double mb = std::max(std::abs(b.real()), std::abs(b.imag()));
        double m = std::max(ma, mb);
        if (m == 0.0 || !std::isfinite(m)) return {a, b};
        return {a / m, b / m};
    }

    PlanePoint to_plane() const {
        if (b == Complex(0.0, 0.0)) return PlanePoint::infinity();
        Complex v = a / b;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return PlanePoint::infinity();
        return PlanePoint(v);
    }
};

inline double chordal_distance(const PlanePoint& p, const PlanePoint& q) {
    HomogPoint hp = HomogPoint::from_plane(p), hq = HomogPoint::from_plane(q);
    double num = std::abs(hp.a * hq.b - hq.a * hp.b);
    double d1 = std::sqrt(std::norm(hp.a) + std::norm(hp.b));
    double d2 = std::sqrt(std::norm(hq.a) + std::norm(hq.b));
    return 2.0 * num / (d1 * d2);
}

} // namespace barytree
