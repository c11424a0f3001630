#pragma once

#include <optional>
#include <string>
#include <vector>

#include "barytree/h3.hpp"
#include "barytree/plane_point.hpp"
#include "barytree/sphere.hpp"

namespace barytree {

// Rational map on the Riemann sphere as a homogeneous coefficient pair
//   f(z : w) = (P(z, w) : Q(z, w)),
// P, Q of degree d stored z^d-coefficient first. Coefficients are jointly
// normalized so the largest magnitude is 1, which stays stable for maps
// drifting toward the resultant locus.
class RationalMap {
  public:
    // guard: reject when |Res(P,Q)| of the normalized pair falls below it.
    // Compositions of valid maps pass guard = 0 (see compose); their
    // normalized resultant can legitimately underflow any fixed threshold.
    RationalMap(std::vector<Complex> P, std::vector<Complex> Q,
                double resultant_guard = 1e-12);

    static RationalMap identity();
    static RationalMap power(int d); // z^d
    static RationalMap polynomial(const std::vector<Complex>& coeffs_z_first);
    static RationalMap from_mobius(const Isometry& m);

    int degree() const { return degree_; }
    const std::vector<Complex>& P() const { return P_; }
    const std::vector<Complex>& Q() const { return Q_; }

    HomogPoint eval(const HomogPoint& z) const;
    PlanePoint eval(const PlanePoint& z) const;
    SpherePoint eval_sphere(const SpherePoint& zeta) const;

    // chart-independent |f'| with the spherical metric factors
    double spherical_derivative(const PlanePoint& z) const;
    double spherical_derivative(const HomogPoint& z) const;

    // derivative of the dehomogenized map at a finite point
    Complex chart_derivative(Complex z) const;

    // homogeneous Wronskian dP/dz dQ/dw - dP/dw dQ/dz, degree 2d-2, z-first
    std::vector<Complex> wronskian() const;

    std::string describe() const;

  private:
    int degree_;
    std::vector<Complex> P_, Q_;
};

// |Res(P, Q)| of the normalized pair and its log10 (safe against under/
// overflow; -inf signals an exactly singular Sylvester matrix).
double resultant_magnitude(const RationalMap& f);
double resultant_log10(const RationalMap& f);

// critical points with multiplicity, exhaustively as the 2d-2 roots of the
// homogenized Wronskian. Requires degree >= 2.
std::vector<PlanePoint> critical_points(const RationalMap& f);

RationalMap compose(const RationalMap& f, const RationalMap& g,
                    int degree_guard = 64);
RationalMap iterate_map(const RationalMap& f, int n, int degree_guard = 64);

struct PeriodicCycle {
    std::vector<PlanePoint> points;
    int period = 1;
    Complex multiplier{0.0, 0.0};
    bool superattracting = false;
    bool parabolic_collision_warning = false;
};

// All cycles of exact (primitive) period q, from the roots of the
// fixed-point form of f^q. Requires q <= 4 and degree^q <= 64.
std::vector<PeriodicCycle> find_cycles(const RationalMap& f, int q);

// L(C, f) = log |(f^q)'(z_1)|; -inf when the cycle passes through a
// critical point. Computed as the sum of log spherical derivatives, which
// telescopes the chart factors and is safe at infinity.
double cycle_length(const RationalMap& f, const PeriodicCycle& c);

} // namespace barytree
