#pragma once

#include "barytree/rational_map.hpp"

namespace barytree {

// Axisymmetric balance machinery for rational maps with real coefficients.
//
// Such maps commute with complex conjugation and with inversion in the unit
// circle, so the balance vector of the pushforward measure lies along the
// first coordinate axis. That component reduces, per circle |z| = r, to a
// contour integral of a rational function (evaluated exactly by residues)
// followed by a single adaptive radial integration. The reduction is what
// makes the deep-r regime of the z^2 extension computable to near machine
// precision, where a product quadrature would need millions of nodes.

// x-component of the balance vector of f_* mu at the origin.
double axis_balance_x(const RationalMap& f_real);

// Translation along the geodesic with boundary fixed points -1 and +1 by
// signed hyperbolic distance u (positive toward +1).
Isometry axis_translation(double u);

// Signed position rho on the (-1,+1)-axis with the pushforward of f
// balanced at that point; f must have real coefficients and commute with
// inversion in the unit circle (checked only through convergence).
double solve_axis_barycenter(const RationalMap& f_real, double lo, double hi);

// kappa(t): radial coordinate of the extension of z(z-t)/(1-tz) at the
// origin (the image sits at angle pi).
double kappa_exact(double t);

// delta(r) = log cosh r - (radial image coordinate) for z^2.
double delta_exact(double r);

} // namespace barytree
