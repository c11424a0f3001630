#pragma once

#include <vector>

#include "barytree/plane_point.hpp"

namespace barytree {

struct RootResult {
    std::vector<Complex> roots; // finite roots of the dehomogenized polynomial
    double max_residual = 0.0;  // max |p(root)| / coefficient scale
    int iterations = 0;
};

// All roots of p(z) = sum coeffs[k] z^k (ascending order, degree =
// coeffs.size()-1 after trailing-zero trim) by Aberth-Ehrlich simultaneous
// iteration from a perturbed circle, with a Newton polish. Robust for the
// degrees used here (<= ~130). Throws NumericError with the residual when
// the iteration fails to settle.
RootResult polynomial_roots(const std::vector<Complex>& coeffs);

// Roots of the degree-d homogeneous form sum c[k] z^{d-k} w^k given by its
// coefficient list c[0..d] (z^d first). Returns projective roots; leading
// zero coefficients contribute roots at infinity.
std::vector<PlanePoint> homogeneous_roots(const std::vector<Complex>& coeffs_z_first);

// Horner evaluation of sum coeffs[k] z^k.
Complex polyval(const std::vector<Complex>& coeffs, Complex z);

} // namespace barytree
