#pragma once

#include <string>
#include <vector>

#include "barytree/h3.hpp"
#include "barytree/quadrature.hpp"
#include "barytree/rational_map.hpp"
#include "barytree/rng.hpp"
#include "barytree/vec3.hpp"

namespace barytree {

// Discrete probability measure on S^2, kept in the quadrature node order so
// that the mixed derivative operator can pair image points with source nodes.
struct WeightedSpherePoints {
    struct Atom {
        SpherePoint point;
        double weight;
    };
    std::vector<Atom> atoms;
    std::string provenance;
    int degree_hint = 0; // degree of the producing map when known

    void validate() const;
    Vec3 first_moment() const;
};

struct SolverOptions {
    double tolerance = 1e-10;  // residual norm target for the balance vector
    int max_iterations = 160;
    double max_step = 1.0;     // hyperbolic step-length clip
    double condition_limit = 1e8;
};

// Result of a barycenter solve. The solution is carried as the isometry
// `frame` with frame(O) = solution; that representation survives depths far
// beyond what ball coordinates can hold.
struct ExtensionResult {
    Isometry frame;
    double residual = 0.0;
    int iterations = 0;

    BallPoint point() const { return apply_ball(frame, BallPoint::origin()); }
    double depth() const { return frame.origin_displacement(); }
};

// Derivative of the extension in normalized frames: domain point and image
// point are both moved to the origin by the recorded isometries.
struct DerivativeMatrix {
    Mat3 m;
    Isometry domain_frame;
    Isometry image_frame;
    ExtensionResult at;
};

// (f o M_x)_* of the rule's measure: node i carries the projection of
// f(M_x(zeta_i)) with the node's weight.
WeightedSpherePoints pushforward(const RationalMap& f, const BallPoint& x,
                                 const QuadratureRule& rule);
WeightedSpherePoints pushforward_frame(const RationalMap& f, const Isometry& X,
                                       const QuadratureRule& rule);

// Sum of M_{-y}(zeta_i) weighted; vanishes exactly when m is balanced at y.
Vec3 balance_vector(const WeightedSpherePoints& m, const BallPoint& y);

ExtensionResult barycenter(const WeightedSpherePoints& m,
                           const SolverOptions& opts = {});

ExtensionResult extend(const RationalMap& f, const BallPoint& x,
                       const QuadratureRule& rule, const SolverOptions& opts = {});
ExtensionResult extend_frame(const RationalMap& f, const Isometry& X,
                             const QuadratureRule& rule, const SolverOptions& opts = {});

// F_y(0,0) = -2 I + 2 * sum w <., zeta> zeta for a measure balanced at the
// origin (precondition, checked to balance_tol).
Mat3 fy_operator(const WeightedSpherePoints& m, double balance_tol = 1e-8);

// F_x(0,0) = 2n * sum w <., zeta> f(zeta) with n = 2; pairs the pushforward
// atoms with the rule nodes they came from.
Mat3 fx_operator(const WeightedSpherePoints& m, const QuadratureRule& rule);

DerivativeMatrix derivative(const RationalMap& f, const BallPoint& x,
                            const QuadratureRule& rule, const SolverOptions& opts = {});

// spectral norm in the normalized frames; the hyperbolic conformal factors
// at the origin cancel between domain and codomain
double hyperbolic_operator_norm(const DerivativeMatrix& d);

// Conjugates f on the left so the extension fixes the origin.
RationalMap recenter(const RationalMap& f, const QuadratureRule& rule,
                     const SolverOptions& opts = {});

struct LipschitzScanResult {
    double max_norm = 0.0;
    BallPoint argmax;
    double argmax_depth = 0.0;
    std::vector<int> histogram; // 64 bins over [0, bound]
    double histogram_max = 0.0; // right edge of the binned range
    int sample_count = 0;
    int error_count = 0;
    double bound = 0.0;         // 12.2867 * d * (1 + 1e-3)
    bool bound_ok = false;      // asserted
    double max_over_degree = 0.0; // reported, never asserted
    struct Sample {
        double depth;
        Vec3 direction;
        double norm;
        bool on_critical_ray;
        bool failed;
    };
    std::vector<Sample> samples;
};

LipschitzScanResult lipschitz_scan(const RationalMap& f, int sample_count,
                                   uint64_t seed, const QuadratureRule& rule,
                                   double max_depth = 20.0, int workers = 1,
                                   const SolverOptions& opts = {});

struct BeltVolume {
    double belt = 0.0;   // measure of {1/sqrt3 <= |f| <= sqrt3}
    double cap_inner = 0.0; // {|f| < 1/sqrt3}
    double cap_outer = 0.0; // {|f| > sqrt3}
    double lower_bound = 0.0; // 16 log3 / (81 d)
};

// Measures the preimages of the belt and caps. Requires f recentered so the
// extension fixes the origin to within recenter_tol; the radial crossing
// radii are found exactly per azimuth, so f = z^d comes out to roundoff.
BeltVolume belt_volume(const RationalMap& f, const QuadratureRule& rule,
                       double recenter_tol = 1e-6, int azimuth_count = 0);

struct DeltaPoint {
    double r;
    double delta;
    double radial_image; // log cosh r - delta
};

// delta(r) = log cosh r minus the radial coordinate of the extension of z^2
// at the equatorial point (r, 0, 0). Solved through the axisymmetric
// contour-residue reduction, which stays accurate far beyond the generic
// quadrature (the generic path is kept for cross-checks).
std::vector<DeltaPoint> delta_curve(const std::vector<double>& r_grid);

// Same quantity via the generic solver at the given rule, for validation.
DeltaPoint delta_via_extend(double r, const QuadratureRule& rule,
                            const SolverOptions& opts = {});

// Extension of f_t = z(z-t)/(1-tz) at the origin; lands at cylindrical
// (kappa(t), pi, 0) with kappa(t) > 0.
ExtensionResult kappa(double t, const QuadratureRule& rule,
                      const SolverOptions& opts = {});

RationalMap blaschke_ft(double t);

struct LemmaA2Check {
    double j_numeric = 0.0;  // contour quadrature of the circle integrand
    double j_residue = 0.0;  // closed-form residue evaluation
    double g_at_r = 0.0;     // G(r) = r(1-tr)^2 + r^3(r-t)^2
    double x1 = 0.0, x2 = 0.0;
};

// Residue evaluation of the annular integrand for f_t against a trapezoidal
// contour integral; both must agree and be strictly negative for r != 1.
LemmaA2Check lemma_a2_check(double t, double r);

} // namespace barytree
