#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "barytree/barycentric.hpp"

namespace barytree {

// A parameterized family of rational maps with a parameter schedule,
// typically geometric (|c_n| = 10^k) so the rescaling radius steps linearly.
struct FamilySpec {
    std::string label;
    std::function<RationalMap(Complex)> generator;
    std::vector<Complex> parameters;

    static FamilySpec scaled_power(int d, std::vector<Complex> params);   // a z^d
    static FamilySpec offset_power(int d, std::vector<Complex> params);   // z^d + c
    static FamilySpec mobius_scale(std::vector<Complex> params);          // c z
};

struct PreimageSearchSpec {
    std::vector<double> ray_depths = {1.0, 2.0, 4.0, 8.0, 16.0};
    int random_seeds = 24;
    double random_depth_max = 16.0;
    uint64_t seed = 7;
    double dedupe_radius = 1e-4;
};

// Solutions of extend(f, y) = basepoint found by seeded Newton searches.
// Search-based and therefore a lower bound: completeness is not certified.
struct PreimageSet {
    struct Solution {
        Isometry frame; // frame(O) = solution point
        double residual;
        double depth;   // hyperbolic distance to the basepoint
        BallPoint point_or_throw() const {
            return apply_ball(frame, BallPoint::origin());
        }
    };
    std::vector<Solution> solutions;
    BallPoint basepoint;
    int seeds_tried = 0;
    int seeds_converged = 0;
    double dedupe_radius = 0.0;
};

PreimageSet preimages_of_origin(const RationalMap& f, const QuadratureRule& rule,
                                const PreimageSearchSpec& search = {},
                                const SolverOptions& opts = {},
                                const BallPoint& basepoint = BallPoint::origin());

// max distance from the basepoint over the found solutions
double rescale_radius(const PreimageSet& p);

struct DegenerationRow {
    Complex parameter;
    double radius = 0.0;
    double resultant = 0.0;
    bool failed = false;
    std::string error;
};

std::vector<DegenerationRow> degeneration_indicator(const FamilySpec& family,
                                                    const QuadratureRule& rule,
                                                    const PreimageSearchSpec& search = {},
                                                    const SolverOptions& opts = {});

struct TranslationRecord {
    Complex parameter;
    double radius = 0.0;             // r_n
    double cycle_len = 0.0;          // L(C_n, f_n), may be -inf
    double multiplier_ratio = 0.0;   // L / r_n
    std::vector<double> depth_fractions;
    std::vector<double> displacement_ratios; // one per depth fraction
    double displacement_ratio = 0.0; // at the deepest fraction
    double gap = 0.0;                // |multiplier_ratio - displacement_ratio|
    bool failed = false;
    std::string error;
};

std::vector<TranslationRecord>
translation_estimate(const FamilySpec& family, int q, const QuadratureRule& rule,
                     const std::vector<double>& depth_grid = {0.25, 0.5, 0.75, 1.0},
                     const PreimageSearchSpec& search = {},
                     const SolverOptions& opts = {},
                     const std::optional<Isometry>& conjugation = std::nullopt);

// dist(extension of f^N at x, N-fold composition of the extension at x)
double naturality_gap(const RationalMap& f, int n, const BallPoint& x,
                      const QuadratureRule& rule, const SolverOptions& opts = {});

struct SnapshotRecord {
    std::string label;
    Vec3 direction;
    double depth = 0.0;     // hyperbolic distance from the basepoint
    Vec3 rescaled;          // direction * depth / scale
};

// Finite-scale stand-in for the rescaled limit: positions of the basepoint,
// the marked points, and their extension images, with distances divided by
// the scale. Boundary marks are placed at depth = scale along their ray.
std::vector<SnapshotRecord> snapshot(const RationalMap& f, double scale,
                                     const std::vector<BallPoint>& marked_points,
                                     const std::vector<PlanePoint>& marked_directions,
                                     const QuadratureRule& rule,
                                     const SolverOptions& opts = {});

} // namespace barytree
