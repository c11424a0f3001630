#include "barytree/degeneration.hpp"

#include <algorithm>
#include <cmath>

#include "barytree/errors.hpp"
#include "barytree/roots.hpp"

namespace barytree {

FamilySpec FamilySpec::scaled_power(int d, std::vector<Complex> params) {
    FamilySpec fs;
    fs.label = "scaled_power_" + std::to_string(d);
    fs.parameters = std::move(params);
    fs.generator = [d](Complex a) {
        std::vector<Complex> P(d + 1, Complex(0, 0)), Q(d + 1, Complex(0, 0));
        P[0] = a;
        Q[d] = Complex(1, 0);
        return RationalMap(std::move(P), std::move(Q));
    };
    return fs;
}

FamilySpec FamilySpec::offset_power(int d, std::vector<Complex> params) {
    FamilySpec fs;
    fs.label = "offset_power_" + std::to_string(d);
    fs.parameters = std::move(params);
    fs.generator = [d](Complex c) {
        std::vector<Complex> P(d + 1, Complex(0, 0)), Q(d + 1, Complex(0, 0));
        P[0] = Complex(1, 0);
        P[d] = c;
        Q[d] = Complex(1, 0);
        return RationalMap(std::move(P), std::move(Q));
    };
    return fs;
}

FamilySpec FamilySpec::mobius_scale(std::vector<Complex> params) {
    FamilySpec fs;
    fs.label = "mobius_scale";
    fs.parameters = std::move(params);
    fs.generator = [](Complex c) {
        return RationalMap({c, Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)});
    };
    return fs;
}

namespace {

// One damped Newton search for extend(f, y) = O starting from the frame X0.
// The residual is the pushforward balance seen from the origin; the Jacobian
// is the mixed derivative 4 sum w f(zeta) zeta^T of the implicit equation.
struct PreimageAttempt {
    bool converged = false;
    Isometry frame;
    double residual = 0.0;
};

PreimageAttempt preimage_newton(const RationalMap& f, const QuadratureRule& rule,
                                Isometry X, const SolverOptions& opts) {
    const double step_cap = std::tanh(0.5 * opts.max_step);
    std::vector<HomogPoint> nodes;
    nodes.reserve(rule.size());
    for (const auto& n : rule.nodes()) nodes.push_back(stereo_unproject_homog(n.point));

    auto residual_at = [&](const Isometry& Xc, Vec3* bal, Mat3* jac) -> double {
        Vec3 b;
        Mat3 J = Mat3::zero();
        for (std::size_t i = 0; i < nodes.size(); i++) {
            double w = rule.nodes()[i].weight;
            SpherePoint img = stereo_project(f.eval(Xc.apply(nodes[i])));
            b += img.vec() * w;
            if (jac) J += Mat3::outer(img.vec(), rule.nodes()[i].point.vec()) * (4.0 * w);
        }
        if (bal) *bal = b;
        if (jac) *jac = J;
        return b.norm();
    };

    Vec3 b;
    Mat3 J;
    double res = residual_at(X, &b, &J);
    PreimageAttempt out;
    int stagnant = 0;
    for (int it = 0; it < opts.max_iterations; it++) {
        if (res < opts.tolerance) break;
        Vec3 s;
        bool solved = false;
        if (std::abs(J.det()) > 1e-14) {
            try {
                s = J.solve(-b);
                solved = true;
            } catch (const NumericError&) {
            }
        }
        if (!solved) s = -b * 0.5; // crude descent when the Jacobian degenerates
        double slen = s.norm();
        if (slen > step_cap) s = s * (step_cap / slen);
        bool accepted = false;
        for (int half = 0; half < 10; half++) {
            Isometry X_try = X * mx_translation(BallPoint(s));
            double res_try = residual_at(X_try, nullptr, nullptr);
            if (res_try < res) {
                X = X_try;
                res = res_try;
                accepted = true;
                break;
            }
            s = s * 0.5;
        }
        if (!accepted && ++stagnant >= 3) break;
        if (accepted) stagnant = 0;
        res = residual_at(X, &b, &J);
    }
    out.converged = res < opts.tolerance;
    out.frame = X;
    out.residual = res;
    return out;
}

} // namespace

PreimageSet preimages_of_origin(const RationalMap& f_in, const QuadratureRule& rule,
                                const PreimageSearchSpec& search,
                                const SolverOptions& opts, const BallPoint& basepoint) {
    // solving extend(f, y) = b is extend(M_b^{-1} o f, y) = O
    RationalMap f = f_in;
    if (basepoint.vec().norm() > 0.0)
        f = compose(RationalMap::from_mobius(mx_translation(basepoint).inverse()), f_in,
                    std::max(64, f_in.degree()));

    // seed directions: rays toward every finite preimage of 0 and of infinity
    std::vector<Vec3> dirs;
    for (const PlanePoint& z : homogeneous_roots(f.P())) dirs.push_back(stereo_project(z).vec());
    for (const PlanePoint& z : homogeneous_roots(f.Q())) dirs.push_back(stereo_project(z).vec());

    PreimageSet out;
    out.basepoint = basepoint;
    out.dedupe_radius = search.dedupe_radius;

    std::vector<Isometry> seeds;
    seeds.push_back(Isometry::identity());
    for (const Vec3& dir : dirs)
        for (double depth : search.ray_depths)
            seeds.push_back(mx_translation(BallPoint(dir * std::tanh(0.5 * depth))));
    Rng rng(search.seed);
    for (int i = 0; i < search.random_seeds; i++) {
        double depth = rng.uniform(0.0, search.random_depth_max);
        Vec3 dir = rng.unit_vector();
        seeds.push_back(mx_translation(BallPoint(dir * std::tanh(0.5 * depth))));
    }

    QuadratureRule verify_rule = make_quadrature(2 * rule.order());
    for (const Isometry& seed : seeds) {
        out.seeds_tried++;
        PreimageAttempt att = preimage_newton(f, rule, seed, opts);
        if (!att.converged) continue;
        // re-verify and polish on a doubled-order rule
        PreimageAttempt ver = preimage_newton(f, verify_rule, att.frame, opts);
        if (!ver.converged || ver.residual > 10.0 * opts.tolerance) continue;
        out.seeds_converged++;
        bool merged = false;
        for (auto& sol : out.solutions) {
            if (hyp_dist_frames(sol.frame, ver.frame) < search.dedupe_radius) {
                if (ver.residual < sol.residual) {
                    sol.frame = ver.frame;
                    sol.residual = ver.residual;
                    sol.depth = ver.frame.origin_displacement();
                }
                merged = true;
                break;
            }
        }
        if (!merged)
            out.solutions.push_back(
                {ver.frame, ver.residual, ver.frame.origin_displacement()});
    }
    if (out.solutions.empty())
        throw SearchFailureError(
            "preimages_of_origin: no solutions found; the extension is surjective, so "
            "the search budget was insufficient");
    // deterministic order: by depth then direction
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const PreimageSet::Solution& a, const PreimageSet::Solution& b) {
                  return a.depth < b.depth;
              });
    return out;
}

double rescale_radius(const PreimageSet& p) {
    if (p.solutions.empty()) throw DomainError("rescale_radius: empty preimage set");
    double m = 0.0;
    for (const auto& s : p.solutions) m = std::max(m, s.depth);
    return m;
}

std::vector<DegenerationRow> degeneration_indicator(const FamilySpec& family,
                                                    const QuadratureRule& rule,
                                                    const PreimageSearchSpec& search,
                                                    const SolverOptions& opts) {
    std::vector<DegenerationRow> rows;
    for (Complex p : family.parameters) {
        DegenerationRow row;
        row.parameter = p;
        try {
            RationalMap f = family.generator(p);
            row.resultant = resultant_magnitude(f);
            row.radius = rescale_radius(preimages_of_origin(f, rule, search, opts));
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

// deterministic choice of the tracked cycle: largest finite length, falling
// back to the first superattracting one in coordinate order
std::optional<PeriodicCycle> pick_cycle(const RationalMap& f, int q) {
    std::vector<PeriodicCycle> cycles = find_cycles(f, q);
    if (cycles.empty()) return std::nullopt;
    auto key = [](const PeriodicCycle& c) {
        HomogPoint h = HomogPoint::from_plane(c.points[0]);
        SpherePoint s = stereo_project(h);
        return std::make_tuple(s.x(), s.y(), s.z());
    };
    std::sort(cycles.begin(), cycles.end(),
              [&](const PeriodicCycle& a, const PeriodicCycle& b) { return key(a) < key(b); });
    const PeriodicCycle* best = nullptr;
    double best_len = -std::numeric_limits<double>::infinity();
    for (const auto& c : cycles) {
        double len = cycle_length(f, c);
        if (std::isfinite(len) && len > best_len) {
            best_len = len;
            best = &c;
        }
    }
    if (!best) best = &cycles.front();
    return *best;
}

} // namespace

std::vector<TranslationRecord>
translation_estimate(const FamilySpec& family, int q, const QuadratureRule& rule,
                     const std::vector<double>& depth_grid,
                     const PreimageSearchSpec& search, const SolverOptions& opts,
                     const std::optional<Isometry>& conjugation) {
    std::vector<TranslationRecord> records;
    for (Complex p : family.parameters) {
        TranslationRecord rec;
        rec.parameter = p;
        rec.depth_fractions = depth_grid;
        try {
            RationalMap f = family.generator(p);
            BallPoint base = BallPoint::origin();
            if (conjugation) {
                f = compose(compose(RationalMap::from_mobius(*conjugation), f,
                                    std::max(64, f.degree())),
                            RationalMap::from_mobius(conjugation->inverse()),
                            std::max(64, f.degree()));
                base = apply_ball(*conjugation, BallPoint::origin());
            }
            PreimageSet pre = preimages_of_origin(f, rule, search, opts, base);
            rec.radius = rescale_radius(pre);

            auto cyc = pick_cycle(f, q);
            if (!cyc) throw SearchFailureError("translation_estimate: no cycles found");
            rec.cycle_len = cycle_length(f, *cyc);
            rec.multiplier_ratio = rec.cycle_len / rec.radius;

            RationalMap fq = (q == 1) ? f : iterate_map(f, q);
            Isometry base_frame = mx_translation(base);
            // ray direction toward the cycle point, seen from the basepoint
            Vec3 base_dir =
                stereo_project(base_frame.inverse().apply(
                                   HomogPoint::from_plane(cyc->points[0])))
                    .vec();
            for (double t : depth_grid) {
                double depth = t * rec.radius;
                // x at hyperbolic depth t r_n from the basepoint toward the cycle point
                Isometry X =
                    base_frame * mx_translation(BallPoint(base_dir * std::tanh(0.5 * depth)));
                ExtensionResult e = extend_frame(fq, X, rule, opts);
                double img_depth = hyp_dist_frames(base_frame, e.frame);
                rec.displacement_ratios.push_back((depth - img_depth) / rec.radius);
            }
            rec.displacement_ratio = rec.displacement_ratios.back();
            rec.gap = std::isfinite(rec.multiplier_ratio)
                          ? std::abs(rec.multiplier_ratio - rec.displacement_ratio)
                          : std::numeric_limits<double>::infinity();
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

double naturality_gap(const RationalMap& f, int n, const BallPoint& x,
                      const QuadratureRule& rule, const SolverOptions& opts) {
    if (n < 1) throw DomainError("naturality_gap: n must be >= 1");
    RationalMap fn = iterate_map(f, n);
    ExtensionResult once = extend(fn, x, rule, opts);
    Isometry chain = mx_translation(x);
    for (int i = 0; i < n; i++) chain = extend_frame(f, chain, rule, opts).frame;
    return hyp_dist_frames(once.frame, chain);
}

std::vector<SnapshotRecord> snapshot(const RationalMap& f, double scale,
                                     const std::vector<BallPoint>& marked_points,
                                     const std::vector<PlanePoint>& marked_directions,
                                     const QuadratureRule& rule,
                                     const SolverOptions& opts) {
    if (!(scale > 0.0)) throw DomainError("snapshot: scale must be positive");
    std::vector<SnapshotRecord> out;
    auto emit = [&](const std::string& label, const Isometry& frame) {
        SnapshotRecord r;
        r.label = label;
        r.depth = frame.origin_displacement();
        // direction from the half-space image; works at any depth
        HalfSpacePoint w = frame.apply(HalfSpacePoint{});
        double z2 = std::norm(w.z);
        Vec3 v{2.0 * w.z.real(), 2.0 * w.z.imag(), z2 + w.t * w.t - 1.0};
        r.direction = v.norm() > 0 ? v.normalized() : Vec3{0, 0, 1};
        r.rescaled = r.direction * (r.depth / scale);
        out.push_back(std::move(r));
    };
    emit("basepoint", Isometry::identity());
    int idx = 0;
    for (const BallPoint& p : marked_points) {
        Isometry frame = mx_translation(p);
        emit("mark_" + std::to_string(idx), frame);
        emit("image_mark_" + std::to_string(idx), extend_frame(f, frame, rule, opts).frame);
        idx++;
    }
    idx = 0;
    for (const PlanePoint& z : marked_directions) {
        Vec3 dir = stereo_project(z).vec();
        Isometry frame = mx_translation(BallPoint(dir * std::tanh(0.5 * scale)));
        emit("ray_" + std::to_string(idx), frame);
        emit("image_ray_" + std::to_string(idx), extend_frame(f, frame, rule, opts).frame);
        idx++;
    }
    return out;
}

} // namespace barytree
