#include "barytree/barycentric.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "barytree/errors.hpp"
#include "barytree/parallel.hpp"
#include "barytree/planar_balance.hpp"
#include "barytree/roots.hpp"

namespace barytree {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLog3 = 1.0986122886681096913952452369225;
constexpr double kLipschitzConstant = 12.2867; // certified bound coefficient
} // namespace

void WeightedSpherePoints::validate() const {
    double sum = 0.0;
    for (const Atom& a : atoms) {
        if (!(a.weight > 0.0)) throw DomainError("WeightedSpherePoints: weights must be positive");
        sum += a.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DomainError("WeightedSpherePoints: weights must sum to 1");
}

Vec3 WeightedSpherePoints::first_moment() const {
    Vec3 s;
    for (const Atom& a : atoms) s += a.point.vec() * a.weight;
    return s;
}

WeightedSpherePoints pushforward_frame(const RationalMap& f, const Isometry& X,
                                       const QuadratureRule& rule) {
    WeightedSpherePoints m;
    m.atoms.reserve(rule.size());
    m.degree_hint = f.degree();
    m.provenance = "pushforward(" + f.describe() + ")";
    for (const auto& n : rule.nodes()) {
        HomogPoint z = X.apply(stereo_unproject_homog(n.point));
        m.atoms.push_back({stereo_project(f.eval(z)), n.weight});
    }
    return m;
}

WeightedSpherePoints pushforward(const RationalMap& f, const BallPoint& x,
                                 const QuadratureRule& rule) {
    return pushforward_frame(f, mx_translation(x), rule);
}

Vec3 balance_vector(const WeightedSpherePoints& m, const BallPoint& y) {
    Vec3 neg = -y.vec();
    Vec3 b;
    for (const auto& a : m.atoms) b += mx_ball_closed_form(neg, a.point.vec()) * a.weight;
    return b;
}

namespace {

// One pass over the measure conjugated into the frame Y: balance vector and
// the second-moment matrix T = sum w zeta zeta^T.
void frame_moments(const std::vector<HomogPoint>& atoms,
                   const std::vector<double>& weights, const Isometry& Y_inv,
                   Vec3& b, Mat3& T) {
    b = Vec3();
    T = Mat3::zero();
    for (std::size_t i = 0; i < atoms.size(); i++) {
        SpherePoint p = stereo_project(Y_inv.apply(atoms[i]));
        const Vec3& v = p.vec();
        double w = weights[i];
        b += v * w;
        T(0, 0) += w * v.x * v.x;
        T(0, 1) += w * v.x * v.y;
        T(0, 2) += w * v.x * v.z;
        T(1, 1) += w * v.y * v.y;
        T(1, 2) += w * v.y * v.z;
        T(2, 2) += w * v.z * v.z;
    }
    T(1, 0) = T(0, 1);
    T(2, 0) = T(0, 2);
    T(2, 1) = T(1, 2);
}

double balance_norm_at(const std::vector<HomogPoint>& atoms,
                       const std::vector<double>& weights, const Isometry& Y_inv) {
    Vec3 b;
    for (std::size_t i = 0; i < atoms.size(); i++)
        b += stereo_project(Y_inv.apply(atoms[i])).vec() * weights[i];
    return b.norm();
}

struct SolveAttempt {
    bool converged = false;
    Isometry frame;
    double residual = 0.0;
    int iterations = 0;
    double t_lambda_min = 0.0, t_lambda_max = 0.0;
};

SolveAttempt newton_solve(const std::vector<HomogPoint>& atoms,
                          const std::vector<double>& weights, Isometry Y,
                          const SolverOptions& opts) {
    SolveAttempt out;
    const double step_cap = std::tanh(0.5 * opts.max_step); // euclidean radius of a
                                                            // unit hyperbolic step
    Isometry Y_inv = Y.inverse();
    Vec3 b;
    Mat3 T;
    frame_moments(atoms, weights, Y_inv, b, T);
    double res = b.norm();
    int stagnant = 0;
    int it = 0;
    for (; it < opts.max_iterations; it++) {
        if (res < opts.tolerance) break;
        auto ev = symmetric_eigenvalues(T);
        out.t_lambda_min = ev[0];
        out.t_lambda_max = ev[2];
        Vec3 s;
        double gap = 1.0 - ev[2];
        if (gap < 1e-13) {
            // measure still looks like a point mass from here; march toward it
            s = b * (0.5 / std::max(res, 1e-13));
        } else {
            Mat3 fy = Mat3::identity() * -2.0 + T * 2.0;
            s = fy.solve(-b);
        }
        double slen = s.norm();
        if (slen > step_cap) s = s * (step_cap / slen);
        bool accepted = false;
        for (int half = 0; half < 10; half++) {
            Isometry Y_try = Y * mx_translation(BallPoint(s));
            Isometry Y_try_inv = Y_try.inverse();
            double res_try = balance_norm_at(atoms, weights, Y_try_inv);
            if (res_try <= res) {
                Y = Y_try;
                Y_inv = Y_try_inv;
                res = res_try;
                accepted = true;
                break;
            }
            s = s * 0.5;
        }
        if (!accepted) {
            if (++stagnant >= 3) break;
        } else {
            stagnant = 0;
        }
        frame_moments(atoms, weights, Y_inv, b, T);
        res = b.norm();
    }
    out.converged = res < opts.tolerance;
    out.frame = Y;
    out.residual = res;
    out.iterations = it;
    if (out.converged) {
        auto ev = symmetric_eigenvalues(T);
        out.t_lambda_min = ev[0];
        out.t_lambda_max = ev[2];
    }
    return out;
}

} // namespace

ExtensionResult barycenter(const WeightedSpherePoints& m, const SolverOptions& opts) {
    m.validate();
    double wmax = 0.0;
    for (const auto& a : m.atoms) wmax = std::max(wmax, a.weight);
    if (!(wmax < 0.25))
        throw PreconditionError("barycenter: an atom of weight >= 1/4 breaks uniqueness");

    std::vector<HomogPoint> atoms;
    atoms.reserve(m.atoms.size());
    std::vector<double> weights;
    weights.reserve(m.atoms.size());
    for (const auto& a : m.atoms) {
        atoms.push_back(stereo_unproject_homog(a.point));
        weights.push_back(a.weight);
    }

    SolveAttempt best = newton_solve(atoms, weights, Isometry::identity(), opts);
    if (!best.converged) {
        // fallback seed: euclidean centroid of the atoms pulled into the ball
        Vec3 c = m.first_moment();
        double n = c.norm();
        if (n > 0.95) c = c * (0.95 / n);
        SolveAttempt second =
            newton_solve(atoms, weights, mx_translation(BallPoint(c)), opts);
        if (second.residual < best.residual) best = second;
    }
    if (!best.converged)
        throw NumericError("barycenter: Newton iteration did not reach tolerance",
                           best.residual);
    double cond = (1.0 - best.t_lambda_min) / std::max(1.0 - best.t_lambda_max, 1e-300);
    if (cond > opts.condition_limit)
        throw ConcentrationError("barycenter: balance Jacobian is ill-conditioned", cond);

    ExtensionResult r;
    r.frame = best.frame;
    r.residual = best.residual;
    r.iterations = best.iterations;
    return r;
}

ExtensionResult extend_frame(const RationalMap& f, const Isometry& X,
                             const QuadratureRule& rule, const SolverOptions& opts) {
    return barycenter(pushforward_frame(f, X, rule), opts);
}

ExtensionResult extend(const RationalMap& f, const BallPoint& x,
                       const QuadratureRule& rule, const SolverOptions& opts) {
    return extend_frame(f, mx_translation(x), rule, opts);
}

Mat3 fy_operator(const WeightedSpherePoints& m, double balance_tol) {
    double drift = m.first_moment().norm();
    if (drift > balance_tol)
        throw PreconditionError("fy_operator: measure is not balanced at the origin");
    Mat3 T = Mat3::zero();
    for (const auto& a : m.atoms) T += Mat3::outer(a.point.vec(), a.point.vec()) * a.weight;
    return Mat3::identity() * -2.0 + T * 2.0;
}

Mat3 fx_operator(const WeightedSpherePoints& m, const QuadratureRule& rule) {
    if (m.atoms.size() != rule.size())
        throw PreconditionError("fx_operator: measure does not match the rule's nodes");
    Mat3 fx = Mat3::zero();
    for (std::size_t i = 0; i < m.atoms.size(); i++) {
        fx += Mat3::outer(m.atoms[i].point.vec(), rule.nodes()[i].point.vec()) *
              (4.0 * m.atoms[i].weight);
    }
    return fx;
}

DerivativeMatrix derivative(const RationalMap& f, const BallPoint& x,
                            const QuadratureRule& rule, const SolverOptions& opts) {
    Isometry A = mx_translation(x);
    ExtensionResult ext = extend_frame(f, A, rule, opts);
    Isometry B_inv = ext.frame.inverse();

    WeightedSpherePoints conj;
    conj.atoms.reserve(rule.size());
    conj.degree_hint = f.degree();
    for (const auto& n : rule.nodes()) {
        HomogPoint z = A.apply(stereo_unproject_homog(n.point));
        conj.atoms.push_back({stereo_project(B_inv.apply(f.eval(z))), n.weight});
    }
    Mat3 fy = fy_operator(conj, std::max(1e-7, 100.0 * ext.residual));
    Mat3 fx = fx_operator(conj, rule);

    DerivativeMatrix d;
    d.m = (fy.inverse() * fx) * -1.0;
    d.domain_frame = A;
    d.image_frame = ext.frame;
    d.at = ext;
    return d;
}

double hyperbolic_operator_norm(const DerivativeMatrix& d) { return spectral_norm(d.m); }

RationalMap recenter(const RationalMap& f, const QuadratureRule& rule,
                     const SolverOptions& opts) {
    ExtensionResult e = extend(f, BallPoint::origin(), rule, opts);
    return compose(RationalMap::from_mobius(e.frame.inverse()), f,
                   std::max(64, f.degree()));
}

LipschitzScanResult lipschitz_scan(const RationalMap& f, int sample_count,
                                   uint64_t seed, const QuadratureRule& rule,
                                   double max_depth, int workers,
                                   const SolverOptions& opts) {
    LipschitzScanResult out;
    out.sample_count = sample_count;
    out.bound = kLipschitzConstant * f.degree() * (1.0 + 1e-3);
    out.samples.resize(sample_count);

    std::vector<Vec3> crit_dirs;
    if (f.degree() >= 2) {
        for (const PlanePoint& c : critical_points(f))
            crit_dirs.push_back(stereo_project(c).vec());
    }
    Rng base(seed);
    // fork per sample so results do not depend on the worker count
    std::vector<Rng> rngs;
    rngs.reserve(sample_count);
    for (int i = 0; i < sample_count; i++) rngs.push_back(base.fork(i));

    parallel_for(sample_count, workers, [&](std::size_t i) {
        Rng rng = rngs[i];
        LipschitzScanResult::Sample& s = out.samples[i];
        double depth = rng.uniform(0.0, max_depth);
        Vec3 dir;
        bool on_ray = false;
        if (!crit_dirs.empty() && i % 4 == 3) {
            dir = crit_dirs[(i / 4) % crit_dirs.size()];
            on_ray = rng.uniform() < 0.5;
            if (!on_ray) {
                // small transverse jitter around the critical geodesic
                Vec3 j{rng.normal(), rng.normal(), rng.normal()};
                dir = (dir + j * 0.05).normalized();
            }
        } else {
            dir = rng.unit_vector();
        }
        s.depth = depth;
        s.direction = dir;
        s.on_critical_ray = on_ray;
        try {
            BallPoint x(dir * std::tanh(0.5 * depth));
            DerivativeMatrix d = derivative(f, x, rule, opts);
            s.norm = hyperbolic_operator_norm(d);
            s.failed = false;
        } catch (const std::exception&) {
            s.failed = true;
            s.norm = 0.0;
        }
    });

    out.histogram.assign(64, 0);
    out.histogram_max = out.bound;
    for (int i = 0; i < sample_count; i++) {
        const auto& s = out.samples[i];
        if (s.failed) {
            out.error_count++;
            continue;
        }
        int bin = std::min(63, std::max(0, int(s.norm / out.histogram_max * 64)));
        out.histogram[bin]++;
        if (s.norm > out.max_norm) {
            out.max_norm = s.norm;
            out.argmax = BallPoint(s.direction * std::tanh(0.5 * s.depth));
            out.argmax_depth = s.depth;
        }
    }
    out.bound_ok = out.max_norm <= out.bound;
    out.max_over_degree = out.max_norm / f.degree();
    return out;
}

namespace {

// real coefficients of |R(r e^{i theta})|^2 as a polynomial in r, for the
// degree-d coefficient list stored z-first
std::vector<double> abs2_radial_poly(const std::vector<Complex>& z_first, double theta) {
    const int d = static_cast<int>(z_first.size()) - 1;
    std::vector<Complex> b(d + 1);
    for (int j = 0; j <= d; j++) {
        Complex a = z_first[d - j]; // coefficient of z^j
        b[j] = a * Complex(std::cos(j * theta), std::sin(j * theta));
    }
    std::vector<double> c(2 * d + 1, 0.0);
    for (int j = 0; j <= d; j++)
        for (int k = 0; k <= d; k++) c[j + k] += (b[j] * std::conj(b[k])).real();
    return c;
}

} // namespace

BeltVolume belt_volume(const RationalMap& f, const QuadratureRule& rule,
                       double recenter_tol, int azimuth_count) {
    ExtensionResult center = extend(f, BallPoint::origin(), rule);
    if (center.frame.origin_displacement() > recenter_tol)
        throw PreconditionError("belt_volume: map is not recentered, conjugate by the "
                                "inverse of its extension at the origin first");

    const int m = azimuth_count > 0 ? azimuth_count : std::max(256, 8 * rule.order());
    BeltVolume out;
    out.lower_bound = 16.0 * kLog3 / (81.0 * f.degree());

    for (int j = 0; j < m; j++) {
        double theta = 2.0 * kPi * (j + 0.5) / m;
        std::vector<double> p2 = abs2_radial_poly(f.P(), theta);
        std::vector<double> q2 = abs2_radial_poly(f.Q(), theta);
        // crossing radii of |f| = sqrt3 and |f| = 1/sqrt3 along this ray
        std::vector<double> radii;
        for (int level = 0; level < 2; level++) {
            std::vector<Complex> g(p2.size());
            for (std::size_t k = 0; k < p2.size(); k++) {
                double qk = k < q2.size() ? q2[k] : 0.0;
                g[k] = level == 0 ? Complex(p2[k] - 3.0 * qk, 0.0)
                                  : Complex(3.0 * p2[k] - qk, 0.0);
            }
            RootResult rr = polynomial_roots(g);
            for (const Complex& root : rr.roots) {
                if (std::abs(root.imag()) < 1e-7 * (1.0 + std::abs(root.real())) &&
                    root.real() > 1e-300)
                    radii.push_back(root.real());
            }
        }
        std::sort(radii.begin(), radii.end());

        auto height = [](double r) { return (r * r - 1.0) / (r * r + 1.0); };
        auto classify = [&](double r) {
            HomogPoint v = f.eval(HomogPoint::from_plane(
                PlanePoint(Complex(r * std::cos(theta), r * std::sin(theta)))));
            double na = std::norm(v.a), nb = std::norm(v.b);
            if (na > 3.0 * nb) return 2;       // outer cap, |f| > sqrt3
            if (3.0 * na < nb) return 1;       // inner cap, |f| < 1/sqrt3
            return 0;                          // belt, boundary inclusive
        };

        double prev_s = -1.0, prev_r = 0.0;
        for (std::size_t k = 0; k <= radii.size(); k++) {
            double hi_r = k < radii.size() ? radii[k] : std::numeric_limits<double>::infinity();
            double hi_s = k < radii.size() ? height(hi_r) : 1.0;
            double mid;
            if (k == 0)
                mid = radii.empty() ? 1.0 : 0.5 * radii[0];
            else if (k == radii.size())
                mid = 2.0 * radii.back();
            else
                mid = std::sqrt(prev_r > 0 ? prev_r * hi_r : 0.5 * hi_r * hi_r);
            double span = 0.5 * (hi_s - prev_s) / m;
            if (span > 0) {
                switch (classify(mid)) {
                    case 0: out.belt += span; break;
                    case 1: out.cap_inner += span; break;
                    default: out.cap_outer += span; break;
                }
            }
            prev_s = hi_s;
            prev_r = hi_r;
        }
    }
    return out;
}

RationalMap blaschke_ft(double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("blaschke_ft: need t in (0,1)");
    // z(z-t)/(1-tz) as (z^2 - t z w : w^2 - t z w)
    return RationalMap({Complex(1, 0), Complex(-t, 0), Complex(0, 0)},
                       {Complex(0, 0), Complex(-t, 0), Complex(1, 0)});
}

std::vector<DeltaPoint> delta_curve(const std::vector<double>& r_grid) {
    std::vector<DeltaPoint> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) {
        if (!(r > 0.0)) throw DomainError("delta_curve: grid radii must be positive");
        double delta = delta_exact(r);
        out.push_back({r, delta, std::log(std::cosh(r)) - delta});
    }
    for (const DeltaPoint& p : out)
        if (p.r >= 0.1 && !(p.delta > 0.0))
            throw NumericError("delta_curve: positivity failed on the grid", p.delta);
    const DeltaPoint* at1 = nullptr;
    const DeltaPoint* largest = nullptr;
    for (const DeltaPoint& p : out) {
        if (std::abs(p.r - 1.0) < 1e-12) at1 = &p;
        if (!largest || p.r > largest->r) largest = &p;
    }
    if (at1 && largest && largest->r > 1.0 && !(largest->delta < at1->delta))
        throw NumericError("delta_curve: decay trend failed", largest->delta);
    return out;
}

DeltaPoint delta_via_extend(double r, const QuadratureRule& rule,
                            const SolverOptions& opts) {
    if (!(r > 0.0)) throw DomainError("delta_via_extend: r must be positive");
    RationalMap f = RationalMap::power(2);
    ExtensionResult e = extend(f, from_cylindrical(r, 0.0, 0.0), rule, opts);
    CylindricalPoint c = to_cylindrical(e.point());
    double radial = c.r;
    return {r, std::log(std::cosh(r)) - radial, radial};
}

ExtensionResult kappa(double t, const QuadratureRule& rule, const SolverOptions& opts) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("kappa: need t in (0,1)");
    return extend(blaschke_ft(t), BallPoint::origin(), rule, opts);
}

LemmaA2Check lemma_a2_check(double t, double r) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("lemma_a2_check: need t in (0,1)");
    if (!(r > 0.0) || std::abs(r - 1.0) <= 1e-3)
        throw DomainError("lemma_a2_check: need r > 0 with |r-1| > 1e-3");

    LemmaA2Check out;
    out.g_at_r = r * (1.0 - t * r) * (1.0 - t * r) + r * r * r * (r - t) * (r - t);

    // trapezoidal contour integral; the integrand is smooth and periodic
    const int n = 4096;
    Complex acc(0.0, 0.0);
    for (int i = 0; i < n; i++) {
        double th = 2.0 * kPi * (i + 0.5) / n;
        Complex z = r * Complex(std::cos(th), std::sin(th));
        Complex den = 1.0 - t * z;
        Complex x;
        if (std::abs(den) < 1e-300) {
            x = Complex(0.0, 0.0);
        } else {
            Complex fv = z * (z - t) / den;
            x = 2.0 * fv / (1.0 + std::norm(fv));
        }
        acc += x;
    }
    double factor = 4.0 * r / ((1.0 + r * r) * (1.0 + r * r));
    out.j_numeric = (acc * (2.0 * kPi / n)).real() * factor;

    // residue evaluation: G(z) = (1-tz)(z-tr^2) + r^2 (z-t)(r^2-tz)
    double A2 = -t * (1.0 + r * r);
    double A1 = 1.0 + 2.0 * t * t * r * r + r * r * r * r;
    double A0 = -t * r * r * (1.0 + r * r);
    double disc = A1 * A1 - 4.0 * A2 * A0;
    if (disc <= 0.0) throw InternalConsistencyError("lemma_a2_check: complex roots of G");
    double q = -0.5 * (A1 + std::sqrt(disc)); // A1 > 0
    double ra = q / A2, rb = A0 / q;
    out.x1 = std::min(ra, rb);
    out.x2 = std::max(ra, rb);
    if (!(out.x1 < r && r < out.x2))
        throw InternalConsistencyError("lemma_a2_check: root ordering x1 < r < x2 failed");
    double F = (out.x1 - t) * (out.x1 - t * r * r);
    double res = F / (-t * (1.0 + r * r) * (out.x1 - out.x2));
    out.j_residue = 16.0 * r * kPi / ((1.0 + r * r) * (1.0 + r * r)) * res;
    return out;
}

} // namespace barytree
