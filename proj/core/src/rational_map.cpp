#include "barytree/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "barytree/errors.hpp"
#include "barytree/roots.hpp"

namespace barytree {

namespace {

double coeff_scale(const std::vector<Complex>& P, const std::vector<Complex>& Q) {
    double m = 0.0;
    for (const Complex& c : P) m = std::max(m, std::abs(c));
    for (const Complex& c : Q) m = std::max(m, std::abs(c));
    return m;
}

// product of two homogeneous forms given as z-first coefficient lists
std::vector<Complex> hmul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> r(a.size() + b.size() - 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); i++)
        for (std::size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    return r;
}

// evaluate the degree-n form sum c[k] z^{n-k} w^k at a normalized pair
Complex heval(const std::vector<Complex>& c, const HomogPoint& p) {
    const std::size_t n = c.size();
    if (std::abs(p.b) >= std::abs(p.a)) {
        // factor out b^{n-1}: Horner in u = a/b over c in stored order
        Complex u = p.a / p.b;
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; k++) acc = acc * u + c[k];
        Complex bp(1.0, 0.0);
        for (std::size_t k = 1; k < n; k++) bp *= p.b;
        return acc * bp;
    }
    Complex u = p.b / p.a;
    Complex acc(0.0, 0.0);
    for (std::size_t k = n; k-- > 0;) acc = acc * u + c[k];
    Complex ap(1.0, 0.0);
    for (std::size_t k = 1; k < n; k++) ap *= p.a;
    return acc * ap;
}

// log10 |det| of a complex matrix by in-place LU with partial pivoting
double log10_abs_det(std::vector<Complex>& m, int n) {
    double log10det = 0.0;
    for (int k = 0; k < n; k++) {
        int piv = k;
        double best = std::abs(m[k * n + k]);
        for (int i = k + 1; i < n; i++) {
            double v = std::abs(m[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return -std::numeric_limits<double>::infinity();
        if (piv != k)
            for (int j = 0; j < n; j++) std::swap(m[k * n + j], m[piv * n + j]);
        log10det += std::log10(best);
        Complex pivot = m[k * n + k];
        for (int i = k + 1; i < n; i++) {
            Complex factor = m[i * n + k] / pivot;
            for (int j = k; j < n; j++) m[i * n + j] -= factor * m[k * n + j];
        }
    }
    return log10det;
}

double resultant_log10_of(const std::vector<Complex>& P, const std::vector<Complex>& Q) {
    const int d = static_cast<int>(P.size()) - 1;
    const int n = 2 * d;
    std::vector<Complex> syl(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int r = 0; r < d; r++)
        for (int k = 0; k <= d; k++) syl[r * n + r + k] = P[k];
    for (int r = 0; r < d; r++)
        for (int k = 0; k <= d; k++) syl[(d + r) * n + r + k] = Q[k];
    return log10_abs_det(syl, n);
}

} // namespace

RationalMap::RationalMap(std::vector<Complex> P, std::vector<Complex> Q,
                         double resultant_guard) {
    if (P.size() != Q.size() || P.size() < 2)
        throw DomainError("RationalMap: P and Q need equal length >= 2");
    for (const Complex& c : P)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("RationalMap: non-finite coefficient");
    for (const Complex& c : Q)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("RationalMap: non-finite coefficient");
    // drop exact common leading zeros: the declared degree must be genuine
    while (P.size() > 2 && P.front() == Complex(0.0, 0.0) &&
           Q.front() == Complex(0.0, 0.0)) {
        P.erase(P.begin());
        Q.erase(Q.begin());
    }
    double m = coeff_scale(P, Q);
    if (m == 0.0) throw DomainError("RationalMap: zero map");
    for (Complex& c : P) c /= m;
    for (Complex& c : Q) c /= m;
    P_ = std::move(P);
    Q_ = std::move(Q);
    degree_ = static_cast<int>(P_.size()) - 1;

    double lr = resultant_log10_of(P_, Q_);
    if (lr == -std::numeric_limits<double>::infinity() || std::isnan(lr) || lr < -300.0)
        throw NearDegenerateMapError("RationalMap: resultant vanishes, P and Q share a root");
    if (resultant_guard > 0.0 && lr < std::log10(resultant_guard))
        throw NearDegenerateMapError("RationalMap: resultant below guard, map too close to degenerate");
}

RationalMap RationalMap::identity() {
    return RationalMap({Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)});
}

RationalMap RationalMap::power(int d) {
    if (d < 1) throw DomainError("RationalMap::power: degree must be >= 1");
    std::vector<Complex> P(d + 1, Complex(0, 0)), Q(d + 1, Complex(0, 0));
    P[0] = Complex(1, 0);
    Q[d] = Complex(1, 0);
    return RationalMap(std::move(P), std::move(Q));
}

RationalMap RationalMap::polynomial(const std::vector<Complex>& coeffs_z_first) {
    int d = static_cast<int>(coeffs_z_first.size()) - 1;
    if (d < 1) throw DomainError("RationalMap::polynomial: degree must be >= 1");
    std::vector<Complex> P = coeffs_z_first;
    std::vector<Complex> Q(d + 1, Complex(0, 0));
    Q[d] = Complex(1, 0);
    return RationalMap(std::move(P), std::move(Q));
}

RationalMap RationalMap::from_mobius(const Isometry& m) {
    return RationalMap({m.a(), m.b()}, {m.c(), m.d()});
}

HomogPoint RationalMap::eval(const HomogPoint& z) const {
    HomogPoint p = HomogPoint::normalized(z.a, z.b);
    Complex num = heval(P_, p);
    Complex den = heval(Q_, p);
    if (std::abs(num) < 1e-150 && std::abs(den) < 1e-150)
        throw NearDegenerateMapError("RationalMap::eval: both homogeneous forms vanish");
    return HomogPoint::normalized(num, den);
}

PlanePoint RationalMap::eval(const PlanePoint& z) const {
    return eval(HomogPoint::from_plane(z)).to_plane();
}

SpherePoint RationalMap::eval_sphere(const SpherePoint& zeta) const {
    return stereo_project(eval(stereo_unproject_homog(zeta)));
}

std::vector<Complex> RationalMap::wronskian() const {
    const int d = degree_;
    // dP/dz, dP/dw etc. as degree d-1 z-first lists
    std::vector<Complex> pz(d), pw(d), qz(d), qw(d);
    for (int k = 0; k < d; k++) {
        pz[k] = P_[k] * double(d - k);
        qz[k] = Q_[k] * double(d - k);
        pw[k] = P_[k + 1] * double(k + 1);
        qw[k] = Q_[k + 1] * double(k + 1);
    }
    std::vector<Complex> w = hmul(pz, qw);
    std::vector<Complex> w2 = hmul(pw, qz);
    for (std::size_t i = 0; i < w.size(); i++) w[i] -= w2[i];
    return w;
}

double RationalMap::spherical_derivative(const HomogPoint& zin) const {
    HomogPoint z = HomogPoint::normalized(zin.a, zin.b);
    std::vector<Complex> w = wronskian();
    Complex wv = heval(w, z);
    Complex pv = heval(P_, z);
    Complex qv = heval(Q_, z);
    double den = std::norm(pv) + std::norm(qv);
    if (den == 0.0) throw NearDegenerateMapError("spherical_derivative: map undefined here");
    return std::abs(wv) * (std::norm(z.a) + std::norm(z.b)) / (degree_ * den);
}

double RationalMap::spherical_derivative(const PlanePoint& z) const {
    return spherical_derivative(HomogPoint::from_plane(z));
}

Complex RationalMap::chart_derivative(Complex z) const {
    // f'(z) = W(z,1) / (d * Q(z,1)^2)
    std::vector<Complex> w = wronskian();
    HomogPoint h{z, Complex(1.0, 0.0)};
    // heval expects a normalized pair; build the plain dehomogenized values
    Complex wv = polyval(std::vector<Complex>(w.rbegin(), w.rend()), z);
    Complex qv = polyval(std::vector<Complex>(Q_.rbegin(), Q_.rend()), z);
    (void)h;
    if (qv == Complex(0.0, 0.0))
        throw DomainError("chart_derivative: pole, derivative not finite in this chart");
    return wv / (double(degree_) * qv * qv);
}

std::string RationalMap::describe() const {
    std::ostringstream os;
    os << "RationalMap(degree " << degree_ << ")";
    return os.str();
}

double resultant_log10(const RationalMap& f) {
    return resultant_log10_of(f.P(), f.Q());
}

double resultant_magnitude(const RationalMap& f) {
    return std::pow(10.0, resultant_log10(f));
}

std::vector<PlanePoint> critical_points(const RationalMap& f) {
    if (f.degree() < 2)
        throw DomainError("critical_points: degree must be >= 2");
    std::vector<Complex> w = f.wronskian();
    std::vector<PlanePoint> roots = homogeneous_roots(w);
    if (static_cast<int>(roots.size()) != 2 * f.degree() - 2)
        throw NumericError("critical_points: wrong multiplicity count");
    return roots;
}

RationalMap compose(const RationalMap& f, const RationalMap& g, int degree_guard) {
    const int df = f.degree(), dg = g.degree();
    if (df * dg > degree_guard)
        throw ResourceError("compose: composed degree exceeds guard");
    // P_f(P_g, Q_g), Q_f(P_g, Q_g) by Horner over forms
    const auto& Pg = g.P();
    const auto& Qg = g.Q();
    std::vector<Complex> accP{f.P()[0]};
    std::vector<Complex> accQ{f.Q()[0]};
    for (int k = 1; k <= df; k++) {
        accP = hmul(accP, Pg);
        accQ = hmul(accQ, Pg);
        std::vector<Complex> qpow{Complex(1.0, 0.0)};
        for (int j = 0; j < k; j++) qpow = hmul(qpow, Qg);
        // accP(z,w) += f.P()[k] * Qg^k * Pg^{df-k}: maintain by adding at
        // matched degree. accP currently has degree k*dg; the term
        // f.P()[k] qpow has degree k*dg as well.
        for (std::size_t i = 0; i < qpow.size(); i++) {
            accP[i] += f.P()[k] * qpow[i];
            accQ[i] += f.Q()[k] * qpow[i];
        }
    }
    return RationalMap(std::move(accP), std::move(accQ), 0.0);
}

RationalMap iterate_map(const RationalMap& f, int n, int degree_guard) {
    if (n < 1) throw DomainError("iterate_map: n must be >= 1");
    double dn = std::pow(double(f.degree()), double(n));
    if (dn > degree_guard) throw ResourceError("iterate_map: iterated degree exceeds guard");
    RationalMap acc = f;
    for (int i = 1; i < n; i++) acc = compose(f, acc, degree_guard);
    return acc;
}

namespace {

// spherical (chordal) closeness used for matching cycle candidates
double chordal(const PlanePoint& a, const PlanePoint& b) { return chordal_distance(a, b); }

} // namespace

std::vector<PeriodicCycle> find_cycles(const RationalMap& f, int q) {
    if (q < 1 || q > 4) throw DomainError("find_cycles: period must be in 1..4");
    double dq = std::pow(double(f.degree()), double(q));
    if (dq > 64.0) throw ResourceError("find_cycles: degree^q exceeds guard");

    RationalMap fq = (q == 1) ? f : iterate_map(f, q);
    // fixed-point form P(z,w) w - Q(z,w) z, degree deg(fq) + 1, z-first
    const auto& P = fq.P();
    const auto& Q = fq.Q();
    const int n = fq.degree() + 1;
    std::vector<Complex> phi(n + 1, Complex(0.0, 0.0));
    for (int k = 0; k <= fq.degree(); k++) {
        phi[k + 1] += P[k]; // P * w shifts toward w
        phi[k] -= Q[k];     // Q * z
    }
    std::vector<PlanePoint> candidates = homogeneous_roots(phi);

    // verify and group into orbits under f
    const double match_tol = 1e-8;
    std::vector<bool> used(candidates.size(), false);
    std::vector<PeriodicCycle> cycles;
    for (std::size_t i = 0; i < candidates.size(); i++) {
        if (used[i]) continue;
        // trace the orbit through the candidate set
        std::vector<std::size_t> orbit;
        std::size_t cur = i;
        bool ok = true;
        for (int step = 0; step < q; step++) {
            orbit.push_back(cur);
            PlanePoint img = f.eval(candidates[cur]);
            std::size_t best = candidates.size();
            double bestd = 1e9;
            for (std::size_t j = 0; j < candidates.size(); j++) {
                double d = chordal(img, candidates[j]);
                if (d < bestd) {
                    bestd = d;
                    best = j;
                }
            }
            if (best == candidates.size() || bestd > 1e-5) {
                ok = false;
                break;
            }
            cur = best;
            if (cur == i) break;
        }
        if (!ok) continue;
        if (cur != i) continue;              // not closed within q steps
        if (static_cast<int>(orbit.size()) != q) { // shorter primitive period
            for (std::size_t j : orbit) used[j] = true;
            continue;
        }
        // primitive filter: exclude orbits fixed by a proper divisor power
        bool primitive = true;
        for (int qp = 1; qp < q; qp++) {
            if (q % qp != 0) continue;
            RationalMap fp = (qp == 1) ? f : iterate_map(f, qp);
            if (chordal(fp.eval(candidates[i]), candidates[i]) < match_tol) {
                primitive = false;
                break;
            }
        }
        for (std::size_t j : orbit) used[j] = true;
        if (!primitive) continue;

        PeriodicCycle c;
        c.period = q;
        for (std::size_t j : orbit) c.points.push_back(candidates[j]);
        // verify the cycle invariant
        for (int k = 0; k < q; k++) {
            if (chordal(f.eval(c.points[k]), c.points[(k + 1) % q]) > match_tol * 10)
                throw NumericError("find_cycles: orbit fails the cycle invariant");
        }
        for (int a = 0; a < q; a++)
            for (int b = a + 1; b < q; b++)
                if (chordal(c.points[a], c.points[b]) < 1e-6)
                    c.parabolic_collision_warning = true;

        // multiplier through a chart keeping the cycle finite
        static const Complex probes[] = {{2.0, 0.7}, {-1.3, 1.9}, {0.4, -2.2},
                                         {3.1, 0.1}, {-2.4, -1.7}};
        Complex center = probes[0];
        double best_sep = -1.0;
        for (const Complex& pr : probes) {
            double sep = 1e18;
            for (const auto& pt : c.points)
                sep = std::min(sep, chordal(PlanePoint(pr), pt));
            if (sep > best_sep) {
                best_sep = sep;
                center = pr;
            }
        }
        // h(z) = 1/(z - center) sends `center` to infinity
        Isometry h(Complex(0, 0), Complex(1, 0), Complex(1, 0), -center);
        RationalMap g = compose(compose(RationalMap::from_mobius(h), f, 256),
                                RationalMap::from_mobius(h.inverse()), 256);
        Complex mult(1.0, 0.0);
        for (const auto& pt : c.points) {
            PlanePoint moved = apply_boundary(h, pt);
            if (moved.is_infinity())
                throw InternalConsistencyError("find_cycles: chart failed to keep cycle finite");
            mult *= g.chart_derivative(moved.value());
        }
        c.multiplier = mult;
        c.superattracting = (std::abs(mult) == 0.0);
        cycles.push_back(std::move(c));
    }
    return cycles;
}

double cycle_length(const RationalMap& f, const PeriodicCycle& c) {
    const int q = c.period;
    for (int k = 0; k < q; k++) {
        if (chordal(f.eval(c.points[k]), c.points[(k + 1) % q]) > 1e-7)
            throw DomainError("cycle_length: not a cycle of this map");
    }
    double sum = 0.0;
    for (const auto& pt : c.points) {
        double sd = f.spherical_derivative(pt);
        if (sd == 0.0) return -std::numeric_limits<double>::infinity();
        sum += std::log(sd);
    }
    return sum;
}

} // namespace barytree
