#include "barytree/planar_balance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "barytree/errors.hpp"
#include "barytree/roots.hpp"

namespace barytree {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// ascending-coefficient convolution
std::vector<Complex> conv(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> r(a.size() + b.size() - 1, Complex(0, 0));
    for (std::size_t i = 0; i < a.size(); i++)
        for (std::size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<Complex> derivative_poly(const std::vector<Complex>& a) {
    if (a.size() <= 1) return {Complex(0, 0)};
    std::vector<Complex> d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); i++) d[i - 1] = a[i] * double(i);
    return d;
}

struct RealPair {
    std::vector<Complex> A, B; // ascending, real entries
    int n;                     // common padded degree
};

RealPair dehomogenize_real(const RationalMap& f) {
    const int d = f.degree();
    RealPair rp;
    rp.n = d;
    rp.A.assign(d + 1, Complex(0, 0));
    rp.B.assign(d + 1, Complex(0, 0));
    for (int j = 0; j <= d; j++) {
        Complex a = f.P()[d - j], b = f.Q()[d - j];
        if (std::abs(a.imag()) > 1e-12 || std::abs(b.imag()) > 1e-12)
            throw PreconditionError("planar balance: map must have real coefficients");
        rp.A[j] = Complex(a.real(), 0.0);
        rp.B[j] = Complex(b.real(), 0.0);
    }
    return rp;
}

// X = 2 f / (1 + |f|^2) evaluated pole-free as 2 a conj(b) / (|a|^2 + |b|^2)
Complex x_component(const std::vector<Complex>& A, const std::vector<Complex>& B,
                    Complex z) {
    Complex a = polyval(A, z), b = polyval(B, z);
    double den = std::norm(a) + std::norm(b);
    if (den == 0.0) return Complex(0, 0);
    return 2.0 * a * std::conj(b) / den;
}

// trapezoidal circle average, doubled until stable; spectrally accurate
double circle_integral_trapezoid(const std::vector<Complex>& A,
                                 const std::vector<Complex>& B, double r) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int m = 64; m <= (1 << 21); m *= 2) {
        Complex acc(0, 0);
        for (int i = 0; i < m; i++) {
            double th = 2.0 * kPi * (i + 0.5) / m;
            acc += x_component(A, B, r * Complex(std::cos(th), std::sin(th)));
        }
        double val = acc.real() * (2.0 * kPi / m);
        if (!std::isnan(prev) && std::abs(val - prev) < 1e-14 * (1.0 + std::abs(val)))
            return val;
        prev = val;
    }
    return prev;
}

// Contour integral of X over |z| = r via residues of the rational reduction;
// falls back to the trapezoid when denominator roots cluster.
double circle_integral(const RealPair& rp, double r) {
    const int n = rp.n;
    std::vector<Complex> Atil(n + 1), Btil(n + 1);
    for (int j = 0; j <= n; j++) {
        double pw = std::pow(r, 2.0 * (n - j));
        Atil[j] = rp.A[n - j] * pw;
        Btil[j] = rp.B[n - j] * pw;
    }
    std::vector<Complex> num = conv(rp.A, Btil);
    std::vector<Complex> den_in = conv(rp.B, Btil);
    {
        std::vector<Complex> aa = conv(rp.A, Atil);
        for (std::size_t i = 0; i < den_in.size(); i++) den_in[i] += aa[i];
    }
    std::vector<Complex> den(den_in.size() + 1, Complex(0, 0));
    for (std::size_t i = 0; i < den_in.size(); i++) den[i + 1] = den_in[i];

    while (num.size() > 1 && den.size() > 1 && num[0] == Complex(0, 0) &&
           den[0] == Complex(0, 0)) {
        num.erase(num.begin());
        den.erase(den.begin());
    }

    RootResult roots;
    try {
        roots = polynomial_roots(den);
    } catch (const NumericError&) {
        return circle_integral_trapezoid(rp.A, rp.B, r);
    }
    // reject clustered or near-contour poles; those radii go to the
    // trapezoid (they cannot occur on the contour itself, where the
    // denominator equals |A|^2 + |B|^2 > 0)
    for (std::size_t i = 0; i < roots.roots.size(); i++) {
        double pi_ = std::abs(roots.roots[i]);
        if (std::abs(pi_ - r) < 1e-9 * (1.0 + r))
            return circle_integral_trapezoid(rp.A, rp.B, r);
        for (std::size_t j = i + 1; j < roots.roots.size(); j++) {
            if (std::abs(roots.roots[i] - roots.roots[j]) <
                1e-8 * (1.0 + std::abs(roots.roots[i])) &&
                pi_ < r)
                return circle_integral_trapezoid(rp.A, rp.B, r);
        }
    }
    std::vector<Complex> dden = derivative_poly(den);
    Complex sum(0, 0);
    for (const Complex& p : roots.roots) {
        if (std::abs(p) >= r) continue;
        Complex dv = polyval(dden, p);
        if (std::abs(dv) == 0.0) return circle_integral_trapezoid(rp.A, rp.B, r);
        sum += polyval(num, p) / dv;
    }
    // contour dz/(i z) times 2: residue theorem gives 2 pi * sum
    return (2.0 * kPi * sum).real();
}

// 15-point Kronrod / 7-point Gauss pair (QUADPACK constants)
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk15(const std::function<double(double)>& f, double a, double b, double& value,
          double& error) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fk = 0.0, fg = 0.0;
    for (int i = 0; i < 8; i++) {
        if (i == 7) {
            double v = f(c);
            fk += kWgk[7] * v;
            fg += kWg[3] * v;
            continue;
        }
        double v1 = f(c - h * kXgk[i]), v2 = f(c + h * kXgk[i]);
        fk += kWgk[i] * (v1 + v2);
        if (i % 2 == 1) fg += kWg[i / 2] * (v1 + v2);
    }
    value = fk * h;
    error = std::abs((fk - fg) * h);
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double tol) {
    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> stack;
    Panel p0{a, b, 0, 0};
    gk15(f, a, b, p0.value, p0.error);
    stack.push_back(p0);
    double total = p0.value, toterr = p0.error;
    int evals = 1;
    while (toterr > tol && evals < 20000) {
        // split the worst panel
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); i++)
            if (stack[i].error > stack[worst].error) worst = i;
        Panel w = stack[worst];
        stack.erase(stack.begin() + worst);
        double mid = 0.5 * (w.a + w.b);
        Panel l{w.a, mid, 0, 0}, r{mid, w.b, 0, 0};
        gk15(f, l.a, l.b, l.value, l.error);
        gk15(f, r.a, r.b, r.value, r.error);
        total += l.value + r.value - w.value;
        toterr += l.error + r.error - w.error;
        stack.push_back(l);
        stack.push_back(r);
        evals += 2;
        if (w.b - w.a < 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) break;
    }
    double sum = 0.0;
    for (const Panel& p : stack) sum += p.value;
    return sum;
}

} // namespace

double axis_balance_x(const RationalMap& f_real) {
    RealPair rp = dehomogenize_real(f_real);
    // Phi = (1/4pi) Int_0^inf J(r) dr, through the height substitution
    // s = (r^2-1)/(r^2+1) with dr = ds / (r (1-s)^2).
    auto integrand = [&](double s) -> double {
        if (s <= -1.0 || s >= 1.0) return 0.0;
        double r = std::sqrt((1.0 + s) / (1.0 - s));
        if (!(r > 0.0) || !std::isfinite(r)) return 0.0;
        double factor = 4.0 * r / ((1.0 + r * r) * (1.0 + r * r));
        double J = factor * circle_integral(rp, r);
        double drds = 1.0 / (r * (1.0 - s) * (1.0 - s));
        return J * drds;
    };
    double val = adaptive_integral(integrand, -1.0, 1.0, 1e-13);
    return val / (4.0 * kPi);
}

Isometry axis_translation(double u) {
    double c = std::cosh(0.5 * u), s = std::sinh(0.5 * u);
    return Isometry(Complex(c, 0), Complex(s, 0), Complex(s, 0), Complex(c, 0));
}

double solve_axis_barycenter(const RationalMap& f_real, double lo, double hi) {
    auto phi = [&](double rho) {
        RationalMap g = compose(RationalMap::from_mobius(axis_translation(-rho)), f_real,
                                std::max(64, f_real.degree()));
        return axis_balance_x(g);
    };
    double flo = phi(lo), fhi = phi(hi);
    int expand = 0;
    while (flo * fhi > 0.0 && expand < 12) {
        double w = hi - lo;
        lo -= w;
        hi += w;
        flo = phi(lo);
        fhi = phi(hi);
        expand++;
    }
    if (flo * fhi > 0.0)
        throw NumericError("solve_axis_barycenter: could not bracket the balance root");
    // Brent
    double a = lo, b = hi, fa = flo, fb = fhi;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < 200; it++) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2e-16 * std::abs(b) + 5e-15;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = phi(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

double kappa_exact(double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("kappa_exact: need t in (0,1)");
    // f_t = z(z-t)/(1-tz); the barycenter sits on the negative side of the
    // (-1,+1) axis at signed position -kappa(t)
    RationalMap ft({Complex(1, 0), Complex(-t, 0), Complex(0, 0)},
                   {Complex(0, 0), Complex(-t, 0), Complex(1, 0)});
    double rho = solve_axis_barycenter(ft, -2.0, 0.5);
    return -rho;
}

double delta_exact(double r) {
    if (r == 0.0) return 0.0;
    if (!(r > 0.0)) throw DomainError("delta_exact: need r >= 0");
    RationalMap g = compose(RationalMap::power(2),
                            RationalMap::from_mobius(axis_translation(r)));
    double target = std::log(std::cosh(r));
    double rho = solve_axis_barycenter(g, -0.5, target + 0.5);
    return target - rho;
}

} // namespace barytree
