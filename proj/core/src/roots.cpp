#include "barytree/roots.hpp"

#include <algorithm>
#include <cmath>

#include "barytree/errors.hpp"

namespace barytree {

Complex polyval(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

namespace {

Complex polyval_deriv(const std::vector<Complex>& c, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + c[i] * double(i);
    return acc;
}

// scale-aware residual: |p(z)| / sum |c_k| |z|^k
double relative_residual(const std::vector<Complex>& c, Complex z) {
    double zm = std::abs(z), pw = 1.0, scale = 0.0;
    for (const Complex& ck : c) {
        scale += std::abs(ck) * pw;
        pw *= zm;
    }
    if (scale == 0.0) return 0.0;
    return std::abs(polyval(c, z)) / scale;
}

} // namespace

RootResult polynomial_roots(const std::vector<Complex>& coeffs_in) {
    std::vector<Complex> c = coeffs_in;
    // trim trailing (leading-degree) zeros
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    RootResult out;
    if (c.size() <= 1) return out; // constant: no roots
    const int n = static_cast<int>(c.size()) - 1;

    // roots at zero split off exactly
    int zero_roots = 0;
    while (zero_roots < n && std::abs(c[zero_roots]) == 0.0) zero_roots++;
    if (zero_roots > 0) {
        std::vector<Complex> reduced(c.begin() + zero_roots, c.end());
        RootResult inner = polynomial_roots(reduced);
        out = inner;
        for (int i = 0; i < zero_roots; i++) out.roots.push_back(Complex(0.0, 0.0));
        return out;
    }

    if (n == 1) {
        out.roots.push_back(-c[0] / c[1]);
        out.max_residual = relative_residual(c, out.roots[0]);
        return out;
    }

    // initial guesses on a perturbed circle of the geometric-mean radius
    double r0 = std::pow(std::abs(c[0] / c[n]), 1.0 / n);
    if (!std::isfinite(r0) || r0 == 0.0) r0 = 1.0;
    std::vector<Complex> z(n);
    for (int i = 0; i < n; i++) {
        double a = 6.283185307179586 * i / n + 0.3931 + 0.07 * i / double(n);
        z[i] = r0 * Complex(std::cos(a), std::sin(a));
    }

    const int max_iter = 400;
    int it = 0;
    for (; it < max_iter; it++) {
        double max_step = 0.0;
        for (int i = 0; i < n; i++) {
            Complex p = polyval(c, z[i]);
            Complex dp = polyval_deriv(c, z[i]);
            if (std::abs(dp) == 0.0) {
                z[i] += Complex(1e-8 * (1.0 + std::abs(z[i])), 1.3e-8);
                max_step = 1.0;
                continue;
            }
            Complex newton = p / dp;
            Complex sum(0.0, 0.0);
            for (int j = 0; j < n; j++) {
                if (j == i) continue;
                Complex d = z[i] - z[j];
                if (std::abs(d) < 1e-300) d = Complex(1e-300, 0.0);
                sum += 1.0 / d;
            }
            Complex denom = 1.0 - newton * sum;
            Complex step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-14) break;
    }

    // Newton polish
    for (int i = 0; i < n; i++) {
        for (int k = 0; k < 3; k++) {
            Complex p = polyval(c, z[i]);
            Complex dp = polyval_deriv(c, z[i]);
            if (std::abs(dp) == 0.0) break;
            Complex step = p / dp;
            if (!std::isfinite(std::abs(step))) break;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(z[i]))) break; // multiple-root cluster
            z[i] -= step;
        }
    }

    double worst = 0.0;
    for (int i = 0; i < n; i++) worst = std::max(worst, relative_residual(c, z[i]));
    // Clusters from multiple roots legitimately stop at ~eps^(1/m); the
    // residual of the polished cluster stays tiny even then.
    if (worst > 1e-7)
        throw NumericError("polynomial_roots: iteration did not converge", worst);

    out.roots = std::move(z);
    out.max_residual = worst;
    out.iterations = it;
    return out;
}

std::vector<PlanePoint> homogeneous_roots(const std::vector<Complex>& coeffs_z_first) {
    // input: c[0] z^d + c[1] z^{d-1} w + ... + c[d] w^d
    std::vector<Complex> asc(coeffs_z_first.rbegin(), coeffs_z_first.rend());
    int d = static_cast<int>(asc.size()) - 1;
    int at_infinity = 0;
    while (at_infinity < d && std::abs(asc[d - at_infinity]) == 0.0) at_infinity++;
    std::vector<Complex> finite_part(asc.begin(), asc.end() - at_infinity);
    RootResult rr = polynomial_roots(finite_part);
    std::vector<PlanePoint> roots;
    roots.reserve(d);
    for (const Complex& r : rr.roots) roots.push_back(PlanePoint(r));
    for (int i = 0; i < at_infinity; i++) roots.push_back(PlanePoint::infinity());
    return roots;
}

} // namespace barytree
