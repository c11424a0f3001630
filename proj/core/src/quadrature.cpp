#include "barytree/quadrature.hpp"

#include <cmath>

#include "barytree/errors.hpp"

namespace barytree {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    // Newton on P_n from the Chebyshev-like initial guess; nodes are filled
    // symmetrically so that x[i] == -x[n-1-i] bit for bit.
    int half = (n + 1) / 2;
    for (int i = 0; i < half; i++) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; iter++) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; k++) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = -x; // ascending order
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule::QuadratureRule(std::vector<Node> nodes, int order)
    : nodes_(std::move(nodes)), order_(order) {
    double wsum = 0.0;
    max_weight_ = 0.0;
    for (const Node& n : nodes_) {
        if (!(n.weight > 0.0)) throw DomainError("QuadratureRule: nonpositive weight");
        wsum += n.weight;
        max_weight_ = std::max(max_weight_, n.weight);
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw DomainError("QuadratureRule: weights must sum to 1");
    if (!(max_weight_ < 0.25))
        throw DomainError("QuadratureRule: single weight >= 1/4 breaks barycenter well-posedness");
}

QuadratureRule make_quadrature(int order) {
    if (order < 3) throw ConfigError("make_quadrature: order must be >= 3");
    const int n_polar = order;
    const int n_az = 2 * order; // even count so the azimuth grid is antipodally closed

    std::vector<double> hx, hw;
    gauss_legendre(n_polar, hx, hw);

    std::vector<QuadratureRule::Node> nodes;
    nodes.reserve(static_cast<std::size_t>(n_polar) * n_az);

    const double waz = 1.0 / n_az;
    // Build the antipodal half explicitly and mirror it, so each node's
    // antipode is its exact componentwise negation.
    std::vector<Vec3> half;
    half.reserve(nodes.capacity() / 2);
    std::vector<double> half_w;
    for (int i = 0; i < n_polar; i++) {
        double s = hx[i];
        double rho = std::sqrt(std::max(0.0, 1.0 - s * s));
        for (int j = 0; j < n_az / 2; j++) {
            double th = 2.0 * kPi * (j + 0.5) / n_az;
            half.push_back(Vec3{rho * std::cos(th), rho * std::sin(th), s});
            half_w.push_back(0.5 * hw[i] * waz);
        }
    }
    for (std::size_t k = 0; k < half.size(); k++)
        nodes.push_back({SpherePoint(half[k]), half_w[k]});
    for (std::size_t k = 0; k < half.size(); k++)
        nodes.push_back({SpherePoint(half[k]).antipode(), half_w[k]});

    return QuadratureRule(std::move(nodes), order);
}

} // namespace barytree
