#pragma once

#include <cstddef>
#include <vector>

#include "barytree/sphere.hpp"

namespace barytree {

// Weighted node set approximating the round probability measure on S^2.
//
// The rule is a product of Gauss-Legendre in the height coordinate and a
// uniform grid in azimuth, laid out in exact antipodal pairs so that the
// first moment vanishes identically, not just to quadrature accuracy.
class QuadratureRule {
  public:
    struct Node {
        SpherePoint point;
        double weight;
    };

    QuadratureRule(std::vector<Node> nodes, int order);

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    int order() const { return order_; }
    double max_weight() const { return max_weight_; }

    // integral of a scalar function given per-node values
    template <typename F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (const Node& n : nodes_) s += n.weight * f(n.point);
        return s;
    }

    template <typename F>
    Vec3 integrate_vec(F&& f) const {
        Vec3 s;
        for (const Node& n : nodes_) s += f(n.point) * n.weight;
        return s;
    }

  private:
    std::vector<Node> nodes_;
    int order_;
    double max_weight_;
};

// Product rule with `order` Gauss-Legendre heights x 2*`order` azimuths,
// exact for spherical harmonics of degree <= 2*order - 1. order >= 3.
QuadratureRule make_quadrature(int order);

// Gauss-Legendre nodes/weights on [-1, 1]; exposed for the radial integrators.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace barytree
