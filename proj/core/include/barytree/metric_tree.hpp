#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "barytree/errors.hpp"

namespace barytree {

// Finite metric tree: vertices with string ids, positive edge lengths, and
// leaves optionally marked as ends (the visible stub of an infinite ray that
// continues isometrically beyond the leaf).
class FiniteTree {
  public:
    struct Edge {
        int u, v;
        double length;
    };

    int add_vertex(const std::string& label);
    void add_edge(int u, int v, double length);
    void add_edge(const std::string& u, const std::string& v, double length);
    void mark_end(const std::string& leaf_label);

    int vertex(const std::string& label) const; // throws on unknown id
    const std::string& label(int v) const { return labels_[v]; }
    int vertex_count() const { return static_cast<int>(labels_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& marked_ends() const { return marked_ends_; }
    bool is_marked_end(int v) const;
    int degree(int v) const;
    const std::vector<std::pair<int, int>>& neighbors(int v) const; // (vertex, edge)

    // connected, acyclic, positive lengths, marked ends have degree 1
    void validate() const;

    double vertex_dist(int u, int v) const;
    std::vector<int> vertex_path(int u, int v) const;
    double total_edge_length() const;

  private:
    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<int> marked_ends_;
};

// A point of the tree: a vertex, an interior position on an edge at
// `offset` from the edge's u endpoint, or a position on the infinite ray a
// marked end stands for, `ray_tau` beyond its leaf.
struct TreePoint {
    int vertex = -1;
    int edge = -1;
    double offset = 0.0;
    int ray_leaf = -1;
    double ray_tau = 0.0;

    static TreePoint at_vertex(int v) { return {v, -1, 0.0, -1, 0.0}; }
    static TreePoint on_edge(int e, double offset) { return {-1, e, offset, -1, 0.0}; }
    static TreePoint on_ray(int leaf, double tau) { return {-1, -1, 0.0, leaf, tau}; }
    bool is_vertex() const { return vertex >= 0; }
    bool is_ray() const { return ray_leaf >= 0; }
};

double tree_dist(const FiniteTree& t, const TreePoint& a, const TreePoint& b);

// TreePoint at distance s from a along the geodesic [a, b]
TreePoint point_along(const FiniteTree& t, const TreePoint& a, const TreePoint& b,
                      double s);

// position of y on the geodesic [a, b], if it lies there (within tol)
std::optional<double> position_on_path(const FiniteTree& t, const TreePoint& a,
                                       const TreePoint& b, const TreePoint& y,
                                       double tol = 1e-9);

// smallest connected subtree containing the target vertices
struct Subtree {
    std::vector<int> vertices;
    std::vector<int> edges;
    bool contains_vertex(int v) const;
    bool contains_edge(int e) const;
};

Subtree hull(const FiniteTree& t, const std::vector<int>& targets);

// FiniteTree copy of a hull, preserving labels, lengths, and end marks
FiniteTree hull_as_tree(const FiniteTree& t, const std::vector<int>& targets);

// nearest-point projection onto a subtree made of whole edges
TreePoint project(const FiniteTree& t, const TreePoint& p, const Subtree& s);

// Piecewise-linear tree self-cover: every source edge maps linearly onto the
// geodesic between its endpoint images, stretched by a positive integer
// slope; marked ends map to marked ends.
struct TreeMap {
    FiniteTree source;
    FiniteTree target;
    std::vector<TreePoint> vertex_image; // per source vertex, in target
    std::vector<int> edge_slope;         // per source edge
    std::map<int, int> end_image;        // source marked leaf -> target marked leaf
    int degree = 1;
    std::vector<int> witness_vertices;   // the finite subtree S, as a hull basis
};

// directional token: where a direction at a point maps in the target
struct Direction {
    int at_vertex = -1; // anchor vertex (or -1 for edge interior)
    int edge = -1;
    int orientation = 0; // +1 along u->v, -1 along v->u
    auto key() const { return std::tie(edge, orientation); }
};

// local degree: sum of directional slopes over the directions at x that
// share one image direction (checked independent of the choice)
int local_degree(const TreeMap& m, const TreePoint& x);

struct CriticalLocus {
    std::vector<int> vertices;    // branch-critical vertices
    std::vector<int> whole_edges; // every interior point critical (slope >= 2)
};

CriticalLocus critical_locus(const TreeMap& m);

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> witnesses;
    int declared_degree = 0;

    void fail(const std::string& w) {
        valid = false;
        witnesses.push_back(w);
    }
};

// Checks the branched-covering axioms on a dense sample of target points:
// edge maps linear with integer slope, local isometry off the witness
// subtree, and fiber degree sums equal to the declared degree.
ValidationReport validate_branched_cover(const TreeMap& m, int interior_samples = 7);

// Exact translation length of a marked end: the eventually-constant value of
// dist(x, base) - dist(F x, base) along the ray, or -inf when the eventual
// slope is >= 2.
double translation_length_end(const TreeMap& m, const std::string& end_label,
                              const TreePoint& basepoint);

double cycle_translation_length(const TreeMap& m,
                                const std::vector<std::string>& cycle_ends,
                                const TreePoint& basepoint);

struct TreeFit {
    FiniteTree tree;
    std::vector<int> label_vertex; // vertex of each input label
    double max_distortion = 0.0;
    bool ok = true;
    std::array<int, 4> worst_quadruple{-1, -1, -1, -1};
    double worst_defect = 0.0;
};

// Fits a tree metric to labeled points with pairwise distances: Gromov
// products from the first label place each point on the growing tree;
// negative lengths from four-point violations are clamped and reported as
// distortion.
TreeFit fit_tree(const std::vector<std::string>& labels,
                 const std::vector<std::vector<double>>& dist, double tol);

// JSON wire format for trees and tree maps
std::string tree_to_json(const FiniteTree& t);
FiniteTree tree_from_json(const std::string& json_text);
std::string tree_map_to_json(const TreeMap& m);
TreeMap tree_map_from_json(const std::string& json_text);

} // namespace barytree
