#include "barytree/metric_tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include <json.hpp>

namespace barytree {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int FiniteTree::add_vertex(const std::string& label) {
    if (index_.count(label)) throw DomainError("FiniteTree: duplicate vertex id " + label);
    int id = static_cast<int>(labels_.size());
    labels_.push_back(label);
    index_[label] = id;
    adj_.emplace_back();
    return id;
}

void FiniteTree::add_edge(int u, int v, double length) {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count() || u == v)
        throw DomainError("FiniteTree: bad edge endpoints");
    if (!(length > 0.0)) throw DomainError("FiniteTree: edge lengths must be positive");
    int e = static_cast<int>(edges_.size());
    edges_.push_back({u, v, length});
    adj_[u].push_back({v, e});
    adj_[v].push_back({u, e});
}

void FiniteTree::add_edge(const std::string& u, const std::string& v, double length) {
    add_edge(vertex(u), vertex(v), length);
}

void FiniteTree::mark_end(const std::string& leaf_label) {
    marked_ends_.push_back(vertex(leaf_label));
}

int FiniteTree::vertex(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw DomainError("FiniteTree: unknown vertex id " + label);
    return it->second;
}

bool FiniteTree::is_marked_end(int v) const {
    return std::find(marked_ends_.begin(), marked_ends_.end(), v) != marked_ends_.end();
}

int FiniteTree::degree(int v) const { return static_cast<int>(adj_[v].size()); }

const std::vector<std::pair<int, int>>& FiniteTree::neighbors(int v) const {
    return adj_[v];
}

void FiniteTree::validate() const {
    int n = vertex_count();
    if (n == 0) throw DomainError("FiniteTree: empty tree");
    if (static_cast<int>(edges_.size()) != n - 1)
        throw DomainError("FiniteTree: edge count must be vertex count - 1");
    // connectivity (acyclicity follows with the edge count)
    std::vector<bool> seen(n, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [w, e] : adj_[v])
            if (!seen[w]) {
                seen[w] = true;
                reached++;
                queue.push_back(w);
            }
    }
    if (reached != n) throw DomainError("FiniteTree: not connected");
    for (int v : marked_ends_)
        if (degree(v) != 1)
            throw DomainError("FiniteTree: marked end " + labels_[v] + " is not a leaf");
}

double FiniteTree::vertex_dist(int u, int v) const {
    if (u == v) return 0.0;
    std::vector<double> d(vertex_count(), -1.0);
    std::deque<int> queue{u};
    d[u] = 0.0;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        if (x == v) return d[v];
        for (auto [w, e] : adj_[x])
            if (d[w] < 0) {
                d[w] = d[x] + edges_[e].length;
                queue.push_back(w);
            }
    }
    throw InternalConsistencyError("FiniteTree::vertex_dist: disconnected");
}

std::vector<int> FiniteTree::vertex_path(int u, int v) const {
    std::vector<int> parent(vertex_count(), -2);
    std::deque<int> queue{u};
    parent[u] = -1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        if (x == v) break;
        for (auto [w, e] : adj_[x])
            if (parent[w] == -2) {
                parent[w] = x;
                queue.push_back(w);
            }
    }
    if (parent[v] == -2) throw InternalConsistencyError("vertex_path: disconnected");
    std::vector<int> path;
    for (int x = v; x != -1; x = parent[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

double FiniteTree::total_edge_length() const {
    double s = 0.0;
    for (const Edge& e : edges_) s += e.length;
    return s;
}

namespace {

// split an arbitrary TreePoint into (vertex anchor candidates with offsets)
struct Anchors {
    int a, b;        // edge endpoints (a == b for a vertex or ray point)
    double da, db;   // distance from the point to each anchor
};

Anchors anchors_of(const FiniteTree& t, const TreePoint& p) {
    if (p.is_vertex()) return {p.vertex, p.vertex, 0.0, 0.0};
    if (p.is_ray()) return {p.ray_leaf, p.ray_leaf, p.ray_tau, p.ray_tau};
    const auto& e = t.edges()[p.edge];
    return {e.u, e.v, p.offset, e.length - p.offset};
}

} // namespace

double tree_dist(const FiniteTree& t, const TreePoint& a, const TreePoint& b) {
    if (a.is_ray() && b.is_ray() && a.ray_leaf == b.ray_leaf)
        return std::abs(a.ray_tau - b.ray_tau);
    if (!a.is_vertex() && !a.is_ray() && !b.is_vertex() && !b.is_ray() &&
        a.edge == b.edge)
        return std::abs(a.offset - b.offset);
    Anchors aa = anchors_of(t, a), bb = anchors_of(t, b);
    double best = kInf;
    best = std::min(best, aa.da + t.vertex_dist(aa.a, bb.a) + bb.da);
    best = std::min(best, aa.da + t.vertex_dist(aa.a, bb.b) + bb.db);
    best = std::min(best, aa.db + t.vertex_dist(aa.b, bb.a) + bb.da);
    best = std::min(best, aa.db + t.vertex_dist(aa.b, bb.b) + bb.db);
    return best;
}

TreePoint point_along(const FiniteTree& t, const TreePoint& a, const TreePoint& b,
                      double s) {
    double total = tree_dist(t, a, b);
    if (s <= 1e-12) return a;
    if (s >= total - 1e-12) return b;
    if (a.is_ray() && b.is_ray() && a.ray_leaf == b.ray_leaf)
        return TreePoint::on_ray(a.ray_leaf,
                                 a.ray_tau + (b.ray_tau > a.ray_tau ? s : -s));
    if (a.is_ray()) {
        // walk down the ray to its leaf, then continue inside
        if (s <= a.ray_tau) return TreePoint::on_ray(a.ray_leaf, a.ray_tau - s);
        return point_along(t, TreePoint::at_vertex(a.ray_leaf), b, s - a.ray_tau);
    }
    if (b.is_ray()) {
        double inside = tree_dist(t, a, TreePoint::at_vertex(b.ray_leaf));
        if (s >= inside) return TreePoint::on_ray(b.ray_leaf, s - inside);
        return point_along(t, a, TreePoint::at_vertex(b.ray_leaf), s);
    }
    if (!a.is_vertex() && !b.is_vertex() && a.edge == b.edge)
        return TreePoint::on_edge(a.edge, a.offset + (b.offset > a.offset ? s : -s));

    // choose entry vertex of a and exit vertex of b on the geodesic
    Anchors aa = anchors_of(t, a), bb = anchors_of(t, b);
    int va = aa.a, vb = bb.a;
    double lead = aa.da, tail = bb.da;
    double best = kInf;
    for (auto [cva, clead] : {std::pair{aa.a, aa.da}, std::pair{aa.b, aa.db}})
        for (auto [cvb, ctail] : {std::pair{bb.a, bb.da}, std::pair{bb.b, bb.db}}) {
            double d = clead + t.vertex_dist(cva, cvb) + ctail;
            if (d < best) {
                best = d;
                va = cva;
                vb = cvb;
                lead = clead;
                tail = ctail;
            }
        }
    if (s <= lead) {
        // still on a's edge, moving toward va
        if (a.is_vertex()) return a;
        const auto& e = t.edges()[a.edge];
        double off = (va == e.u) ? a.offset - s : a.offset + s;
        return TreePoint::on_edge(a.edge, off);
    }
    double rem = s - lead;
    std::vector<int> path = t.vertex_path(va, vb);
    for (std::size_t i = 0; i + 1 < path.size(); i++) {
        // find the edge between path[i], path[i+1]
        int eidx = -1;
        for (auto [w, e] : t.neighbors(path[i]))
            if (w == path[i + 1]) {
                eidx = e;
                break;
            }
        double len = t.edges()[eidx].length;
        if (rem <= len + 1e-12) {
            if (rem <= 1e-12) return TreePoint::at_vertex(path[i]);
            if (rem >= len - 1e-12) return TreePoint::at_vertex(path[i + 1]);
            double off = (t.edges()[eidx].u == path[i]) ? rem : len - rem;
            return TreePoint::on_edge(eidx, off);
        }
        rem -= len;
    }
    // inside b's edge
    if (b.is_vertex()) return b;
    const auto& e = t.edges()[b.edge];
    (void)tail;
    double off = (vb == e.u) ? rem : e.length - rem;
    return TreePoint::on_edge(b.edge, off);
}

std::optional<double> position_on_path(const FiniteTree& t, const TreePoint& a,
                                       const TreePoint& b, const TreePoint& y,
                                       double tol) {
    double total = tree_dist(t, a, b);
    double day = tree_dist(t, a, y), dyb = tree_dist(t, y, b);
    if (std::abs(day + dyb - total) <= tol * (1.0 + total)) return day;
    return std::nullopt;
}

bool Subtree::contains_vertex(int v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool Subtree::contains_edge(int e) const {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

Subtree hull(const FiniteTree& t, const std::vector<int>& targets) {
    if (targets.empty()) throw DomainError("hull: empty target set");
    std::set<int> keep_v;
    std::set<int> keep_e;
    for (std::size_t i = 0; i < targets.size(); i++) {
        keep_v.insert(targets[i]);
        if (i == 0) continue;
        std::vector<int> path = t.vertex_path(targets[0], targets[i]);
        for (std::size_t k = 0; k + 1 < path.size(); k++) {
            keep_v.insert(path[k]);
            keep_v.insert(path[k + 1]);
            for (auto [w, e] : t.neighbors(path[k]))
                if (w == path[k + 1]) keep_e.insert(e);
        }
    }
    Subtree s;
    s.vertices.assign(keep_v.begin(), keep_v.end());
    s.edges.assign(keep_e.begin(), keep_e.end());
    return s;
}

FiniteTree hull_as_tree(const FiniteTree& t, const std::vector<int>& targets) {
    Subtree s = hull(t, targets);
    FiniteTree out;
    std::map<int, int> remap;
    for (int v : s.vertices) remap[v] = out.add_vertex(t.label(v));
    for (int e : s.edges) {
        const auto& ed = t.edges()[e];
        out.add_edge(remap[ed.u], remap[ed.v], ed.length);
    }
    for (int v : t.marked_ends())
        if (remap.count(v) && out.degree(remap[v]) == 1) out.mark_end(t.label(v));
    return out;
}

TreePoint project(const FiniteTree& t, const TreePoint& p, const Subtree& s) {
    if (p.is_vertex() && s.contains_vertex(p.vertex)) return p;
    if (!p.is_vertex() && s.contains_edge(p.edge)) return p;
    int best = -1;
    double bestd = kInf;
    for (int v : s.vertices) {
        double d = tree_dist(t, p, TreePoint::at_vertex(v));
        if (d < bestd) {
            bestd = d;
            best = v;
        }
    }
    if (best < 0) throw DomainError("project: empty subtree");
    return TreePoint::at_vertex(best);
}

namespace {

// image direction of the half-edge (v -> along edge e) under the map,
// determined by exact distance bookkeeping rather than a small probe step
Direction image_direction(const TreeMap& m, int v, int e) {
    const auto& ed = m.source.edges()[e];
    int other = (ed.u == v) ? ed.v : ed.u;
    const TreePoint& iv = m.vertex_image[v];
    const TreePoint& io = m.vertex_image[other];
    double total = tree_dist(m.target, iv, io);
    if (total <= 1e-12)
        throw StructureError("tree map collapses an edge: images of " +
                             m.source.label(v) + " and " + m.source.label(other) +
                             " coincide");
    const double tol = 1e-9 * (1.0 + total);
    Direction d;
    if (iv.is_ray()) {
        d.edge = -2 - iv.ray_leaf; // unique token per end ray
        bool outward = io.is_ray() && io.ray_leaf == iv.ray_leaf && io.ray_tau > iv.ray_tau;
        d.orientation = outward ? 1 : -1;
        return d;
    }
    if (!iv.is_vertex()) {
        const auto& te = m.target.edges()[iv.edge];
        d.edge = iv.edge;
        // does the geodesic head toward te.v (offset increasing)?
        double via_v = (te.length - iv.offset) +
                       tree_dist(m.target, TreePoint::at_vertex(te.v), io);
        d.orientation = std::abs(via_v - total) <= tol ? 1 : -1;
        return d;
    }
    d.at_vertex = iv.vertex;
    for (auto [w, te] : m.target.neighbors(iv.vertex)) {
        double via = m.target.edges()[te].length +
                     tree_dist(m.target, TreePoint::at_vertex(w), io);
        if (std::abs(via - total) <= tol) {
            d.edge = te;
            d.orientation = (m.target.edges()[te].u == iv.vertex) ? 1 : -1;
            return d;
        }
    }
    // geodesic leaves through the end ray at this leaf
    if (io.is_ray() && io.ray_leaf == iv.vertex) {
        d.edge = -2 - iv.vertex;
        d.orientation = 1;
        return d;
    }
    throw InternalConsistencyError("image_direction: could not identify leaving edge");
}

} // namespace

int local_degree(const TreeMap& m, const TreePoint& x) {
    if (!x.is_vertex()) return m.edge_slope[x.edge];
    int v = x.vertex;
    std::map<std::pair<int, int>, int> sums;
    for (auto [w, e] : m.source.neighbors(v)) {
        Direction d = image_direction(m, v, e);
        sums[{d.edge, d.orientation}] += m.edge_slope[e];
    }
    if (sums.empty()) return 1;
    int deg = sums.begin()->second;
    for (const auto& [k, s] : sums)
        if (s != deg)
            throw StructureError("local_degree: directional sums disagree at vertex " +
                                 m.source.label(v));
    return deg;
}

CriticalLocus critical_locus(const TreeMap& m) {
    CriticalLocus out;
    for (int v = 0; v < m.source.vertex_count(); v++) {
        int d = local_degree(m, TreePoint::at_vertex(v));
        if (d >= 2) out.vertices.push_back(v);
    }
    for (std::size_t e = 0; e < m.source.edges().size(); e++)
        if (m.edge_slope[e] >= 2) out.whole_edges.push_back(static_cast<int>(e));
    return out;
}

namespace {

// all preimages of the target point y with their local degrees
std::vector<std::pair<TreePoint, int>> fiber(const TreeMap& m, const TreePoint& y,
                                             double tol = 1e-9) {
    std::vector<std::pair<TreePoint, int>> out;
    std::vector<bool> vertex_hit(m.source.vertex_count(), false);
    for (int v = 0; v < m.source.vertex_count(); v++) {
        if (tree_dist(m.target, m.vertex_image[v], y) <= tol) {
            vertex_hit[v] = true;
            out.push_back({TreePoint::at_vertex(v), local_degree(m, TreePoint::at_vertex(v))});
        }
    }
    for (std::size_t e = 0; e < m.source.edges().size(); e++) {
        const auto& ed = m.source.edges()[e];
        const TreePoint& iu = m.vertex_image[ed.u];
        const TreePoint& iv = m.vertex_image[ed.v];
        auto pos = position_on_path(m.target, iu, iv, y, tol);
        if (!pos) continue;
        double s = *pos / m.edge_slope[e];
        if (s <= tol || s >= ed.length - tol) continue; // endpoint, already counted
        out.push_back({TreePoint::on_edge(static_cast<int>(e), s), m.edge_slope[e]});
    }
    return out;
}

Subtree witness_subtree(const TreeMap& m) {
    std::vector<int> basis = m.witness_vertices;
    if (basis.empty()) {
        // infer a minimal witness: folding vertices and slope >= 2 edges
        for (int v = 0; v < m.source.vertex_count(); v++) {
            std::map<std::pair<int, int>, int> dirs;
            for (auto [w, e] : m.source.neighbors(v)) {
                Direction d = image_direction(m, v, e);
                dirs[{d.edge, d.orientation}]++;
            }
            for (const auto& [k, c] : dirs)
                if (c >= 2) {
                    basis.push_back(v);
                    break;
                }
        }
        for (std::size_t e = 0; e < m.source.edges().size(); e++)
            if (m.edge_slope[e] >= 2) {
                basis.push_back(m.source.edges()[e].u);
                basis.push_back(m.source.edges()[e].v);
            }
    }
    if (basis.empty()) return Subtree{};
    return hull(m.source, basis);
}

} // namespace

ValidationReport validate_branched_cover(const TreeMap& m, int interior_samples) {
    ValidationReport rep;
    rep.declared_degree = m.degree;
    try {
        m.source.validate();
        m.target.validate();
    } catch (const std::exception& e) {
        rep.fail(std::string("tree invariant: ") + e.what());
        return rep;
    }
    if (static_cast<int>(m.vertex_image.size()) != m.source.vertex_count()) {
        rep.fail("vertex image table size mismatch");
        return rep;
    }
    if (m.edge_slope.size() != m.source.edges().size()) {
        rep.fail("edge slope table size mismatch");
        return rep;
    }
    for (std::size_t e = 0; e < m.edge_slope.size(); e++)
        if (m.edge_slope[e] < 1)
            rep.fail("slope of edge " + std::to_string(e) + " is not a positive integer");

    // edge maps linear with the declared integer slope
    for (std::size_t e = 0; e < m.source.edges().size(); e++) {
        const auto& ed = m.source.edges()[e];
        double img_len = tree_dist(m.target, m.vertex_image[ed.u], m.vertex_image[ed.v]);
        double want = m.edge_slope[e] * ed.length;
        if (std::abs(img_len - want) > 1e-9 * (1.0 + want))
            rep.fail("edge " + m.source.label(ed.u) + "-" + m.source.label(ed.v) +
                     ": image length " + std::to_string(img_len) +
                     " != slope * length " + std::to_string(want));
    }
    if (!rep.valid) return rep;

    // directional degree consistency at vertices
    for (int v = 0; v < m.source.vertex_count(); v++) {
        try {
            local_degree(m, TreePoint::at_vertex(v));
        } catch (const std::exception& e) {
            rep.fail(e.what());
        }
    }
    if (!rep.valid) return rep;

    // local isometry off the witness subtree
    Subtree s = witness_subtree(m);
    for (std::size_t e = 0; e < m.source.edges().size(); e++) {
        if (m.edge_slope[e] >= 2 && !s.contains_edge(static_cast<int>(e)))
            rep.fail("edge " + std::to_string(e) +
                     " expands with slope >= 2 outside the witness subtree");
    }
    for (int v = 0; v < m.source.vertex_count(); v++) {
        if (s.contains_vertex(v)) continue;
        std::map<std::pair<int, int>, int> dirs;
        for (auto [w, e] : m.source.neighbors(v)) {
            Direction d = image_direction(m, v, e);
            dirs[{d.edge, d.orientation}]++;
        }
        for (const auto& [k, c] : dirs)
            if (c >= 2)
                rep.fail("vertex " + m.source.label(v) +
                         " folds directions outside the witness subtree");
    }

    // fiber degree sums over a dense sample of target points
    for (int v = 0; v < m.target.vertex_count(); v++) {
        auto fb = fiber(m, TreePoint::at_vertex(v));
        int sum = 0;
        for (const auto& [p, d] : fb) sum += d;
        if (sum != m.degree)
            rep.fail("fiber over target vertex " + m.target.label(v) + " sums to " +
                     std::to_string(sum) + ", expected " + std::to_string(m.degree));
    }
    for (std::size_t e = 0; e < m.target.edges().size(); e++) {
        const auto& ed = m.target.edges()[e];
        for (int k = 1; k <= interior_samples; k++) {
            double off = ed.length * k / (interior_samples + 1.0);
            auto fb = fiber(m, TreePoint::on_edge(static_cast<int>(e), off));
            int sum = 0;
            for (const auto& [p, d] : fb) sum += d;
            if (sum != m.degree) {
                rep.fail("fiber over interior of target edge " + m.target.label(ed.u) +
                         "-" + m.target.label(ed.v) + " at offset " +
                         std::to_string(off) + " sums to " + std::to_string(sum) +
                         ", expected " + std::to_string(m.degree));
                break;
            }
        }
    }

    // marked ends must map to marked ends consistently
    for (int v : m.source.marked_ends()) {
        auto it = m.end_image.find(v);
        if (it == m.end_image.end()) {
            rep.fail("marked end " + m.source.label(v) + " has no image end");
            continue;
        }
        if (!m.target.is_marked_end(it->second))
            rep.fail("image of end " + m.source.label(v) + " is not a marked end");
    }
    return rep;
}

namespace {

// F(point at s beyond the source leaf) as the tau-parameter beyond the image
// leaf, valid once slope*s clears the drawn image tree
double image_ray_tau(const TreeMap& m, int leaf, int image_leaf, double s, int slope) {
    const TreePoint& img = m.vertex_image[leaf];
    double inward; // distance from img to the image leaf, negative on its ray
    if (img.is_ray()) {
        if (img.ray_leaf != image_leaf)
            throw StructureError(
                "translation length: leaf image sits on a different end ray");
        inward = -img.ray_tau;
    } else {
        inward = tree_dist(m.target, img, TreePoint::at_vertex(image_leaf));
    }
    double tau = slope * s - inward;
    if (tau <= 0.0)
        throw StructureError("translation length: ray sample does not clear the image tree");
    return tau;
}

} // namespace

double translation_length_end(const TreeMap& m, const std::string& end_label,
                              const TreePoint& basepoint) {
    int leaf = m.source.vertex(end_label);
    if (!m.source.is_marked_end(leaf))
        throw StructureError("translation_length_end: " + end_label + " is not a marked end");
    auto it = m.end_image.find(leaf);
    if (it == m.end_image.end())
        throw StructureError("translation_length_end: end has no declared image");
    int image_leaf = it->second;
    if (!m.target.is_marked_end(image_leaf))
        throw StructureError("translation_length_end: image is not a marked end");
    if (m.source.degree(leaf) != 1)
        throw StructureError("translation_length_end: end vertex is not a leaf");
    int ray_edge = m.source.neighbors(leaf)[0].second;
    int inner = m.source.neighbors(leaf)[0].first;
    int slope = m.edge_slope[ray_edge];
    if (slope >= 2) return -kInf;

    double span = m.source.total_edge_length() + m.target.total_edge_length() + 1.0;
    // the arrival direction of the leaf-edge image must continue toward the
    // image end: img(leaf) has to lie on the geodesic from img(inner) to a
    // deep point of the image ray
    if (!position_on_path(m.target, m.vertex_image[inner],
                          TreePoint::on_ray(image_leaf, 4.0 * span),
                          m.vertex_image[leaf]))
        throw StructureError(
            "translation_length_end: leaf image does not continue toward the image end");

    auto value_at = [&](double s) {
        double tau = image_ray_tau(m, leaf, image_leaf, s, slope);
        double d1 = tree_dist(m.source, basepoint, TreePoint::on_ray(leaf, s));
        double d2 = tree_dist(m.target, basepoint, TreePoint::on_ray(image_leaf, tau));
        return d1 - d2;
    };
    double v1 = value_at(span), v2 = value_at(2.0 * span);
    if (std::abs(v1 - v2) > 1e-9 * (1.0 + std::abs(v1)))
        throw StructureError("translation_length_end: value did not stabilize along the ray");
    return v1;
}

double cycle_translation_length(const TreeMap& m,
                                const std::vector<std::string>& cycle_ends,
                                const TreePoint& basepoint) {
    if (cycle_ends.empty()) throw StructureError("cycle_translation_length: empty cycle");
    // verify the ends form one orbit under the end map
    int q = static_cast<int>(cycle_ends.size());
    for (int i = 0; i < q; i++) {
        int v = m.source.vertex(cycle_ends[i]);
        auto it = m.end_image.find(v);
        if (it == m.end_image.end())
            throw StructureError("cycle_translation_length: end without image");
        int want = m.source.vertex(cycle_ends[(i + 1) % q]);
        if (it->second != want)
            throw StructureError("cycle_translation_length: ends are not a cycle of the end map");
    }
    double sum = 0.0;
    for (const std::string& e : cycle_ends) {
        double v = translation_length_end(m, e, basepoint);
        if (v == -kInf) return -kInf;
        sum += v;
    }
    return sum;
}

TreeFit fit_tree(const std::vector<std::string>& labels,
                 const std::vector<std::vector<double>>& dist, double tol) {
    const int n = static_cast<int>(labels.size());
    if (n < 2) throw DomainError("fit_tree: need at least 2 points");
    for (const auto& row : dist)
        if (static_cast<int>(row.size()) != n)
            throw DomainError("fit_tree: distance matrix shape mismatch");

    TreeFit fit;
    fit.label_vertex.assign(n, -1);
    FiniteTree& t = fit.tree;
    int steiner = 0;
    auto steiner_label = [&]() { return "_s" + std::to_string(steiner++); };

    fit.label_vertex[0] = t.add_vertex(labels[0]);
    {
        int v1 = t.add_vertex(labels[1]);
        double d01 = dist[0][1];
        if (d01 > 1e-12)
            t.add_edge(fit.label_vertex[0], v1, d01);
        else {
            // coincident points share a vertex
            fit.label_vertex[1] = fit.label_vertex[0];
        }
        if (fit.label_vertex[1] < 0) fit.label_vertex[1] = v1;
    }

    for (int k = 2; k < n; k++) {
        // deepest shared ancestor from the base: alpha = max Gromov product
        double alpha = 0.0;
        int attach_to = 1;
        for (int x = 1; x < k; x++) {
            double g = 0.5 * (dist[0][x] + dist[0][k] - dist[x][k]);
            if (g > alpha + 1e-15) {
                alpha = g;
                attach_to = x;
            }
        }
        alpha = std::max(0.0, std::min({alpha, dist[0][k], dist[0][attach_to]}));
        double pendant = std::max(0.0, dist[0][k] - alpha);

        TreePoint base = TreePoint::at_vertex(fit.label_vertex[0]);
        TreePoint toward = TreePoint::at_vertex(fit.label_vertex[attach_to]);
        TreePoint attach = point_along(t, base, toward, alpha);
        int attach_vertex;
        if (attach.is_vertex()) {
            attach_vertex = attach.vertex;
        } else {
            // split the edge: replace (u,v) by (u,s) + (s,v)
            const auto& ed = t.edges()[attach.edge];
            double off = attach.offset;
            int u = ed.u, v = ed.v;
            double len = ed.length;
            int sv = t.add_vertex(steiner_label());
            // rebuild the tree without the split edge
            FiniteTree nt;
            for (int i = 0; i < t.vertex_count(); i++) nt.add_vertex(t.label(i));
            for (std::size_t e = 0; e < t.edges().size(); e++) {
                if (static_cast<int>(e) == attach.edge) continue;
                const auto& old = t.edges()[e];
                nt.add_edge(old.u, old.v, old.length);
            }
            nt.add_edge(u, sv, off);
            nt.add_edge(sv, v, len - off);
            t = std::move(nt);
            attach_vertex = sv;
        }
        if (pendant > 1e-12) {
            int nv = t.add_vertex(labels[k]);
            t.add_edge(attach_vertex, nv, pendant);
            fit.label_vertex[k] = nv;
        } else {
            fit.label_vertex[k] = attach_vertex;
        }
    }

    // distortion over all pairs
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) {
            double dt = t.vertex_dist(fit.label_vertex[i], fit.label_vertex[j]);
            fit.max_distortion = std::max(fit.max_distortion, std::abs(dt - dist[i][j]));
        }
    fit.ok = fit.max_distortion <= tol;
    if (!fit.ok) {
        // report the worst four-point violation of the input metric
        for (int a = 0; a < n; a++)
            for (int b = a + 1; b < n; b++)
                for (int c = b + 1; c < n; c++)
                    for (int d = c + 1; d < n; d++) {
                        double s1 = dist[a][b] + dist[c][d];
                        double s2 = dist[a][c] + dist[b][d];
                        double s3 = dist[a][d] + dist[b][c];
                        double hi = std::max({s1, s2, s3});
                        double mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
                        double defect = 0.5 * (hi - mid);
                        if (defect > fit.worst_defect) {
                            fit.worst_defect = defect;
                            fit.worst_quadruple = {a, b, c, d};
                        }
                    }
    }
    return fit;
}

using nlohmann::json;

std::string tree_to_json(const FiniteTree& t) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < t.vertex_count(); v++) j["vertices"].push_back(t.label(v));
    j["edges"] = json::array();
    for (const auto& e : t.edges())
        j["edges"].push_back({{"u", t.label(e.u)}, {"v", t.label(e.v)}, {"length", e.length}});
    j["marked_ends"] = json::array();
    for (int v : t.marked_ends()) j["marked_ends"].push_back(t.label(v));
    return j.dump(2);
}

static FiniteTree tree_from_json_obj(const json& j) {
    FiniteTree t;
    if (!j.contains("vertices") || !j.contains("edges"))
        throw ConfigError("tree json: missing vertices/edges");
    for (const auto& v : j["vertices"]) t.add_vertex(v.get<std::string>());
    for (const auto& e : j["edges"])
        t.add_edge(e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                   e.at("length").get<double>());
    if (j.contains("marked_ends"))
        for (const auto& v : j["marked_ends"]) t.mark_end(v.get<std::string>());
    t.validate();
    return t;
}

FiniteTree tree_from_json(const std::string& json_text) {
    return tree_from_json_obj(json::parse(json_text));
}

std::string tree_map_to_json(const TreeMap& m) {
    json j;
    j["degree"] = m.degree;
    j["source"] = json::parse(tree_to_json(m.source));
    j["target"] = json::parse(tree_to_json(m.target));
    json vi = json::object();
    for (int v = 0; v < m.source.vertex_count(); v++) {
        const TreePoint& p = m.vertex_image[v];
        if (p.is_vertex())
            vi[m.source.label(v)] = {{"vertex", m.target.label(p.vertex)}};
        else if (p.is_ray())
            vi[m.source.label(v)] = {{"ray", m.target.label(p.ray_leaf)},
                                     {"tau", p.ray_tau}};
        else {
            const auto& e = m.target.edges()[p.edge];
            vi[m.source.label(v)] = {{"edge", {m.target.label(e.u), m.target.label(e.v)}},
                                     {"offset", p.offset}};
        }
    }
    j["vertex_images"] = vi;
    json slopes = json::array();
    for (std::size_t e = 0; e < m.source.edges().size(); e++) {
        const auto& ed = m.source.edges()[e];
        slopes.push_back({{"u", m.source.label(ed.u)},
                          {"v", m.source.label(ed.v)},
                          {"slope", m.edge_slope[e]}});
    }
    j["edge_slopes"] = slopes;
    json ends = json::object();
    for (const auto& [s, t2] : m.end_image) ends[m.source.label(s)] = m.target.label(t2);
    j["end_images"] = ends;
    json wit = json::array();
    for (int v : m.witness_vertices) wit.push_back(m.source.label(v));
    j["witness"] = wit;
    return j.dump(2);
}

TreeMap tree_map_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    TreeMap m;
    m.source = tree_from_json_obj(j.at("source"));
    m.target = tree_from_json_obj(j.at("target"));
    m.degree = j.at("degree").get<int>();
    m.vertex_image.assign(m.source.vertex_count(), TreePoint{});
    for (const auto& [key, val] : j.at("vertex_images").items()) {
        int v = m.source.vertex(key);
        if (val.contains("vertex"))
            m.vertex_image[v] =
                TreePoint::at_vertex(m.target.vertex(val["vertex"].get<std::string>()));
        else if (val.contains("ray"))
            m.vertex_image[v] = TreePoint::on_ray(
                m.target.vertex(val["ray"].get<std::string>()), val.at("tau").get<double>());
        else {
            int u = m.target.vertex(val.at("edge")[0].get<std::string>());
            int w = m.target.vertex(val.at("edge")[1].get<std::string>());
            int eidx = -1;
            for (auto [nb, e] : m.target.neighbors(u))
                if (nb == w) eidx = e;
            if (eidx < 0) throw ConfigError("tree map json: no such target edge");
            double off = val.at("offset").get<double>();
            if (m.target.edges()[eidx].u != u) off = m.target.edges()[eidx].length - off;
            m.vertex_image[v] = TreePoint::on_edge(eidx, off);
        }
    }
    m.edge_slope.assign(m.source.edges().size(), 1);
    for (const auto& s : j.at("edge_slopes")) {
        int u = m.source.vertex(s.at("u").get<std::string>());
        int v = m.source.vertex(s.at("v").get<std::string>());
        int eidx = -1;
        for (auto [nb, e] : m.source.neighbors(u))
            if (nb == v) eidx = e;
        if (eidx < 0) throw ConfigError("tree map json: no such source edge");
        m.edge_slope[eidx] = s.at("slope").get<int>();
    }
    if (j.contains("end_images"))
        for (const auto& [key, val] : j["end_images"].items())
            m.end_image[m.source.vertex(key)] = m.target.vertex(val.get<std::string>());
    if (j.contains("witness"))
        for (const auto& v : j["witness"]) m.witness_vertices.push_back(m.source.vertex(v.get<std::string>()));
    return m;
}

} // namespace barytree
