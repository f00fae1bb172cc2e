#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diamgraph/geometry.hpp"
#include "diamgraph/graph.hpp"

namespace diamgraph {

// -------------------- pruning --------------------

inline std::pair<DiameterGraph, std::vector<int>> prune_low_degree(const DiameterGraph& g) {
    std::vector<char> alive(g.n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < g.n; ++i) {
            if (!alive[i]) continue;
            int deg = 0;
            for (int j = 0; j < g.n; ++j)
                if (alive[j] && j != i && g.adj(i, j)) ++deg;
            if (deg <= 1) {
                alive[i] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> kept;
    for (int i = 0; i < g.n; ++i)
        if (alive[i]) kept.push_back(i);

    DiameterGraph out;
    out.n = static_cast<int>(kept.size());
    out.words = (out.n + 63) / 64;
    out.rows.assign(static_cast<std::size_t>(out.n) * std::max(out.words, 1), 0);
    out.diam = g.diam;
    out.eps = g.eps;
    for (int a = 0; a < out.n; ++a)
        for (int b = a + 1; b < out.n; ++b)
            if (g.adj(kept[a], kept[b])) out.set_edge(a, b);
    if (g.source) {
        PointSet sub;
        sub.dim = g.source->dim;
        sub.sphere_radius = g.source->sphere_radius;
        for (int i : kept) sub.points.push_back(g.source->points[i]);
        out.source = std::move(sub);
    }
    return {std::move(out), std::move(kept)};
}

// -------------------- spherical polygons --------------------

namespace detail {

inline Vec slerp(const Vec& a, const Vec& b, double t) {
    double ang = angle_between(a, b);
    if (ang < 1e-12) return a;
    double s = std::sin(ang);
    Vec out = scaled(a, std::sin((1.0 - t) * ang) / s);
    axpy(std::sin(t * ang) / s, b, out);
    return normalized(out);
}

// Orthonormal basis of the orthogonal complement of a unit vector.
inline std::vector<Vec> complete_basis(const Vec& unit) {
    std::size_t d = unit.size();
    std::vector<Vec> basis;
    for (std::size_t axis = 0; axis < d && basis.size() + 1 < d; ++axis) {
        Vec v(d, 0.0);
        v[axis] = 1.0;
        axpy(-dot(v, unit), unit, v);
        for (const auto& b : basis) axpy(-dot(v, b), b, v);
        double len = norm(v);
        if (len > 1e-8) basis.push_back(scaled(v, 1.0 / len));
    }
    return basis;
}

// Cyclic order by angle around the normalized centroid. Valid for hull-vertex
// sets inside an open hemisphere, where the gnomonic image is convex.
inline std::vector<Vec> order_cyclic(std::vector<Vec> pts) {
    if (pts.size() <= 2) return pts;
    Vec c(pts[0].size(), 0.0);
    for (const auto& p : pts) axpy(1.0, p, c);
    c = normalized(c);
    std::size_t weakest = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (std::fabs(c[i]) < std::fabs(c[weakest])) weakest = i;
    Vec ref(c.size(), 0.0);
    ref[weakest] = 1.0;
    axpy(-dot(ref, c), c, ref);
    Vec e1 = normalized(ref);
    Vec e2 = cross3(c, e1);
    std::sort(pts.begin(), pts.end(), [&](const Vec& p, const Vec& q) {
        return std::atan2(dot(p, e2), dot(p, e1)) < std::atan2(dot(q, e2), dot(q, e1));
    });
    return pts;
}

}  // namespace detail

struct SphericalPolygon {
    double sphere_radius = 1.0;
    std::vector<Vec> vertices;  // ordered unit 3-vectors
    Vec hemisphere_pole;

    bool contains(const Vec& u) const {
        for (const auto& v : vertices)
            if (angle_between(u, v) < tol::angle_dedup) return true;
        return cone_membership(u, vertices).has_value();
    }

    std::vector<GreatArc> boundary_arcs() const {
        std::vector<GreatArc> arcs;
        if (vertices.size() == 2) {
            arcs.emplace_back(vertices[0], vertices[1], 1.0);
        } else if (vertices.size() >= 3) {
            for (std::size_t i = 0; i < vertices.size(); ++i)
                arcs.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()], 1.0);
        }
        return arcs;
    }

    SphericalPolygon negated() const {
        SphericalPolygon out;
        out.sphere_radius = sphere_radius;
        out.hemisphere_pole = scaled(hemisphere_pole, -1.0);
        for (const auto& v : vertices) out.vertices.push_back(scaled(v, -1.0));
        return out;
    }
};

inline SphericalPolygon make_spherical_polygon(const std::vector<Vec>& gens,
                                               double sphere_radius) {
    std::vector<int> hull = spherical_hull_vertices(gens);  // enforces the hemisphere
    std::vector<Vec> verts;
    for (int i : hull) verts.push_back(normalized(gens[i]));

    PointSet dirs;
    dirs.dim = static_cast<int>(gens[0].size());
    dirs.sphere_radius = 1.0;
    for (const auto& g : gens) dirs.points.push_back(normalized(g));

    SphericalPolygon poly;
    poly.sphere_radius = sphere_radius;
    poly.hemisphere_pole = min_enclosing_cap(dirs).pole;
    poly.vertices = detail::order_cyclic(std::move(verts));
    return poly;
}

// -------------------- diametral sphere --------------------

// The 2-sphere of radius 1 about v meets the host sphere in a circle-sphere
// centered on the v axis; neighbor hulls live there.
namespace detail {

struct NeighborSphere {
    Vec center;               // on the v axis
    double rho = 0.0;         // radius within the cutting hyperplane
    std::vector<Vec> basis;   // orthonormal basis of v-perp
};

inline NeighborSphere neighbor_sphere(const Vec& v, double r) {
    NeighborSphere s;
    s.center = scaled(v, 1.0 - 1.0 / (2.0 * r * r));
    double c2 = dot(s.center, s.center);
    s.rho = std::sqrt(std::max(r * r - c2, 0.0));
    s.basis = complete_basis(normalized(v));
    return s;
}

inline Vec to_local(const NeighborSphere& s, const Vec& x) {
    Vec rel = sub(x, s.center);
    Vec y;
    for (const auto& b : s.basis) y.push_back(dot(rel, b));
    return normalized(y);
}

inline Vec from_local(const NeighborSphere& s, const Vec& y) {
    Vec x = s.center;
    for (std::size_t i = 0; i < s.basis.size(); ++i) axpy(s.rho * y[i], s.basis[i], x);
    return x;
}

inline std::string fmt_point(const Vec& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += fmt_double(p[i]);
    }
    return out + ")";
}

}  // namespace detail

inline Vec diametral_sphere(const PointSet& ps, const DiameterGraph& g) {
    if (!ps.sphere_radius)
        throw PreconditionError("theorem preconditions violated: set is not on a sphere");
    double r = *ps.sphere_radius;
    if (!(r > (1.0 / std::sqrt(2.0)) * (1.0 + 1e-9)))
        throw PreconditionError("theorem preconditions violated: sphere radius must exceed 1/sqrt(2)");
    if (std::fabs(g.diam - 1.0) > 1e-9)
        throw PreconditionError("theorem preconditions violated: set diameter must be 1");

    PointSet pool;
    pool.dim = ps.dim;
    pool.sphere_radius = r;
    pool.points = ps.points;

    for (int v = 0; v < g.n; ++v) {
        if (g.degree(v) < 2) continue;
        detail::NeighborSphere s = detail::neighbor_sphere(ps.points[v], r);
        std::vector<Vec> local;
        for (int w = 0; w < g.n; ++w)
            if (g.adj(v, w)) local.push_back(detail::to_local(s, ps.points[w]));

        std::vector<int> hull;
        try {
            hull = spherical_hull_vertices(local);
        } catch (const PreconditionError&) {
            throw PreconditionError(
                "theorem preconditions violated: neighbor hull of vertex " +
                std::to_string(v) + " fits in no open hemisphere");
        }
        std::vector<Vec> verts;
        for (int i : hull) verts.push_back(local[i]);
        verts = detail::order_cyclic(std::move(verts));

        auto push_sample = [&](const Vec& y) { pool.points.push_back(detail::from_local(s, y)); };
        if (verts.size() == 1) {
            push_sample(verts[0]);
        } else {
            std::size_t nedges = verts.size() == 2 ? 1 : verts.size();
            std::size_t per = (100 + nedges - 1) / nedges;
            for (std::size_t e = 0; e < nedges; ++e) {
                const Vec& a = verts[e];
                const Vec& b = verts[(e + 1) % verts.size()];
                for (std::size_t i = 0; i < per; ++i)
                    push_sample(detail::slerp(a, b, (i + 0.5) / per));
            }
        }
    }

    SphericalCap cap;
    try {
        cap = min_enclosing_cap(pool);
    } catch (const DegenerateError&) {
        throw PreconditionError(
            "theorem preconditions violated: no open hemisphere contains the configuration");
    }
    for (const auto& p : pool.points)
        if (!(dot(p, cap.pole) > 0.0))
            throw PreconditionError(
                "theorem preconditions violated: hemisphere misses sample " +
                detail::fmt_point(p));
    return cap.pole;
}

// -------------------- projections --------------------

struct DiametralFrame {
    double radius = 1.0;
    Vec pole;                 // unit, ambient dimension
    std::vector<Vec> basis;   // orthonormal basis of pole-perp

    Vec to3(const Vec& x) const {
        Vec y;
        for (const auto& b : basis) y.push_back(dot(x, b));
        return normalized(y);
    }

    Vec to_ambient(const Vec& y) const {
        Vec x(pole.size(), 0.0);
        for (std::size_t i = 0; i < basis.size(); ++i) axpy(y[i], basis[i], x);
        return x;
    }
};

inline DiametralFrame make_frame(double radius, const Vec& pole) {
    DiametralFrame f;
    f.radius = radius;
    f.pole = normalized(pole);
    f.basis = detail::complete_basis(f.pole);
    return f;
}

struct ProjectionPair {
    int v = -1;
    std::vector<int> neighbors;
    std::vector<Vec> u;  // unit 3-vectors, frame coordinates, one per neighbor
    SphericalPolygon R, B;
};

inline ProjectionPair project_RB(const PointSet& ps, const DiameterGraph& g, int v,
                                 const DiametralFrame& f) {
    ProjectionPair out;
    out.v = v;
    for (int w = 0; w < g.n; ++w)
        if (g.adj(v, w)) out.neighbors.push_back(w);
    if (out.neighbors.size() < 2)
        throw PreconditionError("project_RB: vertex degree must be >= 2");

    const Vec& pv = ps.points[v];
    double hv = dot(pv, f.pole);
    if (std::fabs(hv) <= f.radius * 1e-12)
        throw DegenerateError("projection degenerate: vertex lies on the diametral sphere");

    for (int w : out.neighbors) {
        const Vec& pw = ps.points[w];
        double hw = dot(pw, f.pole);
        // Great circle through v,w meets the diametral plane along +-x0.
        Vec x0 = scaled(pv, hw);
        axpy(-hv, pw, x0);
        double len = norm(x0);
        if (len <= f.radius * 1e-12)
            throw DegenerateError("projection degenerate: edge great circle lies in the diametral plane");
        Vec cand = scaled(x0, 1.0 / len);
        Vec anti = scaled(cand, -1.0);
        Vec pick = angle_between(cand, pw) <= angle_between(anti, pw) ? cand : anti;
        out.u.push_back(f.to3(pick));
    }

    out.R = make_spherical_polygon(out.u, f.radius);
    out.B = out.R.negated();
    return out;
}

// -------------------- Lemma-style disjointness checks --------------------

struct PolygonViolation {
    enum Kind {
        red_red_intersect,
        red_blue_nonedge,
        red_blue_not_single,
        red_blue_missing,
        red_blue_not_vertex,
    };
    Kind kind;
    int v = -1, w = -1;
    Vec witness;  // unit 3-vector when available
};

struct SeparationReport {
    std::vector<PolygonViolation> violations;
    long long pairs_checked = 0;
    bool ok() const { return violations.empty(); }
};

namespace detail {

// All intersection points of two spherical polygons, deduped at 1e-9. A
// collinear overlap contributes both endpoints so it can never pass as a
// singleton.
inline std::vector<Vec> polygon_intersection_points(const SphericalPolygon& P,
                                                    const SphericalPolygon& Q) {
    std::vector<Vec> pts;
    auto push = [&](const Vec& x) {
        Vec u = normalized(x);
        for (const auto& p : pts)
            if (angle_between(p, u) < tol::angle_dedup) return;
        pts.push_back(u);
    };

    auto parcs = P.boundary_arcs();
    auto qarcs = Q.boundary_arcs();
    for (const auto& pa : parcs)
        for (const auto& qa : qarcs) {
            try {
                if (auto hit = arc_intersection(pa, qa)) push(*hit);
            } catch (const OverlapError&) {
                for (const Vec& e : {pa.a, pa.b})
                    if (qa.covers(e)) push(e);
                for (const Vec& e : {qa.a, qa.b})
                    if (pa.covers(e)) push(e);
            }
        }
    for (const auto& v : P.vertices)
        if (Q.contains(v)) push(v);
    for (const auto& v : Q.vertices)
        if (P.contains(v)) push(v);
    return pts;
}

inline bool is_vertex_of(const SphericalPolygon& P, const Vec& x) {
    for (const auto& v : P.vertices)
        if (angle_between(v, x) < tol::angle_dedup) return true;
    return false;
}

}  // namespace detail

inline SeparationReport check_separation(const DiameterGraph& g,
                                         const std::vector<ProjectionPair>& projs) {
    SeparationReport rep;
    int n = static_cast<int>(projs.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            if (a != b) {
                ++rep.pairs_checked;
                auto pts = detail::polygon_intersection_points(projs[a].R, projs[b].R);
                if (!pts.empty())
                    rep.violations.push_back(
                        {PolygonViolation::red_red_intersect, projs[a].v, projs[b].v, pts[0]});
            }
            ++rep.pairs_checked;
            auto pts = detail::polygon_intersection_points(projs[a].R, projs[b].B);
            bool edge = a != b && g.adj(projs[a].v, projs[b].v);
            if (!edge) {
                if (!pts.empty())
                    rep.violations.push_back(
                        {PolygonViolation::red_blue_nonedge, projs[a].v, projs[b].v, pts[0]});
            } else if (pts.empty()) {
                rep.violations.push_back(
                    {PolygonViolation::red_blue_missing, projs[a].v, projs[b].v, {}});
            } else if (pts.size() > 1) {
                rep.violations.push_back(
                    {PolygonViolation::red_blue_not_single, projs[a].v, projs[b].v, pts[1]});
            } else if (!detail::is_vertex_of(projs[a].R, pts[0]) ||
                       !detail::is_vertex_of(projs[b].B, pts[0])) {
                rep.violations.push_back(
                    {PolygonViolation::red_blue_not_vertex, projs[a].v, projs[b].v, pts[0]});
            }
        }
    }
    return rep;
}

// -------------------- the double cover --------------------

struct DoubleCover {
    int base_n = 0;
    std::vector<Vec> vertices;                    // c block then c-prime block, unit
    std::vector<std::pair<int, int>> edges;       // indices into vertices
    std::vector<std::pair<Vec, Vec>> arcs;        // drawn curve pieces, unit endpoints
};

inline DoubleCover build_double_cover(const DiameterGraph& g,
                                      const std::vector<ProjectionPair>& projs,
                                      const SeparationReport& sep) {
    if (!sep.ok())
        throw PreconditionError("double cover refused: separation violations present");

    DoubleCover dc;
    dc.base_n = static_cast<int>(projs.size());
    std::vector<Vec> c(dc.base_n);
    for (int i = 0; i < dc.base_n; ++i) {
        Vec sum(3, 0.0);
        for (const auto& v : projs[i].R.vertices) axpy(1.0, v, sum);
        c[i] = normalized(sum);
        dc.vertices.push_back(c[i]);
    }
    for (int i = 0; i < dc.base_n; ++i) dc.vertices.push_back(scaled(c[i], -1.0));

    std::vector<int> local_of(g.n, -1);
    for (int i = 0; i < dc.base_n; ++i) local_of[projs[i].v] = i;

    auto shared_point = [&](int i, int w) -> const Vec& {
        const auto& nb = projs[i].neighbors;
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (nb[k] == w) return projs[i].u[k];
        throw DomainError("double cover: edge missing from projection");
    };
    auto add_curve = [&](const Vec& from, const Vec& via, const Vec& to) {
        if (angle_between(from, via) >= tol::angle_dedup) dc.arcs.emplace_back(from, via);
        if (angle_between(via, to) >= tol::angle_dedup) dc.arcs.emplace_back(via, to);
    };

    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) {
            if (!g.adj(a, b)) continue;
            int ia = local_of[a], ib = local_of[b];
            const Vec& zab = shared_point(ia, b);  // vertex of R(a) and of B(b)
            const Vec& zba = shared_point(ib, a);
            dc.edges.emplace_back(ia, dc.base_n + ib);
            add_curve(c[ia], zab, scaled(c[ib], -1.0));
            dc.edges.emplace_back(ib, dc.base_n + ia);
            add_curve(c[ib], zba, scaled(c[ia], -1.0));
        }
    return dc;
}

struct DrawingReport {
    bool planar_ok = true;
    bool edge_bound_ok = true;  // |E(C)| <= 4n' - 4
    std::vector<std::pair<int, int>> crossings;  // arc index pairs
};

inline DrawingReport verify_drawing(const DoubleCover& dc) {
    DrawingReport rep;
    std::size_t m = dc.arcs.size();
    auto near = [](const Vec& a, const Vec& b) { return angle_between(a, b) < tol::angle_dedup; };
    for (std::size_t i = 0; i < m; ++i) {
        GreatArc ai(dc.arcs[i].first, dc.arcs[i].second, 1.0);
        for (std::size_t j = i + 1; j < m; ++j) {
            GreatArc aj(dc.arcs[j].first, dc.arcs[j].second, 1.0);
            bool crossing = false;
            try {
                auto hit = arc_intersection(ai, aj);
                if (hit) {
                    const Vec& h = *hit;
                    bool end_i = near(h, ai.a) || near(h, ai.b);
                    bool end_j = near(h, aj.a) || near(h, aj.b);
                    crossing = !(end_i && end_j);
                }
            } catch (const OverlapError&) {
                crossing = true;
            }
            if (crossing) rep.crossings.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    rep.planar_ok = rep.crossings.empty();
    long long cap = std::max(4ll * dc.base_n - 4, 0ll);
    rep.edge_bound_ok = static_cast<long long>(dc.edges.size()) <= cap;
    return rep;
}

inline std::string cover_to_json(const DoubleCover& dc, const std::string& extra = "") {
    auto vec3 = [](const Vec& v) {
        return "[" + detail::fmt_double(v[0]) + "," + detail::fmt_double(v[1]) + "," +
               detail::fmt_double(v[2]) + "]";
    };
    std::string out = "{\"n_base\":" + std::to_string(dc.base_n) + ",\"vertices\":[";
    for (std::size_t i = 0; i < dc.vertices.size(); ++i) {
        if (i) out += ",";
        out += vec3(dc.vertices[i]);
    }
    out += "],\"edges\":[";
    for (std::size_t i = 0; i < dc.edges.size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(dc.edges[i].first) + "," +
               std::to_string(dc.edges[i].second) + "]";
    }
    out += "],\"arcs\":[";
    for (std::size_t i = 0; i < dc.arcs.size(); ++i) {
        if (i) out += ",";
        out += "[" + vec3(dc.arcs[i].first) + "," + vec3(dc.arcs[i].second) + "]";
    }
    out += "]";
    if (!extra.empty()) out += "," + extra;
    out += "}\n";
    return out;
}

// -------------------- the full pipeline --------------------

struct CoverPipeline {
    DiameterGraph pruned;
    std::vector<int> kept;
    bool empty = false;  // nothing survives pruning
    Vec pole;            // ambient-dimension unit vector
    DiametralFrame frame;
    std::vector<ProjectionPair> projections;
    SeparationReport separation;
    DoubleCover cover;
    DrawingReport drawing;
};

// Throws PreconditionError when the hypotheses fail (radius, hemisphere);
// separation violations land in the report instead.
inline CoverPipeline run_cover_pipeline(const PointSet& ps, double eps = tol::diameter_rel) {
    CoverPipeline pipe;
    DiameterGraph g = build_diameter_graph(ps, eps);
    auto [pruned, kept] = prune_low_degree(g);
    pipe.pruned = std::move(pruned);
    pipe.kept = std::move(kept);
    if (pipe.pruned.n == 0) {
        pipe.empty = true;
        return pipe;
    }
    const PointSet& sub = *pipe.pruned.source;
    pipe.pole = diametral_sphere(sub, pipe.pruned);
    pipe.frame = make_frame(*sub.sphere_radius, pipe.pole);
    for (int v = 0; v < pipe.pruned.n; ++v)
        pipe.projections.push_back(project_RB(sub, pipe.pruned, v, pipe.frame));
    pipe.separation = check_separation(pipe.pruned, pipe.projections);
    if (pipe.separation.ok()) {
        pipe.cover = build_double_cover(pipe.pruned, pipe.projections, pipe.separation);
        pipe.drawing = verify_drawing(pipe.cover);
    }
    return pipe;
}

}  // namespace diamgraph
