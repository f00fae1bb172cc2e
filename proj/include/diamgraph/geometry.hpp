#pragma once

#include <optional>
#include <utility>

#include "diamgraph/miniball.hpp"
#include "diamgraph/nnls.hpp"
#include "diamgraph/pointset.hpp"

namespace diamgraph {

struct DiameterResult {
    double value = 0.0;
    std::vector<std::pair<int, int>> witness_pairs;  // every pair within eps of max
};

inline DiameterResult diameter_witnesses(const PointSet& ps,
                                         double eps = tol::diameter_rel) {
    if (ps.points.size() < 2) throw DegenerateError("degenerate set: need >= 2 points");
    std::size_t n = ps.points.size();
    double best2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best2 = std::max(best2, dist2(ps.points[i], ps.points[j]));
    DiameterResult r;
    r.value = std::sqrt(best2);
    double cut = r.value * (1.0 - eps);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist(ps.points[i], ps.points[j]) >= cut)
                r.witness_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return r;
}

inline double jung_radius(int d) {
    if (d <= 0) throw DomainError("jung_radius: d must be >= 1");
    return std::sqrt(static_cast<double>(d) / (2.0 * d + 2.0));
}

struct SphericalCap {
    Vec pole;                    // unit
    double angular_radius = 0.0; // radians, in [0, pi]

    bool contains(const Vec& u) const {
        return angle_between(pole, u) <= angular_radius + tol::containment;
    }
};

// Smallest cap holding a point set on a sphere about the origin. Pole comes
// from the minimal enclosing ball center; a center at the origin means the set
// fits in no hemisphere at all.
inline SphericalCap min_enclosing_cap(const PointSet& ps) {
    if (!ps.sphere_radius) throw DomainError("min_enclosing_cap: sphere_radius required");
    if (ps.points.empty()) throw DomainError("min_enclosing_cap: empty set");
    Ball b = min_enclosing_ball(ps.points);
    double cn = norm(b.center);
    if (cn <= 1e-12)
        throw DegenerateError("degenerate cap: set not confined to any hemisphere",
                              b.radius);
    SphericalCap cap;
    cap.pole = scaled(b.center, 1.0 / cn);
    double worst = 0.0;
    for (const auto& p : ps.points) worst = std::max(worst, angle_between(cap.pole, p));
    cap.angular_radius = worst;
    return cap;
}

inline bool in_open_hemisphere(const PointSet& ps, const Vec& pole) {
    if (!ps.sphere_radius) throw DomainError("in_open_hemisphere: sphere_radius required");
    double r = *ps.sphere_radius;
    for (const auto& p : ps.points)
        if (dot(p, pole) <= r * tol::hemisphere_rel) return false;
    return true;
}

// -------------------- great arcs (on 2-spheres) --------------------

// Shorter arc between two points of a sphere about the origin in R^3.
// Endpoints are stored normalized; the radius only scales results.
struct GreatArc {
    Vec a, b;      // unit
    double radius;

    GreatArc(const Vec& p, const Vec& q, double r) : radius(r) {
        if (p.size() != 3 || q.size() != 3) throw DomainError("GreatArc needs 3-vectors");
        if (!(r > 0.0)) throw DomainError("GreatArc needs positive radius");
        a = normalized(p);
        b = normalized(q);
        double ang = angle_between(a, b);
        if (ang < tol::angle_dedup) throw DegenerateError("arc endpoints coincide");
        if (ang > M_PI - tol::angle_dedup) throw DegenerateError("arc endpoints antipodal");
    }

    double length_angle() const { return angle_between(a, b); }

    // u unit; true if u lies on the shorter arc within angular tolerance.
    bool covers(const Vec& u, double ang_tol = tol::angle_dedup) const {
        return angle_between(a, u) + angle_between(u, b) <= length_angle() + ang_tol;
    }
};

// Intersection point of two shorter arcs, scaled to the sphere, or nullopt.
// Overlapping collinear arcs are an error; a shared endpoint alone is fine.
inline std::optional<Vec> arc_intersection(const GreatArc& x, const GreatArc& y) {
    if (std::fabs(x.radius - y.radius) > 1e-9 * std::max(x.radius, y.radius))
        throw DomainError("arc_intersection: arcs on different spheres");
    double r = x.radius;

    Vec n1 = cross3(x.a, x.b);
    Vec n2 = cross3(y.a, y.b);
    Vec d = cross3(n1, n2);
    double dn = norm(d);

    if (dn < 1e-12) {
        // Same great circle. Interior containment either way means overlap.
        auto strictly_inside = [](const GreatArc& arc, const Vec& u) {
            double ea = angle_between(arc.a, u), eb = angle_between(arc.b, u);
            return ea > tol::angle_dedup && eb > tol::angle_dedup && arc.covers(u);
        };
        if (strictly_inside(x, y.a) || strictly_inside(x, y.b) ||
            strictly_inside(y, x.a) || strictly_inside(y, x.b))
            throw OverlapError("overlap: collinear arcs share a segment");
        std::optional<Vec> hit;
        int shared = 0;
        for (const Vec* p : {&y.a, &y.b}) {
            if (angle_between(x.a, *p) < tol::angle_dedup ||
                angle_between(x.b, *p) < tol::angle_dedup) {
                ++shared;
                hit = scaled(*p, r);
            }
        }
        if (shared > 1) throw OverlapError("overlap: collinear arcs share a segment");
        return hit;
    }

    // Shared endpoints first, so exact vertices come back exactly.
    for (const Vec* p : {&x.a, &x.b})
        for (const Vec* q : {&y.a, &y.b})
            if (angle_between(*p, *q) < tol::angle_dedup) return scaled(*p, r);

    Vec u = scaled(d, 1.0 / dn);
    for (const Vec& cand : {u, scaled(u, -1.0)})
        if (x.covers(cand) && y.covers(cand)) return scaled(cand, r);
    return std::nullopt;
}

// -------------------- spherical hulls --------------------

// Minimal generator subset spanning the same cone. Coincident directions
// (angle < 1e-9) are collapsed to the lowest index first.
inline std::vector<int> spherical_hull_vertices(const std::vector<Vec>& gens) {
    if (gens.empty()) throw DomainError("spherical_hull_vertices: no generators");
    std::size_t d = gens[0].size();
    PointSet dirs;
    dirs.dim = static_cast<int>(d);
    dirs.sphere_radius = 1.0;
    for (const auto& g : gens) dirs.points.push_back(normalized(g));

    try {
        SphericalCap cap = min_enclosing_cap(dirs);
        if (cap.angular_radius >= M_PI / 2 - 1e-12)
            throw PreconditionError("hemisphere precondition violated: generators span a closed hemisphere");
    } catch (const DegenerateError&) {
        throw PreconditionError("hemisphere precondition violated: generators not in any open hemisphere");
    }

    std::size_t k = gens.size();
    std::vector<int> kept;
    for (std::size_t i = 0; i < k; ++i) {
        bool dup = false;
        for (int j : kept)
            if (angle_between(dirs.points[i], dirs.points[j]) < tol::angle_dedup) {
                dup = true;
                break;
            }
        if (!dup) kept.push_back(static_cast<int>(i));
    }

    // A non-extreme direction is a cone combination of the rest; extreme ones
    // never are, so greedy removal is order-independent here.
    for (std::size_t pos = 0; pos < kept.size();) {
        std::vector<Vec> others;
        for (std::size_t t = 0; t < kept.size(); ++t)
            if (t != pos) others.push_back(dirs.points[kept[t]]);
        if (!others.empty() && cone_membership(dirs.points[kept[pos]], others))
            kept.erase(kept.begin() + pos);
        else
            ++pos;
    }
    return kept;
}

}  // namespace diamgraph
