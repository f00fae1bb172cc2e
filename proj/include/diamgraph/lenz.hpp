#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "diamgraph/pointset.hpp"

namespace diamgraph {

// -------------------- closed-form extremal counts --------------------

inline long long t2(long long n) {
    if (n < 0) throw DomainError("t2: n must be >= 0");
    return (n / 2) * ((n + 1) / 2);
}

inline long long F2(long long n) {
    if (n < 5) throw DomainError("F2: n must be >= 5");
    long long base = t2(n) + (n + 1) / 2;
    return n % 4 == 3 ? base : base + 1;
}

inline long long F3(long long n) {
    if (n < 5) throw DomainError("F3: n must be >= 5");
    if (n % 2 == 0) return n * (n - 2) / 4 + n;
    if (n % 4 == 1) return (n - 1) * (n - 1) / 4 + n;
    return (n - 1) * (n - 1) / 4 + n - 1;
}

inline long long U4_edges(long long n) {
    if (n < 5) throw DomainError("U4_edges: n must be >= 5");
    long long base = (n * n) / 4 + n;
    return (n % 8 == 0 || n % 10 == 0) ? base : base - 1;
}

// Most unit chords k points on a circle of the given radius can carry.
// Radius 1/2 admits only antipodal pairs; above 1/sqrt(3) a unit chord spans
// more than 120 degrees, so two of them cannot avoid a longer chord.
inline long long max_circle_diameters(long long k, double radius) {
    if (k < 1) throw DomainError("max_circle_diameters: k must be >= 1");
    if (k == 1) return 0;
    if (std::abs(radius - 0.5) <= 1e-12) return k / 2;
    if (radius < 0.5) return 0;
    if (radius > (1.0 / std::sqrt(3.0)) * (1.0 + 1e-12)) return 1;
    return k % 2 == 1 ? k : k - 1;
}

inline long long lenz_triangles_formula(long long n, long long a) {
    if (n < 5) throw DomainError("lenz_triangles_formula: n must be >= 5");
    if (a < 2 || a > n - 2) throw DomainError("lenz_triangles_formula: a out of range");
    return n + 2 * (n - a) * ((a - 1) / 2);
}

struct FormulaRow {
    long long n, t2, F2, F3, U4;
};

inline std::vector<FormulaRow> formula_table(long long lo, long long hi) {
    if (lo < 5 || hi > 1000000) throw DomainError("formula_table: range must lie in [5, 1e6]");
    std::vector<FormulaRow> rows;
    for (long long n = lo; n <= hi; ++n)
        rows.push_back({n, t2(n), F2(n), F3(n), U4_edges(n)});
    return rows;
}

inline std::string formula_csv(long long lo, long long hi) {
    std::string out = "n,t2,F2,F3,U4\n";
    for (const auto& r : formula_table(lo, hi))
        out += std::to_string(r.n) + "," + std::to_string(r.t2) + "," +
               std::to_string(r.F2) + "," + std::to_string(r.F3) + "," +
               std::to_string(r.U4) + "\n";
    return out;
}

// -------------------- Lenz configurations --------------------

// Points on two concentric circles in orthogonal planes, r1^2 + r2^2 = 1, so
// every cross pair is at distance exactly 1.
struct LenzConfig {
    int a = 0;
    double r1 = 0.0, r2 = 0.0;
    std::vector<double> angles1, angles2;

    PointSet realize() const {
        PointSet ps;
        ps.dim = 4;
        for (double t : angles1)
            ps.points.push_back({r1 * std::cos(t), r1 * std::sin(t), 0.0, 0.0});
        for (double t : angles2)
            ps.points.push_back({0.0, 0.0, r2 * std::cos(t), r2 * std::sin(t)});
        return ps;
    }
};

namespace detail {

struct CirclePart {
    double radius = 0.0;
    std::vector<double> angles;
};

// k odd: regular k-gon whose floor(k/2)-step chords are exactly 1. Those k
// chords form a single cycle; every other chord sits below 1 by the star gap.
inline CirclePart odd_star(int k) {
    CirclePart part;
    double step = std::numbers::pi * (k / 2) / k;
    part.radius = 0.5 / std::sin(step);
    for (int j = 0; j < k; ++j)
        part.angles.push_back(2.0 * std::numbers::pi * j / k);
    return part;
}

// k even: the (k+1)-star with one vertex removed. Its unit chords lose the two
// incident to the dropped vertex and form a path, k-1 of them.
inline CirclePart star_minus_one(int k) {
    CirclePart part = odd_star(k + 1);
    part.angles.pop_back();
    return part;
}

inline CirclePart circle_part(int k) {
    return k % 2 == 1 ? odd_star(k) : star_minus_one(k);
}

// k >= 2 points with exactly one unit chord: endpoints at angular separation
// beta, the rest strictly inside with every other chord at most 1 - 1e-3.
inline CirclePart one_chord(int k, double r2) {
    CirclePart part;
    part.radius = r2;
    double beta = 2.0 * std::asin(0.5 / r2);
    part.angles.push_back(0.0);
    part.angles.push_back(beta);
    double pad = 4e-3;  // 4e-3 rad trims chords by ~2.6e-3, clear of the 1e-3 band
    int fill = k - 2;
    for (int i = 0; i < fill; ++i)
        part.angles.push_back(pad + (beta - 2.0 * pad) * (i + 1) / (fill + 1));
    return part;
}

inline LenzConfig assemble(int n, int a) {
    LenzConfig cfg;
    cfg.a = a;
    CirclePart c1 = circle_part(a);
    cfg.r1 = c1.radius;
    cfg.r2 = std::sqrt(1.0 - cfg.r1 * cfg.r1);
    cfg.angles1 = std::move(c1.angles);
    cfg.angles2 = one_chord(n - a, cfg.r2).angles;
    return cfg;
}

// Maximizes a(n-a+1), the shared core of the edge and triangle counts over odd
// splits. Larger split on ties: at a = 3 the star degenerates to a unit
// triangle whose extra all-C1 triangle would inflate the count, so prefer any
// other argmax.
inline int best_odd_split(int n) {
    int best_a = 3;
    long long best = -1;
    for (int a = 3; a <= n - 2; a += 2) {
        long long v = static_cast<long long>(a) * (n - a + 1);
        if (v >= best) {
            best = v;
            best_a = a;
        }
    }
    return best_a;
}

}  // namespace detail

inline LenzConfig gen_edge_optimal(int n) {
    if (n < 5) throw DomainError("gen_edge_optimal: n must be >= 5");
    return detail::assemble(n, detail::best_odd_split(n));
}

inline LenzConfig gen_triangle_optimal(int n) {
    if (n < 5) throw DomainError("gen_triangle_optimal: n must be >= 5");
    return detail::assemble(n, detail::best_odd_split(n));
}

inline LenzConfig gen_clique4(int n) {
    if (n < 5) throw DomainError("gen_clique4: n must be >= 5");
    return detail::assemble(n, n - 2);
}

inline std::string lenz_to_json(const LenzConfig& cfg) {
    std::string extra = "\"lenz\":{\"a\":" + std::to_string(cfg.a) +
                        ",\"r1\":" + detail::fmt_double(cfg.r1) +
                        ",\"r2\":" + detail::fmt_double(cfg.r2) + "}";
    return to_json(cfg.realize(), extra);
}

}  // namespace diamgraph
