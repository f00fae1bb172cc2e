#pragma once

#include <algorithm>
#include <random>

#include "diamgraph/core.hpp"

namespace diamgraph {

struct Ball {
    Vec center;
    double radius = -1.0;  // radius < 0 means "no ball yet"

    bool contains(const Vec& p, double slack = 1e-12) const {
        if (radius < 0.0) return false;
        return dist(p, center) <= radius * (1.0 + slack) + 1e-300;
    }
};

namespace detail {

// Smallest ball with every support point on its boundary. Center lies in the
// affine hull of the support; solve the (k-1)x(k-1) Gram system.
inline Ball ball_through(const std::vector<Vec>& sup) {
    Ball b;
    if (sup.empty()) return b;
    std::size_t d = sup[0].size();
    std::size_t k = sup.size();
    if (k == 1) {
        b.center = sup[0];
        b.radius = 0.0;
        return b;
    }
    std::size_t m = k - 1;
    std::vector<Vec> e(m);
    for (std::size_t i = 0; i < m; ++i) e[i] = sub(sup[i + 1], sup[0]);
    // G y = rhs with G_ij = <e_i, e_j>, rhs_i = |e_i|^2 / 2
    std::vector<std::vector<double>> g(m, std::vector<double>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) g[i][j] = dot(e[i], e[j]);
        g[i][m] = 0.5 * norm2(e[i]);
    }
    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::fabs(g[r][col]) > std::fabs(g[piv][col])) piv = r;
        std::swap(g[col], g[piv]);
        if (std::fabs(g[col][col]) < 1e-14) {
            // Affinely dependent support; signal "no ball" so the caller skips it.
            return b;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            double f = g[r][col] / g[col][col];
            for (std::size_t c = col; c <= m; ++c) g[r][c] -= f * g[col][c];
        }
    }
    Vec c = sup[0];
    for (std::size_t i = 0; i < m; ++i) axpy(g[i][m] / g[i][i], e[i], c);
    b.center = std::move(c);
    double r2 = 0.0;
    for (const auto& p : sup) r2 = std::max(r2, dist2(p, b.center));
    b.radius = std::sqrt(r2);
    (void)d;
    return b;
}

inline Ball welzl(std::vector<const Vec*>& pts, std::size_t n,
                  std::vector<Vec>& sup, std::size_t d) {
    if (n == 0 || sup.size() == d + 1) return ball_through(sup);
    Ball b = welzl(pts, n - 1, sup, d);
    const Vec& p = *pts[n - 1];
    if (b.contains(p)) return b;
    sup.push_back(p);
    Ball b2 = welzl(pts, n - 1, sup, d);
    sup.pop_back();
    if (b2.radius < 0.0) return b;  // degenerate support, keep the enclosing ball
    return b2;
}

}  // namespace detail

// Minimal enclosing ball, randomized incremental with a fixed shuffle seed so
// results are reproducible.
inline Ball min_enclosing_ball(const std::vector<Vec>& points) {
    if (points.empty()) throw DomainError("min_enclosing_ball: empty set");
    std::size_t d = points[0].size();
    for (const auto& p : points)
        if (p.size() != d) throw DomainError("min_enclosing_ball: mixed dimensions");

    // Exact duplicates would make the support system singular.
    std::vector<const Vec*> uniq;
    uniq.reserve(points.size());
    for (const auto& p : points) {
        bool dup = false;
        for (const Vec* q : uniq)
            if (*q == p) {
                dup = true;
                break;
            }
        if (dup) continue;
        uniq.push_back(&p);
    }

    std::mt19937 rng(0x5eedu);
    std::shuffle(uniq.begin(), uniq.end(), rng);
    std::vector<Vec> sup;
    Ball b = detail::welzl(uniq, uniq.size(), sup, d);
    if (b.radius < 0.0) throw DegenerateError("min_enclosing_ball: no ball found");
    return b;
}

}  // namespace diamgraph
