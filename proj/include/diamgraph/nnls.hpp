#pragma once

#include <algorithm>
#include <optional>

#include "diamgraph/core.hpp"

namespace diamgraph {

namespace detail {

// Solve the least-squares subproblem restricted to the passive columns via
// normal equations. Returns false if the system is numerically singular.
inline bool ls_on_passive(const std::vector<Vec>& cols, const Vec& x,
                          const std::vector<std::size_t>& passive, Vec& z) {
    std::size_t k = passive.size();
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            a[i][j] = dot(cols[passive[i]], cols[passive[j]]);
        a[i][i] += 1e-14 * (1.0 + a[i][i]);  // mild ridge against rank collapse
        a[i][k] = dot(cols[passive[i]], x);
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        if (std::fabs(a[col][col]) < 1e-18) return false;
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    z.assign(cols.size(), 0.0);
    for (std::size_t i = 0; i < k; ++i) z[passive[i]] = a[i][k] / a[i][i];
    return true;
}

}  // namespace detail

// Lawson-Hanson active set. Minimizes |sum_i lambda_i g_i - x| over lambda >= 0.
inline Vec nnls(const std::vector<Vec>& gens, const Vec& x) {
    std::size_t k = gens.size();
    Vec lambda(k, 0.0);
    if (k == 0) return lambda;
    std::vector<bool> in_passive(k, false);
    std::vector<std::size_t> passive;
    double xscale = std::max(1.0, norm(x));
    Vec resid = x;

    for (std::size_t outer = 0; outer < 4 * k + 16; ++outer) {
        // Most negative gradient among active (zero) coefficients.
        double best = 1e-12 * xscale;
        std::size_t pick = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (in_passive[i]) continue;
            double w = dot(gens[i], resid);
            if (w > best) {
                best = w;
                pick = i;
            }
        }
        if (pick == k) break;
        in_passive[pick] = true;
        passive.push_back(pick);

        for (std::size_t inner = 0; inner < 4 * k + 16; ++inner) {
            Vec z;
            if (!detail::ls_on_passive(gens, x, passive, z)) {
                // Singular: drop the newest column and stop growing this set.
                in_passive[passive.back()] = false;
                passive.pop_back();
                break;
            }
            bool all_pos = true;
            for (std::size_t i : passive)
                if (z[i] <= 0.0) all_pos = false;
            if (all_pos) {
                lambda = z;
                break;
            }
            double alpha = 1.0;
            for (std::size_t i : passive)
                if (z[i] <= 0.0) alpha = std::min(alpha, lambda[i] / (lambda[i] - z[i]));
            for (std::size_t i : passive) lambda[i] += alpha * (z[i] - lambda[i]);
            std::vector<std::size_t> keep;
            for (std::size_t i : passive) {
                if (lambda[i] <= 1e-15 * xscale) {
                    lambda[i] = 0.0;
                    in_passive[i] = false;
                } else {
                    keep.push_back(i);
                }
            }
            passive = std::move(keep);
            if (passive.empty()) break;
        }

        resid = x;
        for (std::size_t i = 0; i < k; ++i)
            if (lambda[i] != 0.0) axpy(-lambda[i], gens[i], resid);
    }
    return lambda;
}

// Nonnegative combination of the generators reproducing x within a relative
// residual of 1e-8 * max(1, |x|), or nullopt. Tolerance choice: residuals scale
// with |x|, and 1e-8 sits far above fp noise yet far below any real margin.
inline std::optional<Vec> cone_membership(const Vec& x, const std::vector<Vec>& gens) {
    for (const auto& g : gens)
        if (g.size() != x.size()) throw DomainError("cone_membership: mixed dimensions");
    Vec lambda = nnls(gens, x);
    Vec resid = x;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (lambda[i] != 0.0) axpy(-lambda[i], gens[i], resid);
    if (norm(resid) <= tol::cone_rel * std::max(1.0, norm(x)))
        return lambda;
    return std::nullopt;
}

}  // namespace diamgraph
