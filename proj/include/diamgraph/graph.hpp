#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "diamgraph/geometry.hpp"
#include "diamgraph/pointset.hpp"

namespace diamgraph {

// Edges join exactly the pairs whose distance is >= diam*(1-eps).
// Adjacency rows are bit-packed, one uint64 word per 64 vertices.
struct DiameterGraph {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> rows;  // n * words
    double diam = 1.0;
    double eps = 0.0;
    std::optional<PointSet> source;

    bool adj(int i, int j) const {
        return (rows[static_cast<std::size_t>(i) * words + (j >> 6)] >>
                (j & 63)) & 1u;
    }

    void set_edge(int i, int j) {
        rows[static_cast<std::size_t>(i) * words + (j >> 6)] |= 1ull << (j & 63);
        rows[static_cast<std::size_t>(j) * words + (i >> 6)] |= 1ull << (i & 63);
    }

    const std::uint64_t* row(int i) const {
        return rows.data() + static_cast<std::size_t>(i) * words;
    }

    int degree(int i) const {
        int d = 0;
        for (int w = 0; w < words; ++w) d += std::popcount(row(i)[w]);
        return d;
    }

    long long edge_count() const {
        long long total = 0;
        for (int i = 0; i < n; ++i) total += degree(i);
        return total / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (adj(i, j)) out.emplace_back(i, j);
        return out;  // already lexicographic
    }
};

inline DiameterGraph build_diameter_graph(const PointSet& ps,
                                          double eps = tol::diameter_rel) {
    if (ps.points.size() < 2) throw DegenerateError("degenerate set: need >= 2 points");
    if (!(eps >= 0.0 && eps <= tol::diameter_rel_max))
        throw DomainError("build: eps outside [0, 1e-3]");
    check_sphere(ps);

    DiameterGraph g;
    g.n = static_cast<int>(ps.points.size());
    g.words = (g.n + 63) / 64;
    g.rows.assign(static_cast<std::size_t>(g.n) * g.words, 0);
    g.eps = eps;

    double best2 = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            best2 = std::max(best2, dist2(ps.points[i], ps.points[j]));
    g.diam = std::sqrt(best2);
    if (g.diam <= 1e-12) throw DegenerateError("degenerate set: all points coincide");

    double cut = g.diam * (1.0 - eps);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (dist(ps.points[i], ps.points[j]) >= cut) g.set_edge(i, j);
    g.source = ps;
    return g;
}

// Abstract graph wrapper so the combinatorial checks run on plain edge lists.
inline DiameterGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw DomainError("graph_from_edges: negative n");
    DiameterGraph g;
    g.n = n;
    g.words = (n + 63) / 64;
    g.rows.assign(static_cast<std::size_t>(n) * std::max(g.words, 1), 0);
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw DomainError("graph_from_edges: bad edge");
        g.set_edge(i, j);
    }
    return g;
}

// -------------------- clique counting --------------------

namespace detail {

template <typename Visit>
inline void clique_extend(const DiameterGraph& g, std::vector<std::uint64_t>& cand,
                          std::vector<int>& stack, int depth, int l, Visit&& visit) {
    if (depth == l) {
        visit(stack);
        return;
    }
    int lo = stack.empty() ? 0 : stack.back() + 1;
    for (int v = lo; v < g.n; ++v) {
        if (!((cand[v >> 6] >> (v & 63)) & 1u)) continue;
        std::vector<std::uint64_t> next(g.words);
        const std::uint64_t* rv = g.row(v);
        for (int w = 0; w < g.words; ++w) next[w] = cand[w] & rv[w];
        stack.push_back(v);
        clique_extend(g, next, stack, depth + 1, l, visit);
        stack.pop_back();
    }
}

}  // namespace detail

inline long long count_cliques(const DiameterGraph& g, int l) {
    if (l < 2 || l > std::max(g.n, 2)) throw DomainError("count_cliques: l out of range");
    if (l > g.n) return 0;
    long long total = 0;
    std::vector<std::uint64_t> all(g.words, 0);
    for (int v = 0; v < g.n; ++v) all[v >> 6] |= 1ull << (v & 63);
    std::vector<int> stack;
    detail::clique_extend(g, all, stack, 0, l, [&](const std::vector<int>&) { ++total; });
    return total;
}

inline std::vector<std::vector<int>> cliques_of_size(const DiameterGraph& g, int l) {
    if (l < 2 || l > std::max(g.n, 2)) throw DomainError("cliques_of_size: l out of range");
    std::vector<std::vector<int>> out;
    if (l > g.n) return out;
    std::vector<std::uint64_t> all(g.words, 0);
    for (int v = 0; v < g.n; ++v) all[v >> 6] |= 1ull << (v & 63);
    std::vector<int> stack;
    detail::clique_extend(g, all, stack, 0, l,
                          [&](const std::vector<int>& s) { out.push_back(s); });
    return out;
}

struct CliqueReport {
    long long counts[6] = {0, 0, 0, 0, 0, 0};  // index by size, 2..5 used
};

inline CliqueReport clique_report(const DiameterGraph& g) {
    CliqueReport r;
    for (int l = 2; l <= 5; ++l)
        if (l <= g.n) r.counts[l] = count_cliques(g, l);
    return r;
}

// -------------------- chromatic number --------------------

namespace detail {

inline std::vector<int> greedy_clique(const DiameterGraph& g) {
    std::vector<int> order(g.n);
    for (int i = 0; i < g.n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    std::vector<int> clique;
    for (int v : order) {
        bool ok = true;
        for (int u : clique)
            if (!g.adj(u, v)) {
                ok = false;
                break;
            }
        if (ok) clique.push_back(v);
    }
    return clique;
}

inline bool k_colorable(const DiameterGraph& g, int k, const std::vector<int>& order,
                        std::vector<int>& color, int pos, int used) {
    if (pos == static_cast<int>(order.size())) return true;
    int v = order[pos];
    std::uint64_t forbidden = 0;
    // Scan every vertex: pinned colors live outside the order list.
    for (int u = 0; u < g.n; ++u)
        if (color[u] >= 0 && g.adj(u, v)) forbidden |= 1ull << color[u];
    // Never open more than one fresh color: colors are interchangeable.
    int cap = std::min(k - 1, used);
    for (int c = 0; c <= cap; ++c) {
        if ((forbidden >> c) & 1u) continue;
        color[v] = c;
        if (k_colorable(g, k, order, color, pos + 1, std::max(used, c + 1))) return true;
        color[v] = -1;
    }
    return false;
}

}  // namespace detail

inline int chromatic_number(const DiameterGraph& g) {
    if (g.n > 64) throw SizeCapError("size cap: chromatic number limited to n <= 64");
    if (g.n == 0) return 0;
    if (g.edge_count() == 0) return 1;

    std::vector<int> clique = detail::greedy_clique(g);
    int lb = static_cast<int>(clique.size());

    std::vector<int> order(g.n);
    for (int i = 0; i < g.n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    std::vector<int> color(g.n, -1);
    int ub = 0;
    for (int v : order) {
        std::uint64_t forbidden = 0;
        for (int u = 0; u < g.n; ++u)
            if (color[u] >= 0 && g.adj(u, v)) forbidden |= 1ull << color[u];
        int c = 0;
        while ((forbidden >> c) & 1u) ++c;
        color[v] = c;
        ub = std::max(ub, c + 1);
    }

    for (int k = lb; k < ub; ++k) {
        std::vector<int> col(g.n, -1);
        // Symmetry breaking: pin the greedy clique to distinct colors up front.
        std::vector<bool> pinned(g.n, false);
        int pin = 0;
        for (int v : clique) {
            if (pin >= k) break;
            col[v] = pin++;
            pinned[v] = true;
        }
        std::vector<int> rest;
        for (int v : order)
            if (!pinned[v]) rest.push_back(v);
        if (detail::k_colorable(g, k, rest, col, 0, pin)) return k;
    }
    return ub;
}

// -------------------- odd cycles --------------------

// True when no two vertex-disjoint simple odd cycles exist. Exhaustive over all
// simple cycles anchored at their smallest vertex, direction canonicalized.
inline bool odd_cycles_pairwise_intersect(const DiameterGraph& g) {
    if (g.n > 16) throw SizeCapError("size cap: odd-cycle check limited to n <= 16");
    std::vector<std::uint32_t> odd_masks;
    bool disjoint_found = false;

    std::vector<int> path;
    std::function<void(int, int, std::uint32_t)> dfs = [&](int s, int u,
                                                           std::uint32_t visited) {
        if (disjoint_found) return;
        for (int w = s; w < g.n; ++w) {
            if (!g.adj(u, w)) continue;
            if (w == s) {
                if (path.size() >= 3 && path[1] < path.back()) {
                    if (path.size() % 2 == 1) {
                        std::uint32_t mask = visited;
                        for (std::uint32_t m : odd_masks)
                            if ((m & mask) == 0) {
                                disjoint_found = true;
                                return;
                            }
                        odd_masks.push_back(mask);
                        if (odd_masks.size() > 4'000'000u)
                            throw SizeCapError("size cap: odd-cycle enumeration exploded");
                    }
                }
            } else if (!((visited >> w) & 1u)) {
                path.push_back(w);
                dfs(s, w, visited | (1u << w));
                path.pop_back();
                if (disjoint_found) return;
            }
        }
    };

    for (int s = 0; s < g.n && !disjoint_found; ++s) {
        path.assign(1, s);
        dfs(s, s, 1u << s);
    }
    return !disjoint_found;
}

// -------------------- K_{s,3} --------------------

struct Ks3Witness {
    std::array<int, 3> side_3;
    std::vector<int> side_s;
};

inline std::optional<Ks3Witness> find_Ks3(const DiameterGraph& g, int s) {
    if (s < 1) throw DomainError("find_Ks3: s must be >= 1");
    std::vector<std::uint64_t> common(g.words);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            for (int k = j + 1; k < g.n; ++k) {
                const std::uint64_t *ri = g.row(i), *rj = g.row(j), *rk = g.row(k);
                int cnt = 0;
                for (int w = 0; w < g.words; ++w) {
                    common[w] = ri[w] & rj[w] & rk[w];
                    cnt += std::popcount(common[w]);
                }
                if (cnt < s) continue;
                Ks3Witness wit;
                wit.side_3 = {i, j, k};
                for (int v = 0; v < g.n && static_cast<int>(wit.side_s.size()) < s; ++v)
                    if ((common[v >> 6] >> (v & 63)) & 1u) wit.side_s.push_back(v);
                return wit;
            }
    return std::nullopt;
}

// Sufficient edge-density condition for K_{s,3}, evaluated exactly with
// cleared denominators: 2e(2e-n)(2e-2n) > (s-1)(n-1)(n-2)n^3.
inline bool kst_condition(long long n, long long e, long long s) {
    if (n < 3) throw DomainError("kst_condition: n must be >= 3");
    if (s < 1) throw DomainError("kst_condition: s must be >= 1");
    if (e < 0 || e > n * (n - 1) / 2) throw DomainError("kst_condition: e out of range");
    if (2 * e >= n * n) throw DomainError("kst_condition: needs e < n^2/2");
    __int128 lhs = static_cast<__int128>(2 * e) * (2 * e - n) * (2 * e - 2 * n);
    __int128 rhs = static_cast<__int128>(s - 1) * (n - 1) * (n - 2) * n * n * n;
    return lhs > rhs;
}

// -------------------- triangle bound --------------------

struct TriangleBound {
    long long t = 0;
    long long e = 0;
    double bound = 0.0;            // 4e/3 - 2n/3
    double secondary_bound = 0.0;  // n^2/3 + 2n/3
    bool ok = false;               // t <= max(bound, 0), exact in integers
    bool raw_ok = false;           // t <= bound without the clamp
    bool diameter_graphs_only = false;  // set when the raw bound went negative
};

inline TriangleBound triangle_bound_check(const DiameterGraph& g) {
    TriangleBound r;
    r.t = g.n >= 3 ? count_cliques(g, 3) : 0;
    r.e = g.edge_count();
    long long n = g.n;
    r.bound = (4.0 * r.e - 2.0 * n) / 3.0;
    r.secondary_bound = (static_cast<double>(n) * n + 2.0 * n) / 3.0;
    r.raw_ok = 3 * r.t <= 4 * r.e - 2 * n;
    r.ok = 3 * r.t <= std::max(4 * r.e - 2 * n, 0ll);
    r.diameter_graphs_only = 4 * r.e - 2 * n < 0;
    return r;
}

// -------------------- clique intersections --------------------

inline std::vector<std::pair<std::vector<int>, std::vector<int>>>
cliques_sharing_exactly(const DiameterGraph& g, int l, int k) {
    if (l < 2 || l > std::max(g.n, 2)) throw DomainError("cliques_sharing_exactly: l out of range");
    auto cliques = cliques_of_size(g, l);
    std::vector<std::uint64_t> masks;  // fine while n <= 64; fall back for larger n
    bool small = g.n <= 64;
    if (small)
        for (const auto& c : cliques) {
            std::uint64_t m = 0;
            for (int v : c) m |= 1ull << v;
            masks.push_back(m);
        }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (std::size_t a = 0; a < cliques.size(); ++a)
        for (std::size_t b = a + 1; b < cliques.size(); ++b) {
            int shared;
            if (small) {
                shared = std::popcount(masks[a] & masks[b]);
            } else {
                shared = 0;
                std::size_t ia = 0, ib = 0;
                while (ia < cliques[a].size() && ib < cliques[b].size()) {
                    if (cliques[a][ia] == cliques[b][ib]) ++shared, ++ia, ++ib;
                    else if (cliques[a][ia] < cliques[b][ib]) ++ia;
                    else ++ib;
                }
            }
            if (shared == k) out.emplace_back(cliques[a], cliques[b]);
        }
    return out;
}

struct CliquePartition {
    std::vector<std::vector<int>> vertex_classes;  // union of vertices per class
    std::vector<bool> class_pairwise_share_ge2;
    bool all_pairwise_share_ge2 = true;
};

inline CliquePartition clique_equivalence_partition(const DiameterGraph& g, int l) {
    if (l < 2) throw DomainError("clique_equivalence_partition: l must be >= 2");
    auto cliques = cliques_of_size(g, l);
    std::size_t m = cliques.size();
    std::vector<std::size_t> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    auto share = [&](std::size_t a, std::size_t b) {
        int shared = 0;
        std::size_t ia = 0, ib = 0;
        while (ia < cliques[a].size() && ib < cliques[b].size()) {
            if (cliques[a][ia] == cliques[b][ib]) ++shared, ++ia, ++ib;
            else if (cliques[a][ia] < cliques[b][ib]) ++ia;
            else ++ib;
        }
        return shared;
    };

    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (share(a, b) >= 1) parent[find(a)] = find(b);

    CliquePartition out;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long long> root_to_group(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t r = find(i);
        if (root_to_group[r] < 0) {
            root_to_group[r] = static_cast<long long>(groups.size());
            groups.emplace_back();
        }
        groups[root_to_group[r]].push_back(i);
    }
    for (const auto& grp : groups) {
        std::vector<bool> seen(g.n, false);
        std::vector<int> verts;
        bool ge2 = true;
        for (std::size_t i : grp)
            for (int v : cliques[i])
                if (!seen[v]) {
                    seen[v] = true;
                    verts.push_back(v);
                }
        for (std::size_t x = 0; x < grp.size(); ++x)
            for (std::size_t y = x + 1; y < grp.size(); ++y)
                if (share(grp[x], grp[y]) < 2) ge2 = false;
        std::sort(verts.begin(), verts.end());
        out.vertex_classes.push_back(std::move(verts));
        out.class_pairwise_share_ge2.push_back(ge2);
        if (!ge2) out.all_pairwise_share_ge2 = false;
    }
    return out;
}

// -------------------- exports --------------------

inline std::string to_dimacs(const DiameterGraph& g) {
    auto es = g.edges();
    std::string out = "p edge " + std::to_string(g.n) + " " + std::to_string(es.size()) + "\n";
    for (auto [i, j] : es)
        out += "e " + std::to_string(i + 1) + " " + std::to_string(j + 1) + "\n";
    return out;
}

inline std::string graph_to_json(const DiameterGraph& g) {
    auto es = g.edges();
    std::string out = "{\"n\":" + std::to_string(g.n) + ",\"edges\":[";
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(es[i].first) + "," + std::to_string(es[i].second) + "]";
    }
    out += "]}\n";
    return out;
}

}  // namespace diamgraph
