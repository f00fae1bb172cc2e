#include <gtest/gtest.h>

#include <random>
#include <set>

#include "diamgraph/graph.hpp"

namespace dg = diamgraph;

namespace {

using Edges = std::vector<std::pair<int, int>>;

dg::DiameterGraph random_graph(int n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Edges es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (unit(rng) < p) es.emplace_back(i, j);
    return dg::graph_from_edges(n, es);
}

// Plain l-subset scan against an adjacency matrix; no bit tricks shared with
// the library implementation.
long long naive_cliques(const dg::DiameterGraph& g, int l) {
    int n = g.n;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [i, j] : g.edges()) adj[i][j] = adj[j][i] = true;
    std::vector<int> pick(l);
    long long total = 0;
    auto rec = [&](auto&& self, int depth, int lo) -> void {
        if (depth == l) {
            for (int a = 0; a < l; ++a)
                for (int b = a + 1; b < l; ++b)
                    if (!adj[pick[a]][pick[b]]) return;
            ++total;
            return;
        }
        for (int v = lo; v < n; ++v) {
            pick[depth] = v;
            self(self, depth + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return total;
}

int chromatic_brute_force(const dg::DiameterGraph& g) {
    int n = g.n;
    if (n == 0) return 0;
    Edges es = g.edges();
    if (es.empty()) return 1;
    for (int k = 2; k <= n; ++k) {
        std::vector<int> color(n, 0);
        auto rec = [&](auto&& self, int v) -> bool {
            if (v == n) return true;
            for (int c = 0; c < k; ++c) {
                bool ok = true;
                for (int u = 0; u < v; ++u)
                    if (g.adj(u, v) && color[u] == c) ok = false;
                if (!ok) continue;
                color[v] = c;
                if (self(self, v + 1)) return true;
            }
            return false;
        };
        if (rec(rec, 0)) return k;
    }
    return n;
}

// Every simple cycle via DFS over vertex subsets; odd ones kept as bitmasks.
std::vector<unsigned> odd_cycle_masks(const dg::DiameterGraph& g) {
    int n = g.n;
    std::vector<unsigned> masks;
    std::vector<int> path;
    auto rec = [&](auto&& self, int start, int v, unsigned used) -> void {
        for (int w = 0; w < n; ++w) {
            if (!g.adj(v, w)) continue;
            if (w == start && path.size() >= 3) {
                if (path.size() % 2 == 1 && path[1] < path.back()) masks.push_back(used);
                continue;
            }
            if (w <= start || (used & (1u << w))) continue;
            path.push_back(w);
            self(self, start, w, used | (1u << w));
            path.pop_back();
        }
    };
    for (int s = 0; s < n; ++s) {
        path = {s};
        rec(rec, s, s, 1u << s);
    }
    return masks;
}

bool odd_cycles_intersect_brute(const dg::DiameterGraph& g) {
    auto masks = odd_cycle_masks(g);
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = i + 1; j < masks.size(); ++j)
            if ((masks[i] & masks[j]) == 0) return false;
    return true;
}

Edges cycle(int n) {
    Edges es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return es;
}

Edges complete(int n) {
    Edges es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return es;
}

}  // namespace

TEST(Build, UnitSquareDiagonals) {
    dg::PointSet ps;
    ps.dim = 2;
    ps.points = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    dg::DiameterGraph g = dg::build_diameter_graph(ps);
    EXPECT_NEAR(g.diam, std::sqrt(2.0), 1e-15);
    EXPECT_EQ(g.edge_count(), 2);
    EXPECT_TRUE(g.adj(0, 3));
    EXPECT_TRUE(g.adj(1, 2));
    EXPECT_FALSE(g.adj(0, 1));
}

TEST(Build, Guards) {
    dg::PointSet ps;
    ps.dim = 2;
    ps.points = {{0.0, 0.0}};
    EXPECT_THROW(dg::build_diameter_graph(ps), dg::DegenerateError);
    ps.points.push_back({0.0, 0.0});
    EXPECT_THROW(dg::build_diameter_graph(ps), dg::DegenerateError);
    ps.points[1] = {1.0, 0.0};
    EXPECT_THROW(dg::build_diameter_graph(ps, 2e-3), dg::DomainError);
    EXPECT_THROW(dg::build_diameter_graph(ps, -1e-9), dg::DomainError);
    EXPECT_EQ(dg::build_diameter_graph(ps, 1e-3).edge_count(), 1);
}

TEST(Build, EpsWidensTheEdgeSet) {
    dg::PointSet ps;
    ps.dim = 2;
    ps.points = {{0.0, 0.0}, {1.0, 0.0}, {1e-5, 0.0}};
    EXPECT_EQ(dg::build_diameter_graph(ps, 1e-9).edge_count(), 1);
    EXPECT_EQ(dg::build_diameter_graph(ps, 1e-3).edge_count(), 2);
}

TEST(Build, SphereMetadataIsChecked) {
    dg::PointSet ps;
    ps.dim = 2;
    ps.sphere_radius = 1.0;
    ps.points = {{1.0, 0.0}, {0.5, 0.0}};
    EXPECT_THROW(dg::build_diameter_graph(ps), dg::PreconditionError);
}

TEST(Edges, LexicographicOrder) {
    dg::DiameterGraph g = dg::graph_from_edges(4, {{2, 3}, {0, 2}, {1, 0}});
    Edges expect = {{0, 1}, {0, 2}, {2, 3}};
    EXPECT_EQ(g.edges(), expect);
    EXPECT_EQ(g.degree(0), 2);
    EXPECT_EQ(g.degree(3), 1);
}

TEST(Cliques, MatchesNaiveEnumeration) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        int n = 4 + static_cast<int>(rng() % 7);
        dg::DiameterGraph g = random_graph(n, 0.2 + 0.6 * unit(rng), rng);
        for (int l = 2; l <= std::min(5, n); ++l)
            ASSERT_EQ(dg::count_cliques(g, l), naive_cliques(g, l))
                << "n=" << n << " l=" << l << " trial " << t;
    }
}

TEST(Cliques, ListingAndGuards) {
    dg::DiameterGraph g = dg::graph_from_edges(5, complete(4));
    EXPECT_EQ(dg::count_cliques(g, 4), 1);
    EXPECT_EQ(dg::count_cliques(g, 5), 0);
    auto triangles = dg::cliques_of_size(g, 3);
    EXPECT_EQ(triangles.size(), 4u);
    for (const auto& c : triangles) EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
    EXPECT_THROW(dg::count_cliques(g, 1), dg::DomainError);
    dg::CliqueReport rep = dg::clique_report(g);
    EXPECT_EQ(rep.counts[2], 6);
    EXPECT_EQ(rep.counts[3], 4);
    EXPECT_EQ(rep.counts[4], 1);
    EXPECT_EQ(rep.counts[5], 0);
}

TEST(Chromatic, MatchesBruteForce) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 60; ++t) {
        int n = 3 + static_cast<int>(rng() % 5);
        dg::DiameterGraph g = random_graph(n, 0.2 + 0.6 * unit(rng), rng);
        ASSERT_EQ(dg::chromatic_number(g), chromatic_brute_force(g)) << "trial " << t;
    }
}

TEST(Chromatic, KnownGraphs) {
    EXPECT_EQ(dg::chromatic_number(dg::graph_from_edges(5, cycle(5))), 3);
    EXPECT_EQ(dg::chromatic_number(dg::graph_from_edges(6, cycle(6))), 2);
    EXPECT_EQ(dg::chromatic_number(dg::graph_from_edges(4, complete(4))), 4);
    EXPECT_EQ(dg::chromatic_number(dg::graph_from_edges(5, complete(5))), 5);
    EXPECT_EQ(dg::chromatic_number(dg::graph_from_edges(3, {})), 1);
    EXPECT_EQ(dg::chromatic_number(dg::graph_from_edges(0, {})), 0);

    Edges petersen = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                      {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
    EXPECT_EQ(dg::chromatic_number(dg::graph_from_edges(10, petersen)), 3);

    EXPECT_THROW(dg::chromatic_number(dg::graph_from_edges(65, {{0, 1}})), dg::SizeCapError);
}

TEST(OddCycles, MatchesBruteForce) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 60; ++t) {
        int n = 4 + static_cast<int>(rng() % 5);
        dg::DiameterGraph g = random_graph(n, 0.15 + 0.5 * unit(rng), rng);
        ASSERT_EQ(dg::odd_cycles_pairwise_intersect(g), odd_cycles_intersect_brute(g))
            << "trial " << t;
    }
}

TEST(OddCycles, Fixtures) {
    EXPECT_TRUE(dg::odd_cycles_pairwise_intersect(dg::graph_from_edges(5, cycle(5))));
    EXPECT_TRUE(dg::odd_cycles_pairwise_intersect(dg::graph_from_edges(6, cycle(6))));

    Edges two_triangles = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    EXPECT_FALSE(dg::odd_cycles_pairwise_intersect(dg::graph_from_edges(6, two_triangles)));

    Edges bowtie = {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}};
    EXPECT_TRUE(dg::odd_cycles_pairwise_intersect(dg::graph_from_edges(5, bowtie)));

    EXPECT_THROW(dg::odd_cycles_pairwise_intersect(dg::graph_from_edges(17, {{0, 1}})),
                 dg::SizeCapError);
}

TEST(Kst, ConditionValues) {
    EXPECT_TRUE(dg::kst_condition(52, 676, 7));
    EXPECT_FALSE(dg::kst_condition(51, 650, 7));
    EXPECT_THROW(dg::kst_condition(2, 1, 1), dg::DomainError);
    EXPECT_THROW(dg::kst_condition(10, 46, 1), dg::DomainError);  // 2e >= n^2
    EXPECT_THROW(dg::kst_condition(10, 100, 1), dg::DomainError);
    EXPECT_THROW(dg::kst_condition(10, 20, 0), dg::DomainError);
}

TEST(Kst, FindsBipartiteWitness) {
    Edges k33;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) k33.emplace_back(i, j);
    auto w = dg::find_Ks3(dg::graph_from_edges(6, k33), 3);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->side_3.size(), 3u);
    EXPECT_EQ(w->side_s.size(), 3u);
    for (int a : w->side_3)
        for (int b : w->side_s) EXPECT_TRUE(dg::graph_from_edges(6, k33).adj(a, b));

    EXPECT_FALSE(dg::find_Ks3(dg::graph_from_edges(6, cycle(6)), 2).has_value());
    EXPECT_TRUE(dg::find_Ks3(dg::graph_from_edges(7, complete(7)), 4).has_value());
}

TEST(TriangleBound, Fixtures) {
    dg::TriangleBound c5 = dg::triangle_bound_check(dg::graph_from_edges(5, cycle(5)));
    EXPECT_EQ(c5.t, 0);
    EXPECT_TRUE(c5.ok);
    EXPECT_FALSE(c5.diameter_graphs_only);

    dg::TriangleBound k3 = dg::triangle_bound_check(dg::graph_from_edges(3, complete(3)));
    EXPECT_EQ(k3.t, 1);
    EXPECT_NEAR(k3.bound, 2.0, 1e-12);
    EXPECT_TRUE(k3.ok);

    // sparse graph: 4e - 2n < 0 makes the form vacuous
    dg::TriangleBound sparse = dg::triangle_bound_check(dg::graph_from_edges(4, {{0, 1}}));
    EXPECT_TRUE(sparse.diameter_graphs_only);
    EXPECT_TRUE(sparse.ok);

    // triangle plus isolated vertices: raw form goes negative while t = 1
    dg::DiameterGraph padded = dg::graph_from_edges(8, complete(3));
    dg::TriangleBound raw = dg::triangle_bound_check(padded);
    EXPECT_FALSE(raw.raw_ok);
}

TEST(SharedVertices, CountsAndPartition) {
    // two K4s glued along an edge: they share exactly 2 vertices
    Edges es = complete(4);
    for (int i : {2, 3, 4, 5})
        for (int j : {2, 3, 4, 5})
            if (i < j) es.emplace_back(i, j);
    dg::DiameterGraph g = dg::graph_from_edges(6, es);
    EXPECT_EQ(dg::count_cliques(g, 4), 2);
    EXPECT_TRUE(dg::cliques_sharing_exactly(g, 4, 1).empty());
    EXPECT_EQ(dg::cliques_sharing_exactly(g, 4, 2).size(), 1u);

    dg::CliquePartition part = dg::clique_equivalence_partition(g, 4);
    EXPECT_EQ(part.vertex_classes.size(), 1u);
    EXPECT_TRUE(part.all_pairwise_share_ge2);

    // two disjoint K4s: one class each, nothing shared
    Edges far = complete(4);
    for (int i : {4, 5, 6, 7})
        for (int j : {4, 5, 6, 7})
            if (i < j) far.emplace_back(i, j);
    dg::DiameterGraph h = dg::graph_from_edges(8, far);
    EXPECT_TRUE(dg::cliques_sharing_exactly(h, 4, 1).empty());
    dg::CliquePartition hp = dg::clique_equivalence_partition(h, 4);
    EXPECT_EQ(hp.vertex_classes.size(), 2u);

    // two K4s glued at one vertex: the forbidden overlap is detected
    Edges glued = complete(4);
    for (int i : {3, 4, 5, 6})
        for (int j : {3, 4, 5, 6})
            if (i < j) glued.emplace_back(i, j);
    EXPECT_EQ(dg::cliques_sharing_exactly(dg::graph_from_edges(7, glued), 4, 1).size(), 1u);
}

TEST(Export, DimacsAndJson) {
    dg::DiameterGraph g = dg::graph_from_edges(3, {{0, 2}, {0, 1}});
    EXPECT_EQ(dg::to_dimacs(g), "p edge 3 2\ne 1 2\ne 1 3\n");
    EXPECT_EQ(dg::graph_to_json(g), "{\"n\":3,\"edges\":[[0,1],[0,2]]}\n");
    EXPECT_EQ(dg::to_dimacs(dg::graph_from_edges(2, {})), "p edge 2 0\n");
}
