// Command-line front end: formula tables, generators, analysis, verification
// suites, annealing search, and the double-cover pipeline.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or input error, 3 precondition violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "diamgraph/cover.hpp"
#include "diamgraph/extremal.hpp"
#include "diamgraph/geometry.hpp"
#include "diamgraph/graph.hpp"
#include "diamgraph/lenz.hpp"
#include "diamgraph/version.hpp"

namespace dg = diamgraph;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw dg::DomainError("cannot read input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw dg::DomainError("cannot open output file: " + path);
    f << content;
    std::cerr << "wrote " << path << "\n";
}

std::string config_block(const std::string& cmd, const std::string& params) {
    return "\"config\":{\"tool\":\"diamgraph\",\"version\":\"" + std::string(dg::kVersion) +
           "\",\"cmd\":\"" + cmd + "\"" + (params.empty() ? "" : "," + params) + "}";
}

// ---------- formula ----------

int run_formula(long long from, long long to, const std::string& out) {
    std::cerr << "diamgraph " << dg::kVersion << " formula from=" << from << " to=" << to
              << "\n";
    emit(out, dg::formula_csv(from, to));
    return 0;
}

// ---------- gen ----------

int run_gen(const std::string& kind, int n, int m, double r, std::uint64_t seed,
            const std::string& out) {
    std::string json;
    if (kind == "lenz-edges" || kind == "lenz-triangles" || kind == "lenz-4cliques") {
        dg::LenzConfig cfg = kind == "lenz-edges"       ? dg::gen_edge_optimal(n)
                             : kind == "lenz-triangles" ? dg::gen_triangle_optimal(n)
                                                        : dg::gen_clique4(n);
        std::string extra = "\"lenz\":{\"a\":" + std::to_string(cfg.a) +
                            ",\"r1\":" + dg::detail::fmt_double(cfg.r1) +
                            ",\"r2\":" + dg::detail::fmt_double(cfg.r2) + "}," +
                            config_block("gen", "\"kind\":\"" + kind +
                                                    "\",\"n\":" + std::to_string(n));
        json = dg::to_json(cfg.realize(), extra);
    } else if (kind == "simplex") {
        json = dg::to_json(dg::gen_simplex(), config_block("gen", "\"kind\":\"simplex\""));
    } else if (kind == "kmm") {
        json = dg::to_json(dg::gen_kmm(m),
                           config_block("gen", "\"kind\":\"kmm\",\"m\":" + std::to_string(m)));
    } else if (kind == "random-sphere") {
        json = dg::to_json(
            dg::gen_random_sphere(n, r, seed),
            config_block("gen", "\"kind\":\"random-sphere\",\"n\":" + std::to_string(n) +
                                    ",\"r\":" + dg::detail::fmt_double(r) +
                                    ",\"seed\":" + std::to_string(seed)));
    } else {
        throw dg::DomainError("unknown gen kind: " + kind);
    }
    emit(out, json);
    return 0;
}

// ---------- analyze ----------

int run_analyze(const std::string& input, double eps, const std::string& dimacs,
                const std::string& out) {
    dg::PointSet ps = dg::pointset_from_json(read_file(input));
    dg::DiameterGraph g = dg::build_diameter_graph(ps, eps);
    long long e = g.edge_count();

    std::string rep = "{" + config_block("analyze", "\"eps\":" + dg::detail::fmt_double(eps));
    rep += ",\"n\":" + std::to_string(g.n);
    rep += ",\"diameter\":" + dg::detail::fmt_double(g.diam);
    rep += ",\"edges\":" + std::to_string(e);
    rep += ",\"counts\":{";
    for (int l = 2; l <= 5; ++l) {
        if (l > 2) rep += ",";
        long long c = l <= g.n ? dg::count_cliques(g, l) : 0;
        rep += "\"" + std::to_string(l) + "\":" + std::to_string(c);
    }
    rep += "}";
    if (g.n <= 64)
        rep += ",\"chromatic\":" + std::to_string(dg::chromatic_number(g));
    else
        rep += ",\"chromatic\":null,\"cap_note\":\"chromatic skipped: n > 64\"";

    rep += ",\"bounds\":{";
    if (ps.sphere_radius) {
        bool ok = e <= 2ll * g.n - 2;
        rep += "\"sphere_edges\":{\"radius\":" + dg::detail::fmt_double(*ps.sphere_radius) +
               ",\"value\":" + std::to_string(2ll * g.n - 2) +
               ",\"ok\":" + (ok ? "true" : "false") + "},";
    }
    dg::TriangleBound tb = dg::triangle_bound_check(g);
    rep += "\"triangles\":{\"t\":" + std::to_string(tb.t) +
           ",\"value\":" + dg::detail::fmt_double(tb.bound) +
           ",\"ok\":" + (tb.ok ? "true" : "false") +
           ",\"diameter_graphs_only\":" + (tb.diameter_graphs_only ? "true" : "false") + "}";
    long long r4_bound = (static_cast<long long>(g.n) * g.n) / 4 + g.n;
    rep += ",\"r4_edges\":{\"value\":" + std::to_string(r4_bound) +
           ",\"ok\":" + (e <= r4_bound ? "true" : "false") + "}";
    rep += "}}\n";

    emit(out, rep);
    if (!dimacs.empty()) emit(dimacs, dg::to_dimacs(g));
    return 0;
}

// ---------- verify ----------

void print_report(const dg::TheoremReport& rep) {
    for (const auto& c : rep.claims) {
        std::cout << rep.id << "." << c.name << ": "
                  << (c.skipped ? "skip" : c.pass ? "pass" : "FAIL");
        if (!c.note.empty()) std::cout << " (" << c.note << ")";
        std::cout << "\n";
    }
}

int verify_theorem1(const std::string& input, int trials, int n_max, double r,
                    std::uint64_t seed, double eps, const std::string& csv) {
    if (!input.empty()) {
        dg::TheoremReport rep = dg::verify_sphere_bounds(dg::pointset_from_json(read_file(input)), eps);
        print_report(rep);
        return rep.all_pass() ? 0 : 1;
    }
    dg::SweepConfig cfg;
    cfg.trials = trials;
    cfg.n_max = n_max;
    cfg.r = r;
    cfg.seed = seed;
    cfg.eps = eps;
    auto rows = dg::run_sphere_sweep(cfg);
    if (!csv.empty()) emit(csv, dg::sweep_to_csv(rows));
    int failures = 0, skipped = 0;
    for (const auto& row : rows) {
        if (!row.report.hypothesis_ok) ++skipped;
        if (!row.report.all_pass()) ++failures;
    }
    std::cout << "theorem1 sweep: " << rows.size() << " instances, r=" << r << ", "
              << failures << " failures, " << skipped << " skipped\n";
    return failures == 0 ? 0 : 1;
}

int verify_schur_cmd(const std::string& input, int trials, int n_max, long long steps,
                     std::uint64_t seed, double eps) {
    if (!input.empty()) {
        dg::TheoremReport rep = dg::verify_schur(dg::pointset_from_json(read_file(input)), eps);
        print_report(rep);
        return rep.all_pass() ? 0 : 1;
    }
    auto reports = dg::annealed_schur_sweep(trials, n_max, steps, seed);
    int failures = 0;
    for (const auto& rep : reports)
        if (!rep.all_pass()) ++failures;
    std::cout << "schur sweep: " << reports.size() << " annealed instances, " << failures
              << " failures\n";
    return failures == 0 ? 0 : 1;
}

int verify_cover_cmd(const std::string& input, int trials, int n_max, double r,
                     std::uint64_t seed, double eps) {
    if (!input.empty()) {
        dg::CoverPipeline pipe = dg::run_cover_pipeline(dg::pointset_from_json(read_file(input)), eps);
        if (pipe.empty) {
            std::cout << "cover: nothing survives pruning\n";
            return 0;
        }
        bool ok = pipe.separation.ok() && pipe.drawing.planar_ok && pipe.drawing.edge_bound_ok;
        std::cout << "cover: separation "
                  << (pipe.separation.ok() ? "clean" : "violated") << ", drawing "
                  << (pipe.drawing.planar_ok ? "planar" : "crossed") << ", edges "
                  << pipe.cover.edges.size() << " = 2*" << pipe.pruned.edge_count() << "\n";
        return ok ? 0 : 1;
    }
    dg::SweepConfig cfg;
    cfg.trials = trials;
    cfg.n_max = n_max;
    cfg.r = r;
    cfg.seed = seed;
    cfg.eps = eps;
    auto rows = dg::run_sphere_sweep(cfg);
    int failures = 0;
    for (const auto& row : rows)
        for (const auto& c : row.report.claims)
            if (c.name == "cover" && !c.skipped && !c.pass) ++failures;
    std::cout << "cover sweep: " << rows.size() << " instances, " << failures << " failures\n";
    return failures == 0 ? 0 : 1;
}

int verify_kst(long long n, long long e, long long s, int graphs, std::uint64_t seed) {
    if (e < 0) e = dg::t2(n);
    bool cond = dg::kst_condition(n, e, s);
    std::cout << "kst condition n=" << n << " e=" << e << " s=" << s << ": "
              << (cond ? "true" : "false") << "\n";
    if (!cond) return 1;

    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> all_pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_pairs.emplace_back(i, j);
    int missing = 0;
    for (int t = 0; t < graphs; ++t) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(e); ++i) {
            std::size_t j = i + rng() % (all_pairs.size() - i);
            std::swap(all_pairs[i], all_pairs[j]);
        }
        std::vector<std::pair<int, int>> es(all_pairs.begin(), all_pairs.begin() + e);
        dg::DiameterGraph g = dg::graph_from_edges(static_cast<int>(n), es);
        if (!dg::find_Ks3(g, static_cast<int>(s))) ++missing;
    }
    std::cout << "kst search: " << graphs << " random graphs, " << missing
              << " without the bipartite witness\n";
    return missing == 0 ? 0 : 1;
}

int verify_all(int trials, std::uint64_t seed, double eps) {
    int rc = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "pass " : "FAIL ") << name << "\n";
        if (!ok) rc = 1;
    };

    bool formulas_ok = true;
    for (long long n = 5; n <= 200; ++n) {
        long long best = 0;
        for (long long a = 2; a <= n - 2; ++a)
            best = std::max(best, dg::lenz_triangles_formula(n, a));
        if (best != dg::F3(n)) formulas_ok = false;
        if (!(4 * dg::F2(n) >= n * n + 2 * n && 4 * dg::F2(n) <= n * n + 2 * n + 5))
            formulas_ok = false;
    }
    check("formula identities n=5..200", formulas_ok);

    int t1 = verify_theorem1("", trials, 12, 0.8, seed, eps, "");
    check("theorem1 sweep", t1 == 0);

    bool schur_ok = true;
    for (int n = 5; n <= 30; ++n) {
        if (!dg::verify_schur(dg::gen_clique4(n).realize(), eps).all_pass()) schur_ok = false;
        if (!dg::verify_schur(dg::gen_edge_optimal(n).realize(), eps).all_pass()) schur_ok = false;
    }
    if (!dg::verify_schur(dg::gen_simplex(), eps).all_pass()) schur_ok = false;
    check("schur generators", schur_ok);

    int kst_rc = verify_kst(52, -1, 7, 20, seed);
    check("kst n=52", kst_rc == 0);
    return rc;
}

// ---------- search / cover ----------

int run_search(int n, int l, long long steps, std::uint64_t seed, const std::string& space,
               double r, const std::string& out) {
    dg::SearchSpace sp = space == "sphere" ? dg::SearchSpace::sphere(r) : dg::SearchSpace::r4();
    dg::AnnealSchedule sched;
    sched.steps = steps;
    dg::SearchState st = dg::anneal_search(n, l, sp, sched, seed);
    std::cout << "best count " << st.best_count << " (n=" << n << ", l=" << l << ")\n";
    if (!out.empty())
        emit(out, dg::to_json(st.best,
                              config_block("search", "\"n\":" + std::to_string(n) +
                                                         ",\"l\":" + std::to_string(l) +
                                                         ",\"steps\":" + std::to_string(steps) +
                                                         ",\"seed\":" + std::to_string(seed))));
    return 0;
}

int run_cover(const std::string& input, double eps, const std::string& out) {
    dg::CoverPipeline pipe = dg::run_cover_pipeline(dg::pointset_from_json(read_file(input)), eps);
    std::string extra = config_block("cover", "\"eps\":" + dg::detail::fmt_double(eps));
    if (pipe.empty) {
        emit(out, dg::cover_to_json(pipe.cover, extra));
        std::cerr << "nothing survives pruning\n";
        return 0;
    }
    emit(out, dg::cover_to_json(pipe.cover, extra));
    bool ok = pipe.separation.ok() && pipe.drawing.planar_ok && pipe.drawing.edge_bound_ok;
    std::cerr << "planar_ok " << (pipe.drawing.planar_ok ? "true" : "false") << ", "
              << pipe.cover.edges.size() << " cover edges\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal diameter-graph toolkit"};
    app.set_version_flag("--version", dg::kVersion);
    app.require_subcommand(1);

    // formula
    long long from = 5, to = 12;
    std::string out;
    CLI::App* formula = app.add_subcommand("formula", "closed-form count table as CSV");
    formula->add_option("--from", from, "first n");
    formula->add_option("--to", to, "last n");
    formula->add_option("--out", out, "output path (default stdout)");

    // gen
    std::string kind;
    int n = 8, m = 4;
    double r = 0.8;
    std::uint64_t seed = 0;
    CLI::App* gen = app.add_subcommand("gen", "write a generated point set as JSON");
    gen->add_option("kind", kind,
                    "lenz-edges|lenz-triangles|lenz-4cliques|simplex|kmm|random-sphere")
        ->required();
    gen->add_option("--n", n, "point count");
    gen->add_option("--m", m, "part size for kmm");
    gen->add_option("--r", r, "sphere radius for random-sphere");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out, "output path (default stdout)");

    // analyze
    std::string input, dimacs;
    double eps = dg::tol::diameter_rel;
    CLI::App* analyze = app.add_subcommand("analyze", "counts, coloring, and bound checks");
    analyze->add_option("--input", input, "point set JSON")->required();
    analyze->add_option("--eps", eps, "diameter tolerance");
    analyze->add_option("--dimacs", dimacs, "also export the graph in DIMACS format");
    analyze->add_option("--out", out, "report path (default stdout)");

    // verify
    std::string suite, csv;
    int trials = 1000, n_max = 12, graphs = 100;
    long long kn = 52, ke = -1, ks = 7, steps = 1500;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "theorem1|schur|cover|kst|all")->required();
    verify->add_option("--input", input, "single instance instead of a sweep");
    verify->add_option("--trials", trials, "sweep size");
    verify->add_option("--n-max", n_max, "largest instance");
    verify->add_option("--r", r, "sphere radius");
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--eps", eps, "diameter tolerance");
    verify->add_option("--csv", csv, "write per-instance CSV");
    verify->add_option("--steps", steps, "annealing steps per instance");
    verify->add_option("--n", kn, "kst: vertex count");
    verify->add_option("--e", ke, "kst: edge count (default t2(n))");
    verify->add_option("--s", ks, "kst: part size");
    verify->add_option("--graphs", graphs, "kst: random graphs to test");

    // search
    int sl = 4;
    std::string space = "r4";
    long long search_steps = dg::AnnealSchedule{}.steps;
    CLI::App* search = app.add_subcommand("search", "simulated annealing for clique-rich sets");
    search->add_option("--n", n, "point count")->required();
    search->add_option("--l", sl, "clique size (2..4)");
    search->add_option("--steps", search_steps, "annealing steps");
    search->add_option("--seed", seed, "RNG seed");
    search->add_option("--space", space, "r4|sphere");
    search->add_option("--r", r, "sphere radius when --space sphere");
    search->add_option("--out", out, "write the best point set as JSON");

    // cover
    CLI::App* cover = app.add_subcommand("cover", "hemisphere projection double-cover pipeline");
    cover->add_option("--input", input, "point set JSON")->required();
    cover->add_option("--eps", eps, "diameter tolerance");
    cover->add_option("--out", out, "cover JSON path (default stdout)");

    try {
        app.parse(argc, argv);
        if (formula->parsed()) return run_formula(from, to, out);
        if (gen->parsed()) return run_gen(kind, n, m, r, seed, out);
        if (analyze->parsed()) return run_analyze(input, eps, dimacs, out);
        if (verify->parsed()) {
            if (suite == "theorem1")
                return verify_theorem1(input, trials, n_max, r, seed, eps, csv);
            if (suite == "schur") return verify_schur_cmd(input, trials, n_max, steps, seed, eps);
            if (suite == "cover") return verify_cover_cmd(input, trials, n_max, r, seed, eps);
            if (suite == "kst") return verify_kst(kn, ke, ks, graphs, seed);
            if (suite == "all") return verify_all(std::min(trials, 200), seed, eps);
            throw dg::DomainError("unknown suite: " + suite);
        }
        if (search->parsed()) return run_search(n, sl, search_steps, seed, space, r, out);
        if (cover->parsed()) return run_cover(input, eps, out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const dg::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dg::DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dg::OverlapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dg::SizeCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
