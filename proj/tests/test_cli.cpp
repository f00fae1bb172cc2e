#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "diamgraph/extremal.hpp"
#include "json.hpp"

namespace dg = diamgraph;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

const std::string& work_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/diamcli-XXXXXX";
        const char* d = mkdtemp(tmpl);
        return std::string(d ? d : "/tmp");
    }();
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

RunResult run(const std::string& args) {
    std::string out_path = work_dir() + "/stdout.txt";
    std::string err_path = work_dir() + "/stderr.txt";
    std::string cmd = std::string(DIAMGRAPH_BIN) + " " + args + " >" + out_path +
                      " 2>" + err_path;
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string pentagon_json() {
    double r1 = 0.5 / std::sin(2.0 * M_PI / 5.0);
    double h = std::sqrt(0.64 - r1 * r1);
    dg::PointSet ps;
    ps.dim = 4;
    ps.sphere_radius = 0.8;
    for (int j = 0; j < 5; ++j) {
        double t = 2.0 * M_PI * j / 5.0;
        ps.points.push_back({r1 * std::cos(t), r1 * std::sin(t), h, 0.0});
    }
    return dg::to_json(ps);
}

}  // namespace

TEST(Cli, VersionAndBadUsage) {
    RunResult v = run("--version");
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("1.0.0"), std::string::npos);

    EXPECT_EQ(run("").code, 2);           // a subcommand is required
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("formula --no-such-flag").code, 2);
}

TEST(Cli, FormulaRowsAndRanges) {
    RunResult r8 = run("formula --from 8 --to 8");
    EXPECT_EQ(r8.code, 0);
    EXPECT_EQ(r8.out, "n,t2,F2,F3,U4\n8,16,21,20,24\n");

    RunResult r5 = run("formula --from 5 --to 5");
    EXPECT_EQ(r5.code, 0);
    EXPECT_EQ(r5.out, "n,t2,F2,F3,U4\n5,6,10,9,10\n");

    RunResult empty = run("formula --from 6 --to 5");
    EXPECT_EQ(empty.code, 0);
    EXPECT_EQ(empty.out, "n,t2,F2,F3,U4\n");

    EXPECT_EQ(run("formula --from 4 --to 8").code, 2);
    EXPECT_EQ(run("formula --from 5 --to 2000000").code, 2);

    std::string path = work_dir() + "/formula.csv";
    RunResult filed = run("formula --from 5 --to 12 --out " + path);
    EXPECT_EQ(filed.code, 0);
    EXPECT_NE(filed.err.find("wrote"), std::string::npos);
    std::string csv = slurp(path);
    EXPECT_EQ(csv.find("n,t2,F2,F3,U4\n"), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

TEST(Cli, GenSimplexThenAnalyze) {
    std::string path = work_dir() + "/simplex.json";
    EXPECT_EQ(run("gen simplex --out " + path).code, 0);

    RunResult an = run("analyze --input " + path);
    ASSERT_EQ(an.code, 0);
    nlohmann::json j = nlohmann::json::parse(an.out);
    EXPECT_EQ(j["n"], 5);
    EXPECT_EQ(j["edges"], 10);
    EXPECT_EQ(j["counts"]["2"], 10);
    EXPECT_EQ(j["counts"]["3"], 10);
    EXPECT_EQ(j["counts"]["4"], 5);
    EXPECT_EQ(j["counts"]["5"], 1);
    EXPECT_EQ(j["chromatic"], 5);
    EXPECT_NEAR(j["diameter"].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(j["bounds"]["r4_edges"]["value"], 11);
    EXPECT_TRUE(j["bounds"]["r4_edges"]["ok"].get<bool>());
    EXPECT_EQ(j["config"]["tool"], "diamgraph");

    std::string dimacs = work_dir() + "/simplex.col";
    EXPECT_EQ(run("analyze --input " + path + " --dimacs " + dimacs).code, 0);
    EXPECT_EQ(slurp(dimacs).find("p edge 5 10\n"), 0u);
}

TEST(Cli, GenLenzEmbedsTheSplitAndIsDeterministic) {
    std::string a = work_dir() + "/lenz_a.json";
    std::string b = work_dir() + "/lenz_b.json";
    EXPECT_EQ(run("gen lenz-edges --n 8 --out " + a).code, 0);
    EXPECT_EQ(run("gen lenz-edges --n 8 --out " + b).code, 0);
    std::string ja = slurp(a);
    EXPECT_EQ(ja, slurp(b));
    nlohmann::json j = nlohmann::json::parse(ja);
    EXPECT_EQ(j["lenz"]["a"], 5);
    EXPECT_EQ(j["points"].size(), 8u);

    std::string r1 = work_dir() + "/rand1.json";
    std::string r2 = work_dir() + "/rand2.json";
    EXPECT_EQ(run("gen random-sphere --n 6 --r 0.8 --seed 9 --out " + r1).code, 0);
    EXPECT_EQ(run("gen random-sphere --n 6 --r 0.8 --seed 9 --out " + r2).code, 0);
    EXPECT_EQ(slurp(r1), slurp(r2));

    EXPECT_EQ(run("gen no-such-kind").code, 2);
}

TEST(Cli, LenzTriangleRealizationOvershootsAtSix) {
    std::string path = work_dir() + "/tri6.json";
    EXPECT_EQ(run("gen lenz-triangles --n 6 --out " + path).code, 0);
    RunResult an = run("analyze --input " + path);
    ASSERT_EQ(an.code, 0);
    nlohmann::json j = nlohmann::json::parse(an.out);
    // the three-point part forms a unit triangle, one more than the
    // bipartite-plus-chords accounting suggests
    EXPECT_EQ(j["counts"]["3"], 13);
    EXPECT_EQ(j["edges"], 13);
}

TEST(Cli, AnalyzeRejectsBadInput) {
    std::string empty = work_dir() + "/empty.json";
    spit(empty, "");
    EXPECT_EQ(run("analyze --input " + empty).code, 2);
    EXPECT_EQ(run("analyze --input " + work_dir() + "/missing.json").code, 2);
    std::string malformed = work_dir() + "/malformed.json";
    spit(malformed, "{\"dim\":4,\"points\":[[0,0,0]]}");
    EXPECT_EQ(run("analyze --input " + malformed).code, 2);
}

TEST(Cli, VerifyTheorem1SingleInstance) {
    std::string path = work_dir() + "/pentagon.json";
    spit(path, pentagon_json());
    RunResult r = run("verify theorem1 --input " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("theorem1.edge_bound: pass"), std::string::npos);
    EXPECT_NE(r.out.find("theorem1.cover: pass"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyTheorem1SkipsBelowCriticalRadius) {
    std::string path = work_dir() + "/kmm.json";
    EXPECT_EQ(run("gen kmm --m 4 --out " + path).code, 0);
    RunResult r = run("verify theorem1 --input " + path);
    EXPECT_EQ(r.code, 0);  // skips are never failures
    EXPECT_NE(r.out.find("skip"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyTheorem1Sweep) {
    std::string csv = work_dir() + "/sweep.csv";
    RunResult r = run("verify theorem1 --trials 5 --n-max 6 --r 0.8 --seed 2 --csv " + csv);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("5 instances"), std::string::npos);
    EXPECT_NE(r.out.find("0 failures"), std::string::npos);
    EXPECT_EQ(slurp(csv).find("instance,seed,n,r,hypothesis_ok"), 0u);
}

TEST(Cli, VerifyKstSuite) {
    RunResult r = run("verify kst --n 52 --graphs 5 --seed 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("kst condition n=52 e=676 s=7: true"), std::string::npos);
    EXPECT_NE(r.out.find("0 without the bipartite witness"), std::string::npos);
}

TEST(Cli, CoverPipelineEndToEnd) {
    std::string penta = work_dir() + "/pentagon.json";
    spit(penta, pentagon_json());
    std::string out = work_dir() + "/cover.json";
    RunResult ok = run("cover --input " + penta + " --out " + out);
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.err.find("planar_ok true"), std::string::npos);
    nlohmann::json j = nlohmann::json::parse(slurp(out));
    EXPECT_EQ(j["n_base"], 5);
    EXPECT_EQ(j["vertices"].size(), 10u);
    EXPECT_EQ(j["edges"].size(), 10u);

    RunResult vc = run("verify cover --input " + penta);
    EXPECT_EQ(vc.code, 0);
    EXPECT_NE(vc.out.find("separation clean"), std::string::npos);
}

TEST(Cli, CoverRefusesTheCriticalRadius) {
    std::string path = work_dir() + "/kmm.json";
    EXPECT_EQ(run("gen kmm --m 4 --out " + path).code, 0);
    EXPECT_EQ(run("cover --input " + path).code, 3);
    EXPECT_EQ(run("verify cover --input " + path).code, 3);
}

TEST(Cli, SearchFindsTheSimplexCliques) {
    RunResult r = run("search --n 5 --l 4 --steps 100000 --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("best count 5 (n=5, l=4)"), std::string::npos);

    std::string out = work_dir() + "/best.json";
    RunResult filed = run("search --n 5 --l 2 --steps 20000 --seed 2 --out " + out);
    EXPECT_EQ(filed.code, 0);
    nlohmann::json j = nlohmann::json::parse(slurp(out));
    EXPECT_EQ(j["points"].size(), 5u);
    EXPECT_EQ(j["config"]["cmd"], "search");

    EXPECT_EQ(run("search --n 4 --l 2").code, 2);  // domain guard
}

TEST(Cli, VerifyAllSuite) {
    RunResult r = run("verify all --trials 30 --seed 4");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pass formula identities n=5..200"), std::string::npos);
    EXPECT_NE(r.out.find("pass theorem1 sweep"), std::string::npos);
    EXPECT_NE(r.out.find("pass schur generators"), std::string::npos);
    EXPECT_NE(r.out.find("pass kst n=52"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
