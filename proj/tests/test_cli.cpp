#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Outcome {
    int exit_code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("gmseq_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sample(const std::string& name) { return std::string(GMSEQ_SAMPLES_DIR) + "/" + name; }

/// Runs the CLI with `args`; `env` is prefixed to the command line.
Outcome gmseq(const std::string& args, const std::string& env = "") {
    const fs::path out = scratch() / "out.txt", err = scratch() / "err.txt";
    const std::string cmd = env + " '" + std::string(GMSEQ_CLI_PATH) + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

} // namespace

TEST(Cli, ComputeOnPrincipalIdeal) {
    const auto r = gmseq("-i " + sample("principal.json"));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = r.report();
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["task"], "compute");
    EXPECT_EQ(j["result"]["sequence"]["c"], json({0, 1, 0}));
    EXPECT_EQ(j["result"]["diagnostics"]["q"], 1);
    EXPECT_EQ(j["result"]["diagnostics"]["het"], 1);
    EXPECT_FALSE(j.contains("timings"));
}

TEST(Cli, VerifyFormulaOnPrincipalIdealMatches) {
    const auto r = gmseq("-t verify-formula -i " + sample("principal.json"));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    for (const auto& t : r.report()["result"]["terms"]) EXPECT_EQ(t["verdict"], "match");
}

TEST(Cli, CheckReduction) {
    const auto a = gmseq("-t check-reduction -i " + sample("reduction.json"));
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.report()["result"]["verdict"], "reduction");
    EXPECT_EQ(a.report()["result"]["direct"]["reduced_at"], 1);
    const auto b = gmseq("-t check-reduction -i " + sample("not_reduction.json"));
    ASSERT_EQ(b.exit_code, 0) << b.err;
    EXPECT_EQ(b.report()["result"]["verdict"], "not-reduction");
    EXPECT_EQ(b.report()["result"]["consistent"], true);
}

TEST(Cli, ExitCodeMatrix) {
    EXPECT_EQ(gmseq("-t verify-formula -i " + sample("divisor_excess.json")).exit_code, 1);
    EXPECT_EQ(gmseq("-t verify-formula -i " + sample("star_fails.json")).exit_code, 2);
    EXPECT_EQ(gmseq("-t verify-formula -i " + sample("binomial.json")).exit_code, 2);
    const auto bad = gmseq("-i " + sample("bad_variable.json"));
    EXPECT_EQ(bad.exit_code, 3);
    EXPECT_NE(bad.err.find("input error"), std::string::npos) << bad.err;
    EXPECT_NE(bad.err.find("/ideals/I/"), std::string::npos) << bad.err;
    const auto cap = gmseq("-i " + sample("principal.json") + " --umax 1000 --grow-cap 64");
    EXPECT_EQ(cap.exit_code, 4);
    EXPECT_NE(cap.err.find("resource-limit"), std::string::npos) << cap.err;
    EXPECT_EQ(gmseq("-t check-reduction -i " + sample("principal.json")).exit_code, 3);
    EXPECT_EQ(gmseq("-t nonsense -i " + sample("principal.json")).exit_code, 3);
    EXPECT_EQ(gmseq("-i /nonexistent/problem.json").exit_code, 3);
}

TEST(Cli, MalformedInputsAreInputErrors) {
    const auto broken = write("broken.json", "{\"schema\": 1, ");
    EXPECT_EQ(gmseq("-i " + broken.string()).exit_code, 3);
    const auto unknown = write("unknown.json", R"({"schema":1,"ring":{"variables":["x"]},"ideals":{"I":["x"]},"extra":0})");
    const auto r = gmseq("-i " + unknown.string());
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_NE(r.err.find("extra"), std::string::npos) << r.err;
    const auto nonhomog = write("nonhomog.json", R"({"schema":1,"ring":{"variables":["x","y"]},"ideals":{"I":["x+y^2"]}})");
    EXPECT_EQ(gmseq("-i " + nonhomog.string()).exit_code, 3);
}

TEST(Cli, SuperficialIsRevalidated) {
    const auto r = gmseq("-t superficial -i " + sample("hypersurface_module.json"));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const json j = r.report()["result"];
    EXPECT_EQ(j["revalidated"], true);
    for (const auto& e : j["candidate"]["evidence"]) EXPECT_EQ(e["passed"], true) << e.dump();
}

TEST(Cli, ReportsAreByteIdenticalAcrossRunsAndJobCounts) {
    for (const char* task : {"compute", "verify-formula", "superficial"}) {
        const std::string args = std::string("-t ") + task + " -i " + sample("hypersurface_module.json");
        const auto a = gmseq(args), b = gmseq(args), c = gmseq(args + " --jobs 3");
        EXPECT_EQ(a.out, b.out) << task;
        EXPECT_EQ(a.out, c.out) << task;
    }
}

TEST(Cli, StdinInputAndTableFormat) {
    const auto a = gmseq("-i - < " + sample("principal.json"));
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, gmseq("-i " + sample("principal.json")).out);
    const auto t = gmseq("--format table -i " + sample("principal.json"));
    ASSERT_EQ(t.exit_code, 0) << t.err;
    EXPECT_NE(t.out.find("result.sequence.c"), std::string::npos) << t.out;
}

TEST(Cli, FlagsOverrideEnvironmentOverrideFile) {
    const auto file = write("params.json",
                            R"({"schema":1,"ring":{"variables":["x","y"]},"ideals":{"I":["x"]},"parameters":{"window_width":4,"nmax":7}})");
    const auto a = gmseq("-i " + file.string());
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.report()["settings"]["window_width"], 4);
    EXPECT_EQ(a.report()["settings"]["nmax"], 7);
    const auto b = gmseq("-i " + file.string(), "GMSEQ_WINDOW_WIDTH=5");
    EXPECT_EQ(b.report()["settings"]["window_width"], 5);
    EXPECT_EQ(b.report()["settings"]["nmax"], 7);
    const auto c = gmseq("-i " + file.string() + " --window-width 6", "GMSEQ_WINDOW_WIDTH=5");
    EXPECT_EQ(c.report()["settings"]["window_width"], 6);
    EXPECT_EQ(gmseq("-i " + file.string(), "GMSEQ_UMAX=oops").exit_code, 3);
}

TEST(Cli, CharacteristicOverride) {
    const auto a = gmseq("-i " + sample("principal.json") + " --char 7");
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.report()["input"]["ring"]["characteristic"], 7);
    EXPECT_EQ(gmseq("-i " + sample("principal.json") + " --char 6").exit_code, 3);
}

TEST(Cli, TimingsOnlyOnRequest) {
    const auto r = gmseq("--timings -i " + sample("principal.json"));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_TRUE(r.report().contains("timings"));
}

TEST(Cli, CorpusIsDeterministicAndRoundTrips) {
    const std::string args = "-t corpus --count 6 --nvars 2 --max-degree 2 --seed 9";
    const auto a = gmseq(args), b = gmseq(args);
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const json problems = a.report()["problems"];
    ASSERT_EQ(problems.size(), 6u);
    for (std::size_t s = 0; s < problems.size(); ++s) {
        for (const auto& g : problems[s]["ideals"]["I"]) {
            const std::string m = g;
            EXPECT_TRUE(m == "x" || m == "y" || m == "x^2" || m == "x*y" || m == "y^2") << m;
        }
        const auto p = write("corpus_" + std::to_string(s) + ".json", problems[s].dump());
        const auto r = gmseq("-i " + p.string());
        EXPECT_EQ(r.exit_code, 0) << problems[s].dump() << r.err;
    }
    const auto pairs = gmseq("-t corpus --kind pair --count 4 --seed 2");
    ASSERT_EQ(pairs.exit_code, 0) << pairs.err;
    for (const auto& doc : pairs.report()["problems"]) {
        const auto p = write("pair.json", doc.dump());
        const auto r = gmseq("-t check-reduction -i " + p.string());
        EXPECT_TRUE(r.exit_code == 0 || r.exit_code == 2) << doc.dump() << r.err;
    }
    EXPECT_EQ(gmseq("-t corpus --nvars 9").exit_code, 3);
}

TEST(Cli, Version) {
    const auto r = gmseq("--version");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("1.0.0"), std::string::npos);
}
