#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "solfree/harness.hpp"

using namespace solfree;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "solfree_harness_test";
    fs::create_directories(dir);
    return dir / name;
}

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST(Config, ParsesAllKeys) {
    const auto cfg = parse(
        "# comment\n"
        "task = density\n"
        "equation = x1 + x2 - x3 = 0\n"
        "primes = 5, 7,11\n"
        "eps = 0.2,0.5,1\n"
        "mode = heuristic\n"
        "seed = 42\n"
        "out = d.csv\n"
        "relaxed = false\n"
        "iterations = 10\n");
    EXPECT_EQ(cfg.primes, (std::vector<std::int64_t>{5, 7, 11}));
    EXPECT_EQ(cfg.eps.size(), 3u);
    EXPECT_EQ(cfg.eps[1], Ratio(1, 2));
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_FALSE(cfg.relaxed);
    EXPECT_EQ(cfg.mode, "heuristic");
}

TEST(Config, PrimeRange) {
    const auto cfg = parse("task=nondeg\nequation=1,1,1\nprime_range=1000,5000\nprime_count=3\nout=x.csv\n");
    EXPECT_EQ(cfg.primes, (std::vector<std::int64_t>{1009, 1013, 1019}));
    // both ends inclusive
    const auto small = parse("task=nondeg\nequation=1,1,1\nprime_range=2,11\nout=x.csv\n");
    EXPECT_EQ(small.primes, (std::vector<std::int64_t>{2, 3, 5, 7, 11}));
}

TEST(Config, ValidationErrors) {
    EXPECT_THROW(parse("task=density\nequation=1,1,-1\nprimes=5,9\neps=1\nout=a\n"), ConfigError);  // 9 not prime
    EXPECT_THROW(parse("task=density\nequation=1,1,-1\nprimes=5\neps=1\n"), ConfigError);         // no out
    EXPECT_THROW(parse("task=density\nequation=1,1\nprimes=5\neps=1\nout=a\n"), ConfigError);
    EXPECT_THROW(parse("task=density\nequation=1,1,-1\nprimes=5\neps=1\nout=a\nbogus=1\n"), ConfigError);
    EXPECT_THROW(parse("task=density\ntask=schur\n"), ConfigError);
    EXPECT_THROW(parse("task=fly\nequation=1,1,-1\nprimes=5\neps=1\nout=a\n"), ConfigError);
    EXPECT_THROW(parse("task=schur\nprimes=2063\neps=0.5\nout=a\n"), ConfigError);  // no graph
    EXPECT_THROW(parse("task=density\nequation=1,1,-1\nprimes=5\neps=-1\nout=a\n"), ConfigError);
    EXPECT_THROW(parse("just words\n"), ConfigError);
}

TEST(RunExperiment, SameSeedSameBytes) {
    auto cfg = parse("task=density\nequation=1,1,-1\nprimes=31,37\neps=0.5,1\nmode=heuristic\nseed=5\niterations=80\n"
                     "out=x\n");
    cfg.out = scratch("replay_a.csv");
    const auto a = run_experiment(cfg);
    cfg.out = scratch("replay_b.csv");
    const auto b = run_experiment(cfg);
    EXPECT_EQ(slurp(a.csv_path), slurp(b.csv_path));
    EXPECT_EQ(a.rows, 4u);
    const auto prov = slurp(a.provenance_path);
    EXPECT_NE(prov.find("seed=5"), std::string::npos);
    EXPECT_NE(prov.find("version="), std::string::npos);
    EXPECT_NE(prov.find("relaxed_constants=true"), std::string::npos);
    EXPECT_NE(prov.find("wall_seconds="), std::string::npos);
    EXPECT_FALSE(fs::exists(fs::path(a.csv_path.string() + ".tmp")));
}

TEST(RunExperiment, NondegenerateSweep) {
    auto cfg = parse("task=nondeg\nequation=1,1,1\nprimes=1009,2003,4001\nout=x\n");
    cfg.out = scratch("nondeg.csv");
    const auto res = run_experiment(cfg);
    EXPECT_EQ(res.rows, 3u);
    EXPECT_EQ(res.failed, 0u);
    std::istringstream lines(slurp(res.csv_path));
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, csv_header_construction());
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        EXPECT_NE(line.find(",true,true"), std::string::npos) << line;
    }
    EXPECT_EQ(rows, 3);
}

TEST(RunExperiment, SchurWithGraphFileAndFailedRow) {
    const auto graph = scratch("c5.txt");
    std::ofstream(graph) << to_text(cycle_graph(5));
    auto cfg = parse("task=schur\nprimes=1009,2063\neps=0.5\ngraph=g\nout=x\n");
    cfg.graph = graph;
    cfg.out = scratch("schur.csv");
    const auto res = run_experiment(cfg);
    EXPECT_EQ(res.rows, 2u);
    EXPECT_EQ(res.failed, 1u);  // 1009 < 2 * 4^5
    const auto csv = slurp(res.csv_path);
    EXPECT_NE(csv.find("FieldTooSmall"), std::string::npos);
    EXPECT_NE(csv.find("schur,\"1,1,-1\",2063,"), std::string::npos);
}

TEST(RunExperiment, LoadConfigResolvesRelativePaths) {
    const auto dir = scratch("cfgdir");
    fs::create_directories(dir);
    std::ofstream(dir / "run.cfg") << "task=density\nequation=1,1,-1\nprimes=5,7\neps=1\nout=out/d.csv\n";
    const auto cfg = load_config(dir / "run.cfg");
    EXPECT_EQ(cfg.out, dir / "out/d.csv");
    const auto res = run_experiment(cfg);
    EXPECT_TRUE(fs::exists(dir / "out/d.csv"));
    EXPECT_EQ(res.rows, 2u);
    EXPECT_THROW(load_config(dir / "missing.cfg"), ConfigError);
}
