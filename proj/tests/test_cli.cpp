#include <doctest.h>

#include "edf/cli.hpp"
#include "edf/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

static Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "edf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = edf::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

static fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "edf_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

TEST_CASE("list") {
    const Outcome o = run({"list"});
    CHECK(o.code == 0);
    CHECK(o.out.find("toy-segment-disk") != std::string::npos);
    CHECK(o.out.find("ridge-ellipsoid-profile") != std::string::npos);
    std::istringstream lines(o.out);
    std::vector<std::string> names;
    for (std::string line; std::getline(lines, line);) names.push_back(line.substr(0, line.find(' ')));
    CHECK(names.size() == 9);
    CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("describe") {
    CHECK(run({"describe", "example-4-lasso"}).out.find("n=1001, p=3, R=5000") != std::string::npos);
    CHECK(run({"describe", "toy-segment-disk"}).out.find("y2 = 2 constant") != std::string::npos);
    CHECK(run({"describe", "convexity-example"}).out.find("sigma = 0.1") != std::string::npos);
    const Outcome bad = run({"describe", "unknown-name"});
    CHECK(bad.code == 2);
    CHECK(!bad.err.empty());
}

TEST_CASE("run: exit codes") {
    CHECK(run({"run", "unknown-name"}).code == 2);
    const Outcome io = run({"run", "toy-segment-disk", "--replicates", "100", "--out", "/nonexistent-dir/x.csv"});
    CHECK(io.code == 3);
    CHECK(!io.err.empty());
    CHECK(run({"run", "toy-segment-disk", "--replicates", "1"}).code == 1);
    CHECK(run({"run", "toy-segment-disk", "--format", "xml"}).code != 0);
    CHECK(run({}).code != 0);
}

TEST_CASE("estimator hard errors map to exit 4") {
    const edf::ScenarioInfo info{"stein-on-uniform", "test", [] { return std::string(); },
                                 [](const edf::RunOptions&) -> edf::ScenarioResult {
                                     throw edf::EstimatorError("Stein estimate requires gaussian noise");
                                 }};
    std::ostringstream out, err;
    CHECK(edf::cli::run_scenario(info, edf::cli::RunConfig{}, out, err) == 4);
    CHECK(out.str().empty());
    CHECK(err.str().find("gaussian") != std::string::npos);
}

TEST_CASE("run: stdout carries only csv") {
    const Outcome o = run({"run", "toy-segment-disk", "--seed", "1", "--replicates", "1000", "--out", "-"});
    CHECK(o.code == 0);
    CHECK(o.err.empty());
    CHECK(o.out.rfind(std::string(edf::kCsvHeader) + "\n", 0) == 0);
    CHECK(o.out.find('\r') == std::string::npos);
    std::istringstream lines(o.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 1 + 6);
}

TEST_CASE("run: repeated runs are byte identical, at any thread count") {
    const fs::path a = scratch("a.csv"), b = scratch("b.csv"), c = scratch("c.csv");
    CHECK(run({"run", "toy-segment-disk", "--seed", "1", "--replicates", "2000", "--out", a.string()}).code == 0);
    CHECK(run({"run", "toy-segment-disk", "--seed", "1", "--replicates", "2000", "--out", b.string()}).code == 0);
    CHECK(run({"run", "toy-segment-disk", "--seed", "1", "--replicates", "2000", "--threads", "4", "--out",
               c.string()})
              .code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == slurp(c));
}

TEST_CASE("run: lasso row count") {
    const Outcome o = run({"run", "example-4-lasso", "--replicates", "100", "--grid", "0.1,0.5,1.5"});
    CHECK(o.code == 0);
    std::istringstream lines(o.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    // 2 forms x 3 grid points x (stein {omega, df} + covariance {omega, df, train, pred})
    CHECK(count == 1 + 2 * 3 * 6);
}

TEST_CASE("run: json mirror") {
    const Outcome csv = run({"run", "convexity-example", "--replicates", "1000"});
    const Outcome json = run({"run", "convexity-example", "--replicates", "1000", "--format", "json"});
    CHECK(json.code == 0);
    const auto rows = nlohmann::json::parse(json.out);
    REQUIRE(rows.is_array());
    CHECK(rows.size() == 6);
    CHECK(rows[0]["scenario"] == "convexity-example");
    CHECK(rows[0].contains("stderr"));
    std::istringstream lines(csv.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(first.find(edf::format_double(rows[0]["estimate"].get<double>())) != std::string::npos);
}

TEST_CASE("shortest round-trip floats") {
    CHECK(edf::format_double(0.1) == "0.1");
    CHECK(edf::format_double(1.0) == "1");
    CHECK(edf::format_double(1e-300) == "1e-300");
    for (double v : {1.0 / 3.0, 2.0 / 7.0, 123456.789e-12}) CHECK(std::stod(edf::format_double(v)) == v);
}

struct Golden {
    const char* file;
    std::vector<std::string> args;
};

static const std::vector<Golden> kGolden{
    {"toy-segment-disk.csv", {"run", "toy-segment-disk", "--seed", "1", "--replicates", "1000"}},
    {"toy-segment-disk-gaussian.csv", {"run", "toy-segment-disk-gaussian", "--seed", "1", "--replicates", "1000"}},
    {"convexity-example.csv", {"run", "convexity-example", "--seed", "1", "--replicates", "1000"}},
    {"example-4-lasso.csv", {"run", "example-4-lasso", "--seed", "1", "--replicates", "200", "--grid", "0.1,0.5,1.5"}},
    {"ridge-ellipsoid-profile.csv",
     {"run", "ridge-ellipsoid-profile", "--seed", "1", "--replicates", "1000", "--grid", "1,2,2.5,10"}},
    {"ridge-closed-form.csv", {"run", "ridge-closed-form", "--seed", "1", "--replicates", "100"}},
    {"hetero-ridge-check.csv", {"run", "hetero-ridge-check", "--seed", "1", "--replicates", "100"}},
    {"genridge-monotonicity.csv", {"run", "genridge-monotonicity", "--seed", "1"}},
};

TEST_CASE("golden files at seed 1") {
    for (const auto& g : kGolden) {
        const std::string file = g.file;
        CAPTURE(file);
        const fs::path path = fs::path(EDF_GOLDEN_DIR) / g.file;
        const Outcome o = run(g.args);
        REQUIRE(o.code == 0);
        if (std::getenv("EDF_UPDATE_GOLDEN")) {
            std::ofstream(path, std::ios::binary) << o.out;
            continue;
        }
        REQUIRE(fs::exists(path));
        CHECK(o.out == slurp(path));
    }
}

TEST_CASE("installed binary matches the in-process front end") {
    const fs::path out = scratch("bin.csv");
    const std::string cmd = std::string(EDF_CLI_PATH) + " run toy-segment-disk --seed 1 --replicates 1000 --out " +
                            out.string();
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(slurp(out) == slurp(fs::path(EDF_GOLDEN_DIR) / "toy-segment-disk.csv"));
    const int status = std::system((std::string(EDF_CLI_PATH) + " run unknown-name 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
