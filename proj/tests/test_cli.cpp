#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "genring/cli.hpp"
#include "json.hpp"

using namespace genring;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "genring");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli((int)argv.size(), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("genring_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_rows(const std::string& tsv) {
    int n = 0;
    std::istringstream in(tsv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++n;
    return n - 1;  // header
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("ring specifications") {
    auto d = parse_ring_spec("Delta:W=2");
    CHECK(d.name == "Delta");
    REQUIRE(d.args.size() == 1);
    CHECK(d.args[0] == std::pair<std::string, std::string>{"W", "2"});
    auto m = parse_ring_spec("GZmod:6");
    CHECK(m.args[0] == std::pair<std::string, std::string>{"", "6"});
    CHECK(parse_ring_spec("FM:/tmp/a:b.json").args[0].second == "/tmp/a:b.json");
    CHECK(parse_ring_spec("AN:30").args[0].second == "30");
    CHECK_THROWS_AS(parse_ring_spec(""), ParseError);
    CHECK_THROWS_AS(parse_ring_spec("GZ:"), ParseError);
    CHECK_THROWS_AS(parse_ring_spec("Delta:W="), ParseError);
    CHECK_THROWS_AS(make_ring(parse_ring_spec("Nope")), ParseError);
    CHECK_THROWS_AS(make_ring(parse_ring_spec("AN:12")), ParseError);
    CHECK_THROWS_AS(make_ring(parse_ring_spec("GZ:3")), ParseError);
    CHECK(make_ring(parse_ring_spec("Upsilon")).tree);
    CHECK(make_ring(parse_ring_spec("GZmod:6")).ideals);
    CHECK_FALSE(make_ring(parse_ring_spec("GN")).ideals);
}

TEST_CASE("axioms on G(Z)") {
    auto r = run({"axioms", "--ring", "GZ", "--trials", "500"});
    CHECK(r.code == kOk);
    CHECK(r.out.rfind("# genring 1 axioms", 0) == 0);
    CHECK(r.out.find("associativity\t500\t500\t-") != std::string::npos);
    CHECK(r.out.find("self_adjoint\t500\t500\t-") != std::string::npos);
}

TEST_CASE("axioms report failures with exit 1") {
    auto r = run({"axioms", "--ring", "Delta", "--trials", "100", "--max-shape", "3"});
    CHECK(r.code == kFailure);
    CHECK(r.out.find("self_adjoint\t100\t") != std::string::npos);
}

TEST_CASE("output is deterministic for a fixed seed") {
    auto a = run({"--seed", "7", "axioms", "--ring", "Oeta", "--trials", "50"});
    auto b = run({"axioms", "--ring", "Oeta", "--trials", "50", "--seed", "7"});
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
    auto j = run({"--format", "json", "axioms", "--ring", "GZmod:6", "--trials", "30"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["version"] == "genring 1");
    CHECK(parsed["command"] == "axioms");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == kUsage);
    CHECK(run({"axioms", "--ring", "GZ", "--bogus"}).code == kUsage);
    CHECK(run({"axioms"}).code == kUsage);
    CHECK(run({"axioms", "--ring", "Nope"}).code == kUsage);
    CHECK(run({"--format", "xml", "div", "2"}).code == kUsage);
    CHECK(run({"div", "0"}).code == kUsage);
    CHECK(run({"div", "abc"}).code == kUsage);
    CHECK(run({"spec", "--ring", "GN"}).code == kUsage);
    CHECK(run({"nabla"}).code == kUsage);
    CHECK(run({"ideal", "--ring", "GZ", "frobnicate", "2"}).code == kUsage);
}

TEST_CASE("trees and fibers") {
    auto t = run({"trees", "4"});
    CHECK(t.code == kOk);
    CHECK(count_rows(t.out) == 9);
    auto f = run({"nabla", "--fiber", "1"});
    CHECK(f.code == kOk);
    CHECK(count_rows(f.out) == 1);
    CHECK(f.out.find("# classes 1, plus classes 1") != std::string::npos);
    auto capped = run({"trees", "5", "--node-cap", "4"});
    CHECK(capped.code == kUnknown);
}

TEST_CASE("self-adjoint equivalence verdicts") {
    const std::string a = "{top=(e0 ()()) | x1=(e1 ()()) | sigma=[1->(1,1), 2->(1,2)]}";
    const std::string b = "{top=(e1 ()()) | x1=(e0 ()()) | sigma=[1->(1,1), 2->(1,2)]}";
    const std::string c = "{top=() | x1=() | sigma=[1->(1,1)]}";
    CHECK(run({"nabla", "--equiv", a, b}).code == kOk);
    CHECK(run({"nabla", "--equiv", a, c}).code == kFailure);
}

TEST_CASE("divisors") {
    auto r = run({"div", "12/5"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("2\t2\n") != std::string::npos);
    CHECK(r.out.find("3\t1\n") != std::string::npos);
    CHECK(r.out.find("5\t-1\n") != std::string::npos);
    CHECK(r.out.find("eta\t-log(12/5)\n") != std::string::npos);

    fs::path dir = scratch_dir("div");
    std::ofstream(dir / "ok.json")
        << R"({"levels":[2,6,30],"components":{"2":[2,2,2],"3":[null,1,1],"5":[null,null,-1],"eta":["12/5","12/5","12/5"]}})";
    std::ofstream(dir / "rising.json") << R"({"levels":[2,6],"components":{"2":[1,2]}})";
    auto ok = run({"divcheck", (dir / "ok.json").string()});
    CHECK(ok.code == kOk);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(j["monotone"] == true);
    CHECK(j["limit"]["5"] == -1);
    CHECK(run({"divcheck", (dir / "rising.json").string()}).code == kFailure);
    CHECK(run({"divcheck", (dir / "missing.json").string()}).code == kUsage);
}

TEST_CASE("spectra and ideals") {
    auto s = run({"spec", "--ring", "FzN"});
    CHECK(s.code == kOk);
    CHECK(s.out.find("digraph spec") != std::string::npos);
    CHECK(s.out.find("p1 [label=\"(z)\", shape=box];") != std::string::npos);
    auto z6 = run({"spec", "--ring", "GZmod:6"});
    CHECK(z6.out.find("p1") != std::string::npos);
    CHECK(z6.out.find("p2") == std::string::npos);

    CHECK(run({"ideal", "--ring", "GZ", "sum", "4", "6"}).out.find("sum\t(2)") != std::string::npos);
    CHECK(run({"ideal", "--ring", "GZmod:4", "radical", "0"}).out.find("radical\t(2)") != std::string::npos);
    CHECK(run({"ideal", "--ring", "GZ", "contains", "3", "9"}).code == kOk);
    CHECK(run({"ideal", "--ring", "GZ", "contains", "3", "10"}).code == kFailure);
    CHECK(run({"ideal", "--ring", "FzN", "prime", "z"}).code == kOk);

    fs::path dir = scratch_dir("fm");
    std::ofstream(dir / "tz.json")
        << R"({"name":"Tz","elements":["0","1","z","z2"],"table":[[0,0,0,0],[0,1,2,3],[0,2,3,3],[0,3,3,3]]})";
    std::string fm = "FM:" + (dir / "tz.json").string();
    auto list = run({"ideal", "--ring", fm, "list"});
    CHECK(list.code == kOk);
    CHECK(list.out.find("{0} {0, z2} {0, z, z2} {0, 1, z, z2}") != std::string::npos);
    CHECK(run({"ideal", "--ring", fm, "stable", "z"}).code == kOk);
    CHECK(run({"axioms", "--ring", fm, "--trials", "100"}).code == kOk);
}

TEST_CASE("golden regeneration") {
    fs::path dir = scratch_dir("golden");
    auto first = run({"golden", "--dir", dir.string()});
    CHECK(first.code == kOk);
    CHECK(first.out.find("oriented_6.tsv\tcreated") != std::string::npos);
    CHECK(fs::exists(dir / "fiber_3.tsv"));

    auto again = run({"golden", "--dir", dir.string()});
    CHECK(again.code == kOk);
    CHECK(again.out.find("created") == std::string::npos);

    std::ofstream(dir / "oriented_3.tsv", std::ios::app) << "tampered\n";
    auto diff = run({"golden", "--dir", dir.string()});
    CHECK(diff.code == kFailure);
    CHECK(diff.out.find("oriented_3.tsv\tdiffers") != std::string::npos);
    CHECK(slurp(dir / "oriented_3.tsv").find("tampered") != std::string::npos);
    CHECK(run({"golden", "--dir", dir.string(), "--update"}).code == kOk);
    CHECK(run({"golden", "--dir", dir.string()}).code == kOk);

    fs::path low = scratch_dir("golden_low");
    auto capped = run({"golden", "--dir", low.string(), "--node-cap", "4"});
    CHECK(capped.code == kUnknown);
    CHECK(capped.out.find("incomplete") != std::string::npos);
    CHECK_FALSE(fs::exists(low / "oriented_6.tsv"));
}

TEST_CASE("golden directory from the environment") {
    fs::path dir = scratch_dir("golden_env");
    setenv("GENRING_GOLDEN_DIR", dir.string().c_str(), 1);
    auto r = run({"golden"});
    unsetenv("GENRING_GOLDEN_DIR");
    CHECK(r.code == kOk);
    CHECK(fs::exists(dir / "oriented_0.tsv"));
}

TEST_CASE("frozen goldens are current") {
    auto r = run({"golden", "--dir", GENRING_GOLDEN_DIR_SRC});
    CHECK(r.code == kOk);
    CHECK(r.out.find("differs") == std::string::npos);
    CHECK(r.out.find("created") == std::string::npos);
}

TEST_CASE("the installed binary matches the in-process entry point") {
    fs::path dir = scratch_dir("binary");
    std::string cmd = std::string(GENRING_CLI_PATH) + " div 12/5 > " + (dir / "out.tsv").string();
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(slurp(dir / "out.tsv") == run({"div", "12/5"}).out);
    std::string bad = std::string(GENRING_CLI_PATH) + " --nope 2>/dev/null";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == kUsage);
}

}
