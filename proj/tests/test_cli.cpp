#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// end-to-end checks against the built binary
#ifndef EXONUM_CLI_PATH
#error "EXONUM_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(EXONUM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return RunResult{WEXITSTATUS(status), out};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> ls;
    std::istringstream in(s);
    std::string l;
    while (std::getline(in, l)) ls.push_back(l);
    return ls;
}

}  // namespace

TEST_CASE("seq: golden rows and header") {
    auto r = run("seq --name s --from 0 --to 20");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 22);
    CHECK(ls[0] == "n,value");
    CHECK(ls[1] == "0,0");
    CHECK(ls[3] == "2,2");
    CHECK(ls[21] == "20,10");  // A(20)-A(19) = 117-107
    auto rf = run("seq --name sF --from 0 --to 19");
    auto lf = lines_of(rf.out);
    CHECK(lf[1] == "0,1");
    CHECK(lf[10] == "9,8");  // A_F(9)-A_F(8) = 45-37
    // single row range
    auto r1 = run("seq --name s --from 7 --to 7");
    REQUIRE(lines_of(r1.out).size() == 2);
    CHECK(lines_of(r1.out)[1] == "7,5");
}

TEST_CASE("seq: oracle and recurrence agree over the CLI") {
    auto a = run("seq --name s --from 1 --to 200 --method oracle");
    auto b = run("seq --name s --from 1 --to 200 --method recurrence");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("decomp: goldens, table mode, errors") {
    auto r = run("decomp 3dec 42 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"coeffs\"") != std::string::npos);
    CHECK(r.out.find("-6") != std::string::npos);
    auto t = run("decomp bdec --from 3 --to 8 --table");
    auto tl = lines_of(t.out);
    REQUIRE(tl.size() == 7);
    CHECK(tl[1].substr(0, 8) == "3,1,-1,7");
    CHECK(tl[6].rfind("37") == tl[6].size() - 2);
    auto e = run("decomp 3dec 1");
    CHECK(e.exit_code == 2);
    CHECK(e.out.empty());  // diagnostics on stderr only
}

TEST_CASE("fluct: grid shape and anchor values") {
    auto r = run("fluct H --grid 4");
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "x,value");
    CHECK(ls[1] == "0,1");
    CHECK(ls[3] == "1,1");
    auto p = run("fluct phi --grid 1024 --depth 20");
    auto pl = lines_of(p.out);
    REQUIRE(pl.size() == 1025);
    for (std::size_t i = 1; i < pl.size(); ++i) {
        double v = std::atof(pl[i].substr(pl[i].find(',') + 1).c_str());
        CHECK(v > 0.95);
        CHECK(v < 1.1);
    }
}

TEST_CASE("seq: summatory dumps") {
    auto r = run("seq --name A --from 0 --to 20");
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 22);
    CHECK(ls[21] == "20,117");
    auto naive = run("seq --name AF --from 0 --to 200 --method naive");
    auto fast = run("seq --name AF --from 0 --to 200 --method fast");
    CHECK(naive.out == fast.out);
}

TEST_CASE("fluct: single-point alpha and precision exit code") {
    auto r = run("fluct phin --n 8 --alpha pi-3");
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.out).size() == 2);
    auto e = run("fluct phin --n 60 --alpha 0.123456 --precision-bits 64");
    CHECK(e.exit_code == 4);
    auto q = run("fluct phin --n 6 --alpha 1/3");
    CHECK(q.exit_code == 0);
}

TEST_CASE("capacity exit code") {
    auto r = run("seq --name s --from 40000000 --to 40000000 --method oracle");
    CHECK(r.exit_code == 3);
}

TEST_CASE("usage errors exit 2, help exits 0") {
    CHECK(run("nosuchcommand").exit_code == 2);
    CHECK(run("seq --name s").exit_code == 2);         // missing required range
    CHECK(run("fluct phi --grid -5").exit_code == 2);  // validator
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("determinism: identical invocations are byte-identical") {
    for (const char* cmd :
         {"fluct psi --grid 96 --depth 14", "conjecture trib --nmax 12",
          "seq --name sk --k 3 --from 0 --to 100", "fluct GT --nmax 10"}) {
        auto a = run(cmd);
        auto b = run(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("fluct psi: dataset shape at depth 22") {
    auto r = run("fluct psi --grid 512 --depth 22");
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 513);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        double v = std::atof(ls[i].substr(ls[i].find(',') + 1).c_str());
        CHECK(v > 0.85);
        CHECK(v < 1.15);
    }
}

TEST_CASE("conjecture basek full-range pass") {
    auto r = run("conjecture basek --k 3 --nmax 200");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"result\": \"pass\"") != std::string::npos);
}

TEST_CASE("conjecture reports: JSON result fields") {
    auto r = run("conjecture basek --k 3 --nmax 50");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"result\": \"pass\"") != std::string::npos);
    CHECK(r.out.find("\"counterexample\": null") != std::string::npos);
    auto q = run("conjecture quad --nmax 10");
    CHECK(q.exit_code == 0);
    CHECK(q.out.find("no-fit") != std::string::npos);  // underdetermined horizon
}

TEST_CASE("--out writes the same bytes as stdout") {
    auto direct = run("seq --name s --from 0 --to 50");
    std::string path = "/tmp/exonum_cli_out_test.csv";
    auto redirected = run("seq --name s --from 0 --to 50 --out " + path);
    CHECK(redirected.exit_code == 0);
    CHECK(redirected.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("env overrides with EXONUM_ prefix") {
    auto grid_flag = run("fluct H --grid 8");
    auto grid_env = run("fluct H", "EXONUM_GRID=8");
    CHECK(grid_env.exit_code == 0);
    CHECK(grid_env.out == grid_flag.out);
    auto fmt_env = run("decomp 3dec 42", "EXONUM_FORMAT=json");
    CHECK(fmt_env.out.find("\"basis\": \"3\"") != std::string::npos);
}

TEST_CASE("config file key=value") {
    std::string path = "/tmp/exonum_cli_cfg_test.ini";
    {
        std::ofstream f(path);
        f << "grid=8\nformat=csv\n";
    }
    auto a = run("fluct H --config " + path);
    auto b = run("fluct H --grid 8");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    std::remove(path.c_str());
}
