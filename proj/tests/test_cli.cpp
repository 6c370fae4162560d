#include <cstdio>
#include <cstdlib>
#include <regex>
#include <string>

#include "doctest.h"

namespace {

std::string cli_path() {
    if (const char* p = std::getenv("MBSERIES_BIN")) return p;
    return "./mbseries";  // ctest runs in the build directory
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// JSON output is deterministic except for the timing field.
std::string strip_timing(const std::string& s) {
    static const std::regex timing("\"timing_ms\": *[0-9]+");
    return std::regex_replace(s, timing, "\"timing_ms\": 0");
}

}  // namespace

TEST_CASE("bernoulli subcommand reproduces the exact value") {
    auto r = run("bernoulli --family C --rank 2 --lattice coroot-C "
                 "--exp \"e1=2,e2=1,e1+e2=1,e1-e2=1\" --at 1/15,1/30");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"result\": \"-276037/5832000000\"") != std::string::npos);
    CHECK(r.out.find("\"result_kind\": \"rational\"") != std::string::npos);
}

TEST_CASE("positional exponents require an explicit order") {
    auto bad = run("bernoulli --family C --rank 2 --exp-list 2,1,1,1 --at 1/15,1/30");
    CHECK(bad.exit_code == 1);
    auto good =
        run("bernoulli --family C --rank 2 --exp-list 2,1,1,1 --order canonical --at 1/15,1/30");
    CHECK(good.exit_code == 0);
    CHECK(good.out.find("-276037/5832000000") != std::string::npos);
}

TEST_CASE("witten-volume subcommand") {
    auto r = run("witten-volume --family A --rank 2 --genus 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"result\": \"1/20160\"") != std::string::npos);
}

TEST_CASE("zeta and mzv emit pi values") {
    auto z = run("zeta --family A --rank 2 --all 2");
    CHECK(z.exit_code == 0);
    CHECK(z.out.find("\"coeff\": \"1/2835\"") != std::string::npos);
    CHECK(z.out.find("\"pi_power\": 6") != std::string::npos);
    auto m = run("mzv --depth 2 --weight 4");
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("\"coeff\": \"1/113400\"") != std::string::npos);
    CHECK(m.out.find("\"pi_power\": 8") != std::string::npos);
    CHECK(m.out.find("\"result_kind\": \"pi_value\"") != std::string::npos);
}

TEST_CASE("verlinde subcommand") {
    auto r = run("verlinde-su2 --t 1/4 --level 4 --genus 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"result\": \"3\"") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage and domain errors") {
    CHECK(run("bernoulli --family Q --rank 2 --all 2 --at 0,0").exit_code == 1);
    CHECK(run("bernoulli --family A --rank 2 --all 2 --at 0,0,0 --mode value").exit_code == 2);
    CHECK(run("witten-volume --family A --rank 2 --genus 1").exit_code == 2);
    CHECK(run("bernoulli --family A --rank 2 --exp \"e1-e2=2,e1-e2=1\" --at 0,0,0").exit_code ==
          1);
    CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("output is deterministic apart from timing") {
    std::string args = "bernoulli --family A --rank 2 --all 2 --at 1/5,1/7,-12/35";
    auto a = run(args), b = run(args);
    CHECK(strip_timing(a.out) == strip_timing(b.out));
    CHECK(a.out.find("\"query\"") != std::string::npos);
}

TEST_CASE("tope and step polynomial output") {
    auto t = run("tope-poly --family C --rank 1 --all 2 --at 1/3");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("\"result_kind\": \"polynomial\"") != std::string::npos);
    CHECK(t.out.find("-1/12") != std::string::npos);
    auto s = run("step-poly --family C --rank 2 --exp-list 2,1,1,1 --order canonical");
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("\"result_kind\": \"step_polynomial\"") != std::string::npos);
    // Oversized inline output must be redirected to a file.
    auto big = run("step-poly --family C --rank 2 --all 2 --max-terms 1");
    CHECK(big.exit_code == 1);
}

TEST_CASE("oracle-check reports a pass") {
    auto r = run("oracle-check --family C --rank 1 --all 2 --radius 20000 --rel-tol 1e-3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    CHECK(r.out.find("\"result_kind\": \"report\"") != std::string::npos);
}
