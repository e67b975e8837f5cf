#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "modfunctor/cli.hpp"

using namespace modfunctor;
using namespace modfunctor::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "modfunctor");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string path(const std::string& name)
{
    return (data_dir() / name).string();
}

std::string write_temp(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("modfunctor_cli_" + name);
    std::ofstream(p) << text;
    return p.string();
}

std::string corrupted_fibonacci()
{
    auto raw = load_raw("fibonacci.md");
    raw.fusion(1, 1, 1) = 0;
    return write_temp("fib_corrupt.md", write_modular_data(raw));
}

} // namespace

TEST_CASE("dim prints the dimension")
{
    CHECK(run({"dim", path("fibonacci.md"), "--genus", "2"}).out == "5\n");
    CHECK(run({"dim", path("ising.md"), "--genus", "2"}).out == "10\n");
    CHECK(run({"dim", path("trivial.md"), "--genus", "7"}).out == "1\n");
    CHECK(run({"dim", path("fibonacci.md"), "--genus", "1"}).out == "2\n");
    CHECK(run({"dim", path("ising.md"), "-g", "0", "sigma", "sigma", "eps"}).out == "1\n");
    CHECK(run({"dim", path("ising.md"), "-g", "0", "2", "2", "1", "0"}).out == "1\n");
    auto bad = run({"dim", path("ising.md"), "-g", "0", "tau", "tau", "tau"});
    CHECK(bad.code == exit_input_error);
    CHECK(bad.err.find("unknown label") != std::string::npos);
    CHECK(run({"dim", path("ising.md"), "-g", "0", "sigma"}).code == exit_input_error);
}

TEST_CASE("graph-dim reads legs from the graph file")
{
    CHECK(run({"graph-dim", path("fibonacci.md"), path("graphs/loop_tau.graph")}).out == "1\n");
    auto theta = run({"graph-dim", path("ising.md"), path("graphs/theta_sigma.graph")});
    auto contracted = run({"graph-dim", path("ising.md"), path("graphs/genus2_sigma.graph")});
    CHECK(theta.code == exit_pass);
    CHECK(theta.out == contracted.out);
    CHECK(theta.out == "16\n");
    // (0,4) tau^4 times (1,2) tau^2
    CHECK(run({"graph-dim", path("fibonacci.md"), path("graphs/two_corollas.graph")}).out ==
          std::to_string(2 * 3) + "\n");
    CHECK(run({"graph-dim", path("fibonacci.md"), path("graphs/theta_sigma.graph")}).code == exit_input_error);
    auto unstable = write_temp("unstable.graph", "vertex a genus 0\nleg a tau\nleg a tau\n");
    CHECK(run({"graph-dim", path("fibonacci.md"), unstable}).code == exit_input_error);
}

TEST_CASE("exit codes for all three paths")
{
    auto ok = run({"check", path("fibonacci.md")});
    CHECK(ok.code == exit_pass);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(run({"check", path("trivial.md")}).code == exit_pass);

    auto corrupt = run({"check", corrupted_fibonacci()});
    CHECK(corrupt.code == exit_check_failure);
    CHECK(corrupt.out.find("FAIL Verlinde formula") != std::string::npos);
    CHECK(corrupt.out.find("Verlinde gives 1, declared 0") != std::string::npos);

    CHECK(run({"check", path("does_not_exist.md")}).code == exit_input_error);
    CHECK(run({"check", write_temp("garbage.md", "rank two\n")}).code == exit_input_error);
    CHECK(run({"frobnicate"}).code == exit_input_error);
    CHECK(run({}).code == exit_input_error);
    CHECK(run({"--help"}).code == exit_pass);
}

TEST_CASE("check reports a degenerate datum as non-modular")
{
    auto r = run({"check", path("fib_rep_z2.md")});
    CHECK(r.code == exit_check_failure);
    CHECK(r.out.find("FAIL Mueger center is trivial") != std::string::npos);
    CHECK(r.out.find("not modular") != std::string::npos);
}

TEST_CASE("report is deterministic JSON")
{
    auto a = run({"report", path("trivial.md")});
    auto b = run({"report", path("trivial.md")});
    CHECK(a.code == exit_pass);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"status\": \"fail\"") == std::string::npos);
    CHECK(a.out.find("elapsed") == std::string::npos);

    auto c = run({"report", corrupted_fibonacci()});
    CHECK(c.code == exit_check_failure);
    CHECK(c.out.find("\"status\": \"fail\"") != std::string::npos);
    CHECK(c.out.find("\"residual\": {") != std::string::npos);

    auto p1 = run({"report", path("su2_4.md"), "--jobs", "3"});
    auto p2 = run({"report", path("su2_4.md")});
    CHECK(p1.out == p2.out);
}

TEST_CASE("tolerance flags and environment")
{
    CHECK(run({"check", path("ising.md"), "--tol", "1e-20"}).code == exit_check_failure);
    CHECK(run({"check", path("ising.md"), "--tol", "-1"}).code == exit_input_error);
    ::setenv("MODFUNCTOR_TOL", "1e-20", 1);
    CHECK(run({"check", path("ising.md")}).code == exit_check_failure);
    CHECK(run({"check", path("ising.md"), "--tol", "1e-9"}).code == exit_pass);
    ::setenv("MODFUNCTOR_TOL", "abc", 1);
    CHECK(run({"check", path("ising.md")}).code == exit_input_error);
    ::unsetenv("MODFUNCTOR_TOL");
    auto small = run({"check", path("ising.md"), "--max-genus", "1", "--max-legs", "2"});
    CHECK(small.code == exit_pass);
    CHECK(small.out.find("g=2") == std::string::npos);
}

TEST_CASE("verlinde, cardy and sewing commands")
{
    auto v = run({"verlinde", path("fibonacci.md")});
    CHECK(v.code == exit_pass);
    CHECK(v.out.find("tau x tau = 1 + tau\n") != std::string::npos);
    CHECK(run({"verlinde", corrupted_fibonacci()}).code == exit_check_failure);

    CHECK(run({"cardy", path("fibonacci.md"), "-g", "1", "-n", "1"}).out == "5\n");
    auto inv = run({"cardy", path("su3_1.md"), "-g", "1", "--invariant"});
    CHECK(inv.code == exit_pass);
    CHECK(inv.out.rfind("9\n", 0) == 0);

    auto s = run({"sewing", path("fibonacci.md"), path("modules/fibonacci.modules"), "--split", "3/7"});
    CHECK(s.code == exit_pass);
    CHECK(s.out.find("FAIL") == std::string::npos);
    CHECK(run({"sewing", path("fibonacci.md"), "-t", "9"}).code == exit_input_error);
    CHECK(run({"sewing", path("fibonacci.md"), "--split", "x"}).code == exit_input_error);
}
