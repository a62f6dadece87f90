#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end runs of the installed binary (path injected by the build).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    static int seq = 0;
    const std::string so = "cli_stdout_" + std::to_string(++seq) + ".txt";
    const std::string se = "cli_stderr_" + std::to_string(seq) + ".txt";
    const std::string cmd =
        env_prefix + std::string(JCH_BIN) + " " + args + " > " + so + " 2> " + se;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(so);
    r.err = slurp(se);
    std::remove(so.c_str());
    std::remove(se.c_str());
    return r;
}

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("rates: csv to stdout and json with echoed parameters") {
    auto r = run("rates --t-max 2 --samples 5");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,Gamma,S,gamma,phi\n", 0) == 0);
    CHECK(line_count(r.out) == 6);
    CHECK(r.out.find("\n0,0,") != std::string::npos); // everything starts at zero

    auto j = run("rates --t-max 1 --samples 3 --lambda 2.5 --format json");
    CHECK(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["schema"] == "jch.rates/1");
    CHECK(doc["params"]["lambda"] == 2.5);
    CHECK(doc["t"].size() == 3);
    CHECK(doc["Gamma"].size() == 3);
}

TEST_CASE("exit codes: validation 1, usage 1, convergence 2, help 0") {
    auto bad = run("rates --lambda 0");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("lambda") != std::string::npos);

    auto usage = run("rates --bogus-flag 3");
    CHECK(usage.code == 1);
    CHECK(!usage.err.empty());

    auto none = run("");
    CHECK(none.code != 0);

    // mu = 400 overflows the default sideband budget: honest failure.
    auto cap = run("rates --g-p 10 --t-max 1 --samples 2");
    CHECK(cap.code == 2);
    CHECK(cap.err.find("error:") != std::string::npos);

    auto help = run("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("units of the reference decay rate") != std::string::npos);

    auto svg = run("rates --format svg");
    CHECK(svg.code == 1);
    CHECK(svg.err.find("svg output is only available for sweep") != std::string::npos);
}

TEST_CASE("coherence: initial row is the equatorial state") {
    auto r = run("coherence --t-max 2 --samples 3");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,C_l1,rho00\n", 0) == 0);
    double t0 = -1.0, c0 = 0.0, p0 = 0.0;
    const auto row = r.out.find('\n') + 1;
    REQUIRE(std::sscanf(r.out.c_str() + row, "%lf,%lf,%lf", &t0, &c0, &p0) == 3);
    CHECK(t0 == 0.0);
    CHECK(c0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p0 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("nonmarkov: zero measure converges, short horizons exit 2") {
    auto ok = run("nonmarkov --horizon 50");
    CHECK(ok.code == 0);
    CHECK(ok.err.find("N = 0") != std::string::npos);
    CHECK(ok.err.find("converged=1") != std::string::npos);

    auto truncated = run("nonmarkov --lambda 0.1 --delta 10 --horizon 5");
    CHECK(truncated.code == 2);
    CHECK(truncated.err.find("converged=0") != std::string::npos);

    auto backflow = run("nonmarkov --lambda 0.1 --delta 10 --horizon 50 --format json");
    CHECK(backflow.code == 0);
    auto doc = nlohmann::json::parse(backflow.out);
    CHECK(doc["schema"] == "jch.backflow/1");
    CHECK(doc["N"].get<double>() > 1e-3);
    CHECK(doc["intervals"].size() > 0);
}

TEST_CASE("output files: written on request, refused on bad paths") {
    auto w = run("rates --t-max 1 --samples 3 --out cli_rates.csv");
    CHECK(w.code == 0);
    CHECK(line_count(slurp("cli_rates.csv")) == 4);
    std::remove("cli_rates.csv");

    auto bad = run("rates --out no_such_dir/x.csv");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("cannot open output file") != std::string::npos);
}

TEST_CASE("config file settles below flags") {
    {
        std::ofstream cfg("cli_cfg.ini");
        cfg << "lambda=2.5\ndelta=1.0\n";
    }
    auto from_file = run("rates --samples 2 --config cli_cfg.ini --format json");
    CHECK(from_file.code == 0);
    CHECK(nlohmann::json::parse(from_file.out)["params"]["lambda"] == 2.5);

    auto overridden =
        run("rates --samples 2 --config cli_cfg.ini --lambda 3 --format json");
    CHECK(overridden.code == 0);
    auto doc = nlohmann::json::parse(overridden.out);
    CHECK(doc["params"]["lambda"] == 3.0);
    CHECK(doc["params"]["delta"] == 1.0); // non-overridden file value sticks

    auto via_env = run("rates --samples 2 --format json", "JCH_CONFIG=cli_cfg.ini ");
    CHECK(via_env.code == 0);
    CHECK(nlohmann::json::parse(via_env.out)["params"]["lambda"] == 2.5);
    std::remove("cli_cfg.ini");
}

TEST_CASE("sweep: explicit axes, determinism across thread counts") {
    const std::string spec =
        "sweep --mode nm_grid --axis1 delta=0:5:3 --axis2 lambda=0.1,1 --horizon 20";
    auto a = run(spec + " --jobs 1 --out cli_sweep_a.csv");
    auto b = run(spec + " --jobs 4 --out cli_sweep_b.csv");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    const std::string fa = slurp("cli_sweep_a.csv");
    CHECK(fa == slurp("cli_sweep_b.csv"));
    CHECK(fa.rfind("delta,lambda,N,converged,flag\n", 0) == 0);
    CHECK(line_count(fa) == 1 + 6);
    std::remove("cli_sweep_a.csv");
    std::remove("cli_sweep_b.csv");

    auto missing = run("sweep --mode nm_grid");
    CHECK(missing.code == 1);
    CHECK(missing.err.find("--axis1") != std::string::npos);

    auto badaxis = run("sweep --axis1 delta=zzz");
    CHECK(badaxis.code == 1);
    CHECK(badaxis.err.find("axis syntax") != std::string::npos);
}

TEST_CASE("sweep presets: collapse on override, out-dir rule, unknown name") {
    // Pinning the panel parameter collapses the family to one file.
    auto one = run("sweep --preset fig1 --g-p 0 --out cli_fig1.csv");
    CHECK(one.code == 0);
    const std::string body = slurp("cli_fig1.csv");
    CHECK(body.rfind("lambda,delta,t,C_l1,flag\n", 0) == 0);
    CHECK(line_count(body) == 1 + 5 * 3 * 2001);
    std::remove("cli_fig1.csv");

    auto multi = run("sweep --preset fig1 --out cli_fig1.csv");
    CHECK(multi.code == 1);
    CHECK(multi.err.find("use --out-dir") != std::string::npos);

    auto unknown = run("sweep --preset bogus");
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("unknown preset") != std::string::npos);
}

TEST_CASE("oracle subcommands: argument checks and tiny runs") {
    auto bad = run("oracle exact --samples 1");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("samples must be at least 2") != std::string::npos);

    auto pol = run("oracle polaron --g-p 0.5 --n-ph-max 40");
    CHECK(pol.code == 0);
    CHECK(pol.out.rfind("dev_dressing,dev_oscillator,dev_sigma_z,max_dev\n", 0) == 0);

    // Decoupled-cavity run is cheap and must conserve the norm.
    auto ex = run("oracle exact --gamma0 0 --modes 10 --n-ph-max 4 --t-max 1 --samples 3");
    CHECK(ex.code == 0);
    CHECK(ex.out.rfind("t,rho00,rho01_re,rho01_im,C_l1\n", 0) == 0);
    CHECK(line_count(ex.out) == 4);
}
