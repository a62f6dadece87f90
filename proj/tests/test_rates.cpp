#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jch/errors.hpp"
#include "jch/model.hpp"
#include "jch/rates.hpp"

using namespace jch;
using cplx = std::complex<double>;
using model::ModelParams;
using rates::SidebandSeries;
using rates::TruncationSpec;

namespace {

// Static-cavity closed form (g_p = 0): R(t) = R_inf (1 - e^{-(lambda - i delta) t})
// with R_inf = (gamma0 lambda / 2) / (lambda - i delta), and the cumulative pair
// q(t) = R_inf t + w/c^2 (e^{-ct} - 1).
cplx rate_closed(const ModelParams& p, double t) {
    const cplx c(p.lambda, -p.delta);
    const cplx rinf = 0.5 * p.gamma0 * p.lambda / c;
    return rinf * (1.0 - std::exp(-c * t));
}

cplx cumulative_closed(const ModelParams& p, double t) {
    const cplx c(p.lambda, -p.delta);
    const cplx w = cplx(0.5 * p.gamma0 * p.lambda, 0.0);
    return w / c * t + w / (c * c) * (std::exp(-c * t) - 1.0);
}

} // namespace

TEST_CASE("resonant static cavity: rates match the textbook closed form") {
    ModelParams p;
    p.gamma0 = 1.0;
    p.lambda = 1.0;
    p.delta = 0.0;
    SidebandSeries s(p);
    CHECK(s.count() == 1);

    for (double t : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        auto r = s.sample(t);
        CHECK(r.Gamma == doctest::Approx(0.5 * (1.0 - std::exp(-t))).epsilon(1e-12));
        CHECK(std::abs(r.S) < 1e-14); // no shift on resonance
        CHECK(r.gamma_cum ==
              doctest::Approx(0.5 * (t - (1.0 - std::exp(-t)))).epsilon(1e-12));
        CHECK(std::abs(r.phi_cum) < 1e-13);
    }
    // Regression anchors.
    CHECK(s.sample(1.0).Gamma == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-14));
    CHECK(s.sample(2.0).gamma_cum == doctest::Approx(0.56766764161830635).epsilon(1e-14));
    CHECK(s.markov_rate() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("detuned static cavity: complex closed form at 1e-12") {
    for (auto [lam, del] : {std::pair{1.0, 1.0}, {0.1, 10.0}, {10.0, 3.0}, {0.5, -2.0}}) {
        ModelParams p;
        p.gamma0 = 1.3;
        p.lambda = lam;
        p.delta = del;
        SidebandSeries s(p);
        for (double t : {0.0, 0.05, 0.3, 1.0, 4.0, 12.0}) {
            const cplx r = rate_closed(p, t);
            const cplx q = cumulative_closed(p, t);
            auto got = s.sample(t);
            CHECK(got.Gamma == doctest::Approx(r.real()).epsilon(1e-12));
            CHECK(got.S == doctest::Approx(r.imag()).epsilon(1e-12));
            CHECK(got.gamma_cum == doctest::Approx(q.real()).epsilon(1e-12));
            CHECK(got.phi_cum == doctest::Approx(q.imag()).epsilon(1e-12));
        }
    }

    ModelParams p;
    p.lambda = 1.0;
    p.delta = 1.0;
    SidebandSeries s(p);
    CHECK(s.markov_rate() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s.markov_shift() == doctest::Approx(0.25).epsilon(1e-14));

    ModelParams q;
    q.lambda = 0.1;
    q.delta = 10.0;
    CHECK(SidebandSeries(q).sample(2.0).Gamma ==
          doctest::Approx(0.0037701992766190216).epsilon(1e-12));
}

TEST_CASE("transient flush: past 36 widths the rate equals its asymptote exactly") {
    ModelParams p;
    p.lambda = 2.0;
    p.delta = 3.0;
    p.g_p = 1.0;
    SidebandSeries s(p);
    const double t = 36.0 / p.lambda + 1.0;
    CHECK(s.rate(t) == cplx(s.markov_rate(), s.markov_shift()));
    // Just below the flush point the deviation is already below the envelope.
    const double tb = 30.0 / p.lambda;
    CHECK(std::abs(s.rate(tb) - s.rate(t)) <=
          s.envelope_bound() * std::exp(-p.lambda * tb) * (1.0 + 1e-12));
}

TEST_CASE("sideband count grows with the dressing and hits the cap honestly") {
    TruncationSpec tr;
    // Highest retained index: the undressed series keeps only l = 0.
    CHECK(rates::sideband_count(0.0, tr) == 0);
    int prev = 0;
    for (double gp : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        int n = rates::sideband_count(gp, tr);
        CHECK(n >= prev);
        prev = n;
    }
    const int l2 = rates::sideband_count(2.0, tr);
    CHECK(l2 >= 40);
    CHECK(l2 <= 80);

    // mu = 400 needs more than the default 512 terms: refuse, don't truncate.
    CHECK_THROWS_AS(rates::sideband_count(10.0, tr), jch::convergence_error);
    ModelParams p;
    p.g_p = 10.0;
    CHECK_THROWS_AS(SidebandSeries{p}, jch::convergence_error);

    CHECK_THROWS_WITH_AS(rates::sideband_count(-1.0, tr),
                         "g_p must be finite and nonnegative", jch::validation_error);
    TruncationSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_WITH_AS(rates::sideband_count(1.0, bad), "rel_tol must lie in (0, 1)",
                         jch::validation_error);
    bad = TruncationSpec{};
    bad.max_terms = 0;
    CHECK_THROWS_WITH_AS(rates::sideband_count(1.0, bad), "max_terms must be at least 1",
                         jch::validation_error);
}

TEST_CASE("envelope and rate bounds dominate sampled rates") {
    std::mt19937 rng(20250816u);
    std::uniform_real_distribution<double> ulam(0.05, 5.0), udel(-10.0, 10.0),
        ugp(0.0, 2.0), uom(0.5, 20.0), ut(0.0, 30.0);
    for (int k = 0; k < 40; ++k) {
        ModelParams p;
        p.gamma0 = 0.5 + 0.1 * (k % 7);
        p.lambda = ulam(rng);
        p.delta = udel(rng);
        p.g_p = ugp(rng);
        p.omega_ph = uom(rng);
        SidebandSeries s(p);
        const cplx rinf(s.markov_rate(), s.markov_shift());
        const double bound = rates::rate_bound(p);
        for (int j = 0; j < 8; ++j) {
            const double t = ut(rng);
            const cplx r = s.rate(t);
            CHECK(std::abs(r - rinf) <=
                  s.envelope_bound() * std::exp(-p.lambda * t) * (1.0 + 1e-12) + 1e-15);
            CHECK(std::abs(r.real()) <= bound * (1.0 + 1e-12));
            CHECK(std::abs(r.imag()) <= bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("vanishing dressing limit is continuous") {
    ModelParams p0;
    p0.lambda = 0.7;
    p0.delta = 2.0;
    ModelParams pe = p0;
    pe.g_p = 1e-8;
    SidebandSeries s0(p0), se(pe);
    for (double t : {0.2, 1.0, 5.0}) {
        CHECK(std::abs(s0.rate(t) - se.rate(t)) < 1e-12);
        CHECK(std::abs(s0.cumulative(t) - se.cumulative(t)) < 1e-12);
    }
}

TEST_CASE("cumulative pair is the integral of the rate pair") {
    ModelParams p;
    p.g_p = 2.0;
    p.omega_ph = 10.0;
    p.lambda = 0.5;
    p.delta = 10.0;
    SidebandSeries s(p);

    // Composite Simpson on a grid fine enough for the fastest sideband.
    const std::size_t n = 4096; // intervals
    const double h = 5.0 / static_cast<double>(n);
    auto grid = s.scan_samples(0.0, h, n + 1);
    double sg = 0.0, sp = 0.0;
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        sg += h / 3.0 * (grid[i].Gamma + 4.0 * grid[i + 1].Gamma + grid[i + 2].Gamma);
        sp += h / 3.0 * (grid[i].S + 4.0 * grid[i + 1].S + grid[i + 2].S);
    }
    auto end = s.sample(5.0);
    CHECK(sg == doctest::Approx(end.gamma_cum).epsilon(1e-7));
    CHECK(sp == doctest::Approx(end.phi_cum).epsilon(1e-7));
}

TEST_CASE("chunked scan reproduces direct samples") {
    ModelParams p;
    p.g_p = 1.5;
    p.omega_ph = 10.0;
    p.lambda = 1.0;
    p.delta = 3.0;
    SidebandSeries s(p);
    const std::size_t n = 3000;
    const double h = 0.01;
    auto scan = s.scan_samples(0.0, h, n);
    REQUIRE(scan.size() == n);
    for (std::size_t i = 0; i < n; i += 37) {
        auto direct = s.sample(scan[i].t);
        CHECK(std::abs(scan[i].Gamma - direct.Gamma) < 1e-10);
        CHECK(std::abs(scan[i].S - direct.S) < 1e-10);
        CHECK(std::abs(scan[i].gamma_cum - direct.gamma_cum) < 1e-10);
        CHECK(std::abs(scan[i].phi_cum - direct.phi_cum) < 1e-10);
    }
    CHECK_THROWS_WITH_AS(s.scan_samples(0.0, 0.0, 3), "scan step must be finite and positive",
                         jch::validation_error);
}

TEST_CASE("grid helper validates and matches pointwise evaluation") {
    ModelParams p;
    p.g_p = 1.0;
    p.delta = 1.0;
    std::vector<double> grid{0.0, 0.3, 1.1, 4.0};
    auto rows = rates::cumulative_rates(p, grid);
    REQUIRE(rows.size() == grid.size());
    SidebandSeries s(p);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto ref = s.sample(grid[i]);
        CHECK(rows[i].t == grid[i]);
        CHECK(rows[i].Gamma == doctest::Approx(ref.Gamma).epsilon(1e-12));
        CHECK(rows[i].gamma_cum == doctest::Approx(ref.gamma_cum).epsilon(1e-12));
    }
    std::vector<double> bad{0.0, 2.0, 1.0};
    CHECK_THROWS_WITH_AS(rates::cumulative_rates(p, bad), "t_grid must be sorted ascending",
                         jch::validation_error);
    CHECK_THROWS_AS(s.sample(-1.0), jch::validation_error);
}

TEST_CASE("correlation kernel: value at zero lag and static limit") {
    ModelParams p;
    p.gamma0 = 2.0;
    p.lambda = 0.3;
    p.delta = 4.0;
    p.g_p = 1.2;
    // The dressing redistributes weight over sidebands without changing C(0).
    const cplx at_zero = rates::correlation_function(p, 0.0);
    CHECK(at_zero.real() == doctest::Approx(0.5 * p.gamma0 * p.lambda).epsilon(1e-13));
    CHECK(std::abs(at_zero.imag()) < 1e-13);
    ModelParams q = p;
    q.g_p = 0.0;
    const cplx expect =
        0.5 * q.gamma0 * q.lambda * std::exp(-cplx(q.lambda, -q.delta) * 0.7);
    const cplx got = rates::correlation_function(q, 0.7);
    CHECK(std::abs(got - expect) < 1e-13);
    CHECK_THROWS_WITH_AS(rates::correlation_function(p, -0.1),
                         "s must be finite and nonnegative", jch::validation_error);
}

TEST_CASE("free-function wrappers agree with the series object") {
    ModelParams p;
    p.g_p = 0.8;
    p.delta = 2.0;
    SidebandSeries s(p);
    for (double t : {0.4, 2.0}) {
        CHECK(rates::decay_rate(p, t) == doctest::Approx(s.sample(t).Gamma).epsilon(1e-14));
        CHECK(rates::lamb_shift(p, t) == doctest::Approx(s.sample(t).S).epsilon(1e-14));
    }
}
