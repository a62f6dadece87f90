#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "jch/dynamics.hpp"
#include "jch/errors.hpp"
#include "jch/model.hpp"

using namespace jch;
using cplx = std::complex<double>;
using dynamics::InitialAmplitudes;
using dynamics::QubitState;
using model::ModelParams;

TEST_CASE("decoherence factors start at one and obey G0 = |G1|^2") {
    ModelParams p;
    p.delta = 2.0;
    p.g_p = 1.0;
    auto f0 = dynamics::decoherence_factors(p, 0.0);
    CHECK(f0.G0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(f0.G1 - 1.0) < 1e-14);

    for (double t : {0.3, 1.0, 6.0, 25.0}) {
        auto f = dynamics::decoherence_factors(p, t);
        CHECK(f.G0 == doctest::Approx(std::norm(f.G1)).epsilon(1e-13));
        CHECK(f.G0 > 0.0);
        CHECK(f.G0 <= 1.0);
    }
}

TEST_CASE("resonant population and coherence decay, known values") {
    ModelParams p; // gamma0 = lambda = 1, delta = 0
    const double t = 2.0;
    const double gam = 0.5 * (t - (1.0 - std::exp(-t))); // 0.56766764161830635
    auto f = dynamics::decoherence_factors(p, t);
    CHECK(f.G0 == doctest::Approx(std::exp(-2.0 * gam)).epsilon(1e-12));
    CHECK(std::abs(f.G1 - std::exp(-gam)) < 1e-12); // phase-free on resonance

    CHECK(f.G0 == doctest::Approx(0.3213146).epsilon(1e-6));
    CHECK(std::abs(f.G1) == doctest::Approx(0.5668462).epsilon(1e-6));

    auto st = dynamics::evolve_density(InitialAmplitudes::equatorial(), p, t);
    CHECK(st.rho(0, 0).real() == doctest::Approx(0.1606573).epsilon(1e-6));
    CHECK(std::abs(st.rho(0, 1)) == doctest::Approx(0.2834231).epsilon(1e-6));
    CHECK(st.rho(1, 1).real() == doctest::Approx(1.0 - 0.5 * f.G0).epsilon(1e-12));
}

TEST_CASE("detuned evolution rotates the coherence by the accumulated shift") {
    ModelParams p;
    p.delta = 1.0;
    const double t = 1.0;
    auto f = dynamics::decoherence_factors(p, t);
    // arg G1 = phi(t), the integrated frequency shift.
    const cplx c(p.lambda, -p.delta);
    const cplx w(0.5 * p.gamma0 * p.lambda, 0.0);
    const cplx q = w / c * t + w / (c * c) * (std::exp(-c * t) - 1.0);
    CHECK(std::abs(f.G1 - std::exp(cplx(-q.real(), q.imag()))) < 1e-12);
}

TEST_CASE("density evolution equals the two-operator channel") {
    std::mt19937 rng(77241u);
    std::uniform_real_distribution<double> ulam(0.05, 5.0), udel(-8.0, 8.0), ugp(0.0, 2.0),
        uom(0.5, 15.0), ut(0.0, 20.0), uphase(0.0, 6.283185307179586),
        upop(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        ModelParams p;
        p.gamma0 = 0.2 + 0.3 * (k % 5);
        p.lambda = ulam(rng);
        p.delta = udel(rng);
        p.g_p = ugp(rng);
        p.omega_ph = uom(rng);
        const double t = ut(rng);
        const double pa = upop(rng);
        const cplx a = std::sqrt(pa) * std::exp(cplx(0.0, uphase(rng)));
        const cplx b = std::sqrt(1.0 - pa) * std::exp(cplx(0.0, uphase(rng)));
        auto init = InitialAmplitudes::checked(a, b);

        auto direct = dynamics::evolve_density(init, p, t);
        Eigen::Matrix2cd rho0;
        rho0 << std::norm(a), a * std::conj(b), std::conj(a) * b, std::norm(b);
        auto kr = dynamics::kraus_pair(p, t);
        auto via = dynamics::apply_channel(kr, QubitState::checked(rho0));

        CHECK((direct.rho - via.rho).cwiseAbs().maxCoeff() < 1e-12);

        // Completeness of the operator pair.
        Eigen::Matrix2cd comp =
            kr.K0.adjoint() * kr.K0 + kr.K1.adjoint() * kr.K1 - Eigen::Matrix2cd::Identity();
        CHECK(comp.cwiseAbs().maxCoeff() < 1e-10);

        // Output is a valid state.
        CHECK_NOTHROW(QubitState::checked(direct.rho));
    }
}

TEST_CASE("channel structure: decaying level feeds the stable one") {
    ModelParams p;
    const double t = 1.5;
    auto kr = dynamics::kraus_pair(p, t);
    auto f = dynamics::decoherence_factors(p, t);
    CHECK(std::abs(kr.K0(0, 0) - f.G1) < 1e-14);
    CHECK(std::abs(kr.K0(1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(kr.K0(0, 1)) == 0.0);
    CHECK(std::abs(kr.K0(1, 0)) == 0.0);
    CHECK(std::abs(kr.K1(1, 0) - std::sqrt(1.0 - f.G0)) < 1e-14);
    CHECK(std::abs(kr.K1(0, 0)) == 0.0);
    CHECK(std::abs(kr.K1(0, 1)) == 0.0);
    CHECK(std::abs(kr.K1(1, 1)) == 0.0);

    // The stable level is a fixed point of the channel.
    Eigen::Matrix2cd ground = Eigen::Matrix2cd::Zero();
    ground(1, 1) = 1.0;
    auto out = dynamics::apply_channel(kr, QubitState::checked(ground));
    CHECK((out.rho - ground).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("state and amplitude validation") {
    CHECK_THROWS_AS(InitialAmplitudes::checked(1.0, 1.0), jch::validation_error);
    CHECK_THROWS_AS(InitialAmplitudes::checked(cplx(std::nan(""), 0.0), 0.0),
                    jch::validation_error);
    auto eq = InitialAmplitudes::equatorial();
    CHECK(std::abs(std::norm(eq.a) + std::norm(eq.b) - 1.0) < 1e-14);

    Eigen::Matrix2cd m;
    m << 0.5, cplx(0.1, 0.2), cplx(0.1, 0.3), 0.5; // not Hermitian
    CHECK_THROWS_WITH_AS(QubitState::checked(m), "density matrix is not Hermitian",
                         jch::validation_error);
    m << 0.7, 0.0, 0.0, 0.7; // trace 1.4
    CHECK_THROWS_WITH_AS(QubitState::checked(m), "density matrix trace differs from 1",
                         jch::validation_error);
    m << 1.2, 0.0, 0.0, -0.2; // negative eigenvalue
    CHECK_THROWS_WITH_AS(QubitState::checked(m), "density matrix has a negative eigenvalue",
                         jch::validation_error);
}

TEST_CASE("l1 coherence and its trajectory") {
    ModelParams p;
    p.delta = 3.0;
    p.g_p = 0.5;
    auto init = InitialAmplitudes::checked(0.8, 0.6);
    const double twoab = 2.0 * 0.8 * 0.6;

    const double h = 0.05;
    const std::size_t n = 200;
    auto traj = dynamics::coherence_trajectory(init, p, 0.0, h, n);
    REQUIRE(traj.size() == n);
    rates::SidebandSeries s(p);
    for (std::size_t i = 0; i < n; i += 17) {
        const double t = h * static_cast<double>(i);
        const double expect = twoab * std::exp(-s.sample(t).gamma_cum);
        CHECK(traj[i] == doctest::Approx(expect).epsilon(1e-12));
        auto st = dynamics::evolve_density(init, p, t);
        CHECK(dynamics::coherence_l1(st) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(traj[0] == doctest::Approx(twoab).epsilon(1e-14));
}

TEST_CASE("trace distance: closed form pair against direct evaluation") {
    ModelParams p;
    p.lambda = 0.1;
    p.delta = 10.0; // pronounced memory: distance revivals live here
    rates::SidebandSeries s(p);
    for (double t : {0.0, 0.2, 0.45, 1.0, 3.0}) {
        const double d = dynamics::trace_distance_pair(p, t);
        CHECK(d == doctest::Approx(std::exp(-s.sample(t).gamma_cum)).epsilon(1e-10));
    }

    // Generic distance sanity.
    Eigen::Matrix2cd e0 = Eigen::Matrix2cd::Zero(), e1 = Eigen::Matrix2cd::Zero();
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    CHECK(dynamics::trace_distance(QubitState::checked(e0), QubitState::checked(e1)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dynamics::trace_distance(QubitState::checked(e0), QubitState::checked(e0)) ==
          doctest::Approx(0.0).epsilon(1e-14));
}
