#include "jch/dynamics.hpp"

#include <cmath>

#include "jch/errors.hpp"

namespace jch::dynamics {

using num::cplx;

InitialAmplitudes InitialAmplitudes::checked(cplx a, cplx b) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) ||
        !std::isfinite(b.real()) || !std::isfinite(b.imag()))
        throw validation_error("initial amplitudes must be finite");
    const double norm2 = std::norm(a) + std::norm(b);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw validation_error("initial amplitudes must be normalized: |a|^2+|b|^2 = " +
                               std::to_string(norm2));
    return {a, b};
}

InitialAmplitudes InitialAmplitudes::equatorial() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cplx(r, 0.0), cplx(r, 0.0)};
}

QubitState QubitState::checked(const Eigen::Matrix2cd& rho) {
    constexpr double tol = 1e-12;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw validation_error("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw validation_error("density matrix trace differs from 1");
    // Hermitian 2x2 eigenvalues: tr/2 +- sqrt((d/2)^2 + |off|^2)
    const double half_tr = 0.5 * rho.trace().real();
    const double half_diff = 0.5 * (rho(0, 0).real() - rho(1, 1).real());
    const double r = std::sqrt(half_diff * half_diff + std::norm(rho(0, 1)));
    if (half_tr - r < -tol)
        throw validation_error("density matrix has a negative eigenvalue");
    return {rho};
}

DecoherenceFactors decoherence_factors(const model::ModelParams& p, double t,
                                       const rates::TruncationSpec& trunc) {
    const rates::SidebandSeries series(p, trunc);
    const cplx g = series.cumulative(t);
    return {t, std::exp(-2.0 * g.real()), std::exp(cplx(-g.real(), g.imag()))};
}

QubitState evolve_density(const InitialAmplitudes& init, const model::ModelParams& p,
                          double t, const rates::TruncationSpec& trunc) {
    InitialAmplitudes::checked(init.a, init.b);
    const auto f = decoherence_factors(p, t, trunc);
    const double pa = std::norm(init.a);
    Eigen::Matrix2cd rho;
    rho(0, 0) = pa * f.G0;
    rho(0, 1) = init.a * std::conj(init.b) * f.G1;
    rho(1, 0) = std::conj(rho(0, 1));
    rho(1, 1) = 1.0 - pa * f.G0;
    return QubitState::checked(rho);
}

KrausPair kraus_pair(const model::ModelParams& p, double t,
                     const rates::TruncationSpec& trunc) {
    const auto f = decoherence_factors(p, t, trunc);
    KrausPair k;
    k.K0 = Eigen::Matrix2cd::Zero();
    k.K1 = Eigen::Matrix2cd::Zero();
    k.K0(0, 0) = f.G1;
    k.K0(1, 1) = 1.0;
    k.K1(1, 0) = std::sqrt(std::max(0.0, 1.0 - f.G0));
    return k;
}

QubitState apply_channel(const KrausPair& k, const QubitState& in) {
    const Eigen::Matrix2cd out = k.K0 * in.rho * k.K0.adjoint() +
                                 k.K1 * in.rho * k.K1.adjoint();
    return QubitState::checked(out);
}

double coherence_l1(const QubitState& state) {
    return std::abs(state.rho(0, 1)) + std::abs(state.rho(1, 0));
}

double trace_distance(const QubitState& s1, const QubitState& s2) {
    const Eigen::Matrix2cd d = s1.rho - s2.rho;
    const double half_tr = 0.5 * d.trace().real();
    const double half_diff = 0.5 * (d(0, 0).real() - d(1, 1).real());
    const double r = std::sqrt(half_diff * half_diff + std::norm(d(0, 1)));
    return 0.5 * (std::abs(half_tr + r) + std::abs(half_tr - r));
}

double trace_distance_pair(const model::ModelParams& p, double t,
                           const rates::TruncationSpec& trunc) {
    const rates::SidebandSeries series(p, trunc);
    const double closed = std::exp(-series.cumulative(t).real());

    const double r = 1.0 / std::sqrt(2.0);
    const auto plus = InitialAmplitudes::checked(cplx(r, 0.0), cplx(r, 0.0));
    const auto minus = InitialAmplitudes::checked(cplx(r, 0.0), cplx(-r, 0.0));
    const double direct = trace_distance(evolve_density(plus, p, t, trunc),
                                         evolve_density(minus, p, t, trunc));
    if (std::abs(direct - closed) > 1e-10)
        throw convergence_error("trace-distance routes disagree beyond 1e-10");
    return closed;
}

std::vector<double> coherence_trajectory(const InitialAmplitudes& init,
                                         const model::ModelParams& p, double t0,
                                         double h, std::size_t n,
                                         const rates::TruncationSpec& trunc) {
    InitialAmplitudes::checked(init.a, init.b);
    const double amp = 2.0 * std::abs(init.a) * std::abs(init.b);
    const rates::SidebandSeries series(p, trunc);
    const auto samples = series.scan_samples(t0, h, n);
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k)
        c[k] = amp * std::exp(-samples[k].gamma_cum);
    return c;
}

} // namespace jch::dynamics
