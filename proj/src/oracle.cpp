#include "jch/oracle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>

#include "jch/errors.hpp"
#include "jch/numerics.hpp"
#include "jch/rates.hpp"

namespace jch::oracle {

using num::cplx;
using num::KahanSum;

namespace {

// Oracle runs accept gamma0 = 0 (decoupled bath); every other field obeys
// the usual rules.
void check_params_allow_zero_coupling(const model::ModelParams& p) {
    if (!(std::isfinite(p.gamma0) && p.gamma0 >= 0.0))
        throw validation_error("gamma0 must be nonnegative");
    model::ModelParams q = p;
    if (q.gamma0 == 0.0) q.gamma0 = 1.0;
    model::validate_params(q);
}

// Fock levels needed so a displaced vacuum (mean occupation 4 g_p^2) has
// negligible weight at the cutoff: mean + 6 standard deviations + margin.
int required_levels(double g_p) {
    const double mu = 4.0 * g_p * g_p;
    return static_cast<int>(std::ceil(mu + 6.0 * std::sqrt(mu) + 4.0));
}

void check_config(const model::ModelParams& p, const OracleConfig& cfg) {
    if (cfg.modes < 10) throw validation_error("modes must be at least 10");
    if (!(std::isfinite(cfg.dt) && cfg.dt >= 0.0))
        throw validation_error("dt must be nonnegative");
    if (!(std::isfinite(cfg.integrator_tol) && cfg.integrator_tol > 0.0))
        throw validation_error("integrator_tol must be positive");
    const int need = required_levels(p.g_p);
    if (cfg.n_ph_max < need) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "n_ph_max must be at least %d for g_p=%g", need, p.g_p);
        throw validation_error(buf);
    }
}

double resolve_window(const model::ModelParams& p, const OracleConfig& cfg) {
    const double W = cfg.window_halfwidth > 0.0 ? cfg.window_halfwidth
                                                : 25.0 * p.lambda;
    if (!(std::isfinite(W) && W >= 5.0 * p.lambda))
        throw validation_error("window_halfwidth must be at least 5 lambda");
    return W;
}

void check_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw validation_error("time grid must not be empty");
    double prev = -1.0;
    for (double t : t_grid) {
        if (!(std::isfinite(t) && t >= 0.0 && t > prev))
            throw validation_error(
                "time grid must be nonnegative and strictly increasing");
        prev = t;
    }
}

// State layout: [ c_0..c_{P-1} | d_{k=0,n} .. d_{k=M-1,n} | f_0..f_{P-1} ]
// c: excited qubit, bath vacuum;  d: ground, one photon in mode k;
// f: ground, bath vacuum.  Each block carries a phonon Fock index n < P.
struct SectorWorkspace {
    int P = 0;
    int M = 0;
    double half_w0 = 0;
    double Om = 0;
    double gpOm = 0; // g_p * Omega, phonon-displacement coupling
    std::vector<double> wk;
    std::vector<double> gk;
    std::vector<double> sq; // sq[n] = sqrt(n)

    std::size_t dim() const {
        return static_cast<std::size_t>(P) * (M + 2);
    }
};

void apply_hamiltonian(const SectorWorkspace& w, const cplx* psi, cplx* out) {
    const int P = w.P;
    const cplx* c = psi;
    const cplx* f = psi + static_cast<std::size_t>(P) * (w.M + 1);
    cplx* hc = out;
    cplx* hf = out + static_cast<std::size_t>(P) * (w.M + 1);
    const double gpOm = w.gpOm;
    for (int n = 0; n < P; ++n) {
        cplx v = (w.half_w0 + w.Om * n) * c[n];
        if (gpOm != 0.0) {
            if (n > 0) v += gpOm * w.sq[n] * c[n - 1];
            if (n + 1 < P) v += gpOm * w.sq[n + 1] * c[n + 1];
        }
        hc[n] = v;
    }
    for (int n = 0; n < P; ++n) {
        cplx v = (-w.half_w0 + w.Om * n) * f[n];
        if (gpOm != 0.0) {
            if (n > 0) v -= gpOm * w.sq[n] * f[n - 1];
            if (n + 1 < P) v -= gpOm * w.sq[n + 1] * f[n + 1];
        }
        hf[n] = v;
    }
    for (int k = 0; k < w.M; ++k) {
        const double diag0 = -w.half_w0 + w.wk[k];
        const double g = w.gk[k];
        const cplx* dk = psi + static_cast<std::size_t>(k + 1) * P;
        cplx* hdk = out + static_cast<std::size_t>(k + 1) * P;
        for (int n = 0; n < P; ++n) {
            cplx v = (diag0 + w.Om * n) * dk[n];
            if (gpOm != 0.0) {
                if (n > 0) v -= gpOm * w.sq[n] * dk[n - 1];
                if (n + 1 < P) v -= gpOm * w.sq[n + 1] * dk[n + 1];
            }
            hdk[n] = v + g * c[n];
            hc[n] += g * dk[n];
        }
    }
}

void derivative(const SectorWorkspace& w, const cplx* psi, cplx* out) {
    apply_hamiltonian(w, psi, out);
    const std::size_t dim = w.dim();
    for (std::size_t i = 0; i < dim; ++i)
        out[i] = cplx(out[i].imag(), -out[i].real()); // multiply by -i
}

// Classic fixed-step 4th-order Runge-Kutta for psi' = -i H psi.
void rk4_step(const SectorWorkspace& w, std::vector<cplx>& psi, double h,
              std::vector<cplx>& k1, std::vector<cplx>& k2,
              std::vector<cplx>& k3, std::vector<cplx>& k4,
              std::vector<cplx>& tmp) {
    const std::size_t dim = w.dim();
    derivative(w, psi.data(), k1.data());
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
    derivative(w, tmp.data(), k2.data());
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
    derivative(w, tmp.data(), k3.data());
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + h * k3[i];
    derivative(w, tmp.data(), k4.data());
    const double h6 = h / 6.0;
    for (std::size_t i = 0; i < dim; ++i)
        psi[i] += h6 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
}

} // namespace

BathDiscretization discretize_bath(const model::ModelParams& p,
                                   const OracleConfig& cfg) {
    check_params_allow_zero_coupling(p);
    check_config(p, cfg);
    const double W = resolve_window(p, cfg);
    const int M = cfg.modes;
    const double dw = 2.0 * W / M;

    BathDiscretization b;
    b.window_halfwidth = W;
    b.modes = M;
    b.mode_detunings.resize(M);
    b.couplings.resize(M);
    KahanSum<double> weight;
    for (int k = 0; k < M; ++k) {
        const double wk = p.omega0 - p.delta - W + (k + 0.5) * dw;
        const double g = std::sqrt(model::spectral_density(p, wk) * dw);
        b.mode_detunings[k] = p.omega0 - wk;
        b.couplings[k] = g;
        weight.add(g * g);
    }
    b.captured_weight = weight.value();
    return b;
}

EvolutionResult exact_evolution(const model::ModelParams& p,
                                const OracleConfig& cfg,
                                const dynamics::InitialAmplitudes& init,
                                const std::vector<double>& t_grid) {
    check_params_allow_zero_coupling(p);
    check_config(p, cfg);
    check_grid(t_grid);
    const auto amp = dynamics::InitialAmplitudes::checked(init.a, init.b);
    const BathDiscretization bath = discretize_bath(p, cfg);

    SectorWorkspace w;
    w.P = cfg.n_ph_max + 1;
    w.M = bath.modes;
    w.half_w0 = 0.5 * p.omega0;
    w.Om = p.omega_ph;
    w.gpOm = p.g_p * p.omega_ph;
    w.wk.resize(w.M);
    w.gk = bath.couplings;
    for (int k = 0; k < w.M; ++k) w.wk[k] = p.omega0 - bath.mode_detunings[k];
    w.sq.resize(w.P + 1);
    for (int n = 0; n <= w.P; ++n) w.sq[n] = std::sqrt(static_cast<double>(n));

    // Conservative spectral bound for the step control: qubit splitting +
    // largest mode frequency + phonon ladder + displacement + collective
    // coupling (the bath couples through a single collective mode of
    // weight sum g_k^2).
    const double wk_max =
        std::abs(p.omega0 - p.delta) + bath.window_halfwidth;
    const double h_bound = std::abs(p.omega0) / 2.0 + wk_max +
                           p.omega_ph * cfg.n_ph_max +
                           2.0 * w.gpOm * std::sqrt(w.P) +
                           2.0 * std::sqrt(bath.captured_weight) + 1.0;
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.05 / h_bound;

    const std::size_t dim = w.dim();
    std::vector<cplx> psi(dim, cplx(0, 0));
    psi[0] = amp.a;                                        // excited, vacuum
    psi[static_cast<std::size_t>(w.P) * (w.M + 1)] = amp.b; // ground, vacuum
    const double exc0 = std::norm(amp.a);

    std::vector<cplx> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    EvolutionResult res;
    res.t = t_grid;
    res.rho.reserve(t_grid.size());
    res.max_norm_drift = 0;
    res.max_top_level_population = 0;
    res.max_excitation_drift = 0;

    auto record = [&]() {
        const cplx* c = psi.data();
        const cplx* f = psi.data() + static_cast<std::size_t>(w.P) * (w.M + 1);
        KahanSum<double> pop_e, pop_d, pop_f, top;
        KahanSum<cplx> coh;
        for (int n = 0; n < w.P; ++n) {
            pop_e.add(std::norm(c[n]));
            coh.add(c[n] * std::conj(f[n]));
            pop_f.add(std::norm(f[n]));
        }
        for (int k = 0; k < w.M; ++k) {
            const cplx* dk = psi.data() + static_cast<std::size_t>(k + 1) * w.P;
            for (int n = 0; n < w.P; ++n) pop_d.add(std::norm(dk[n]));
            top.add(std::norm(dk[w.P - 1]));
        }
        top.add(std::norm(c[w.P - 1]));
        top.add(std::norm(f[w.P - 1]));

        const double norm2 = pop_e.value() + pop_d.value() + pop_f.value();
        res.max_norm_drift =
            std::max(res.max_norm_drift, std::abs(norm2 - 1.0));
        res.max_top_level_population =
            std::max(res.max_top_level_population, top.value());
        // Excited + one-photon weight is conserved by the exact dynamics.
        res.max_excitation_drift =
            std::max(res.max_excitation_drift,
                     std::abs(pop_e.value() + pop_d.value() - exc0));

        Eigen::Matrix2cd rho;
        rho(0, 0) = pop_e.value();
        rho(0, 1) = coh.value();
        rho(1, 0) = std::conj(coh.value());
        rho(1, 1) = pop_d.value() + pop_f.value();
        res.rho.push_back(rho);
    };

    double t_now = 0.0;
    for (double t_next : t_grid) {
        const double span = t_next - t_now;
        if (span > 0.0) {
            const int steps = static_cast<int>(std::ceil(span / dt));
            const double h = span / steps;
            for (int s = 0; s < steps; ++s)
                rk4_step(w, psi, h, k1, k2, k3, k4, tmp);
            t_now = t_next;
        }
        record();
    }

    if (res.max_norm_drift > cfg.integrator_tol) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "norm drift %.3e exceeds tolerance %.3e",
                      res.max_norm_drift, cfg.integrator_tol);
        throw convergence_error(buf);
    }
    if (res.max_top_level_population > cfg.integrator_tol) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "Fock cutoff leakage %.3e exceeds tolerance %.3e",
                      res.max_top_level_population, cfg.integrator_tol);
        throw convergence_error(buf);
    }
    return res;
}

PolaronCheck verify_polaron_transform(double g_p, int n_ph_max) {
    if (!(std::isfinite(g_p) && g_p >= 0.0))
        throw validation_error("g_p must be nonnegative");
    if (n_ph_max < required_levels(g_p)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "n_ph_max must be at least %d for g_p=%g",
                      required_levels(g_p), g_p);
        throw validation_error(buf);
    }

    using Eigen::MatrixXcd;
    const int P = n_ph_max + 1;

    MatrixXcd nu = MatrixXcd::Zero(P, P);
    for (int n = 1; n < P; ++n) nu(n - 1, n) = std::sqrt(static_cast<double>(n));
    const MatrixXcd A = nu - nu.adjoint(); // anti-Hermitian generator

    // e^{sA} by diagonalizing the Hermitian matrix iA.
    auto expm = [&](double s) -> MatrixXcd {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(cplx(0, 1) * A);
        Eigen::VectorXcd ph(P);
        for (int j = 0; j < P; ++j)
            ph(j) = std::exp(cplx(0, -s * es.eigenvalues()(j)));
        return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    };
    const MatrixXcd Em = expm(-g_p); // excited block of e^S
    const MatrixXcd Ep = expm(g_p);  // ground block

    auto embed = [&](const MatrixXcd& ee, const MatrixXcd& eg,
                     const MatrixXcd& ge, const MatrixXcd& gg) -> MatrixXcd {
        MatrixXcd X = MatrixXcd::Zero(2 * P, 2 * P);
        X.topLeftCorner(P, P) = ee;
        X.topRightCorner(P, P) = eg;
        X.bottomLeftCorner(P, P) = ge;
        X.bottomRightCorner(P, P) = gg;
        return X;
    };
    const MatrixXcd Z = MatrixXcd::Zero(P, P);
    const MatrixXcd I = MatrixXcd::Identity(P, P);

    // Full-space transform U = e^S with S = -g_p sigma_z (nu - nu^dag);
    // index 0 is the excited level, so sigma_z has +1 on the first block.
    const MatrixXcd U = embed(Em, Z, Z, Ep);

    // sigma+ = |excited><ground|.
    const MatrixXcd Sp = embed(Z, I, Z, Z);
    const MatrixXcd lhs_i = U * Sp * U.adjoint();
    const MatrixXcd rhs_i = embed(Z, expm(-2.0 * g_p), Z, Z);

    const MatrixXcd num_op = nu.adjoint() * nu;
    const MatrixXcd pos = nu + nu.adjoint();
    const MatrixXcd Hph =
        embed(num_op + g_p * pos, Z, Z, num_op - g_p * pos);
    const MatrixXcd lhs_ii = U * Hph * U.adjoint();
    const MatrixXcd rhs_ii =
        embed(num_op, Z, Z, num_op) -
        g_p * g_p * MatrixXcd::Identity(2 * P, 2 * P);

    const MatrixXcd sz = embed(I, Z, Z, -I);
    const MatrixXcd lhs_iii = U * sz * U.adjoint();

    // Operator 2-norm of the difference restricted to the lowest half of the
    // Fock ladder, where the truncated transform matches the exact one.
    const int K = P / 2;
    auto projected_dev = [&](const MatrixXcd& X, const MatrixXcd& Y) {
        MatrixXcd D(2 * K, 2 * K);
        const MatrixXcd full = X - Y;
        for (int si = 0; si < 2; ++si)
            for (int sj = 0; sj < 2; ++sj)
                D.block(si * K, sj * K, K, K) =
                    full.block(si * P, sj * P, K, K);
        return D.jacobiSvd().singularValues()(0);
    };

    PolaronCheck chk;
    chk.dev_dressing = projected_dev(lhs_i, rhs_i);
    chk.dev_oscillator = projected_dev(lhs_ii, rhs_ii);
    chk.dev_sigma_z = projected_dev(lhs_iii, sz);
    chk.max_dev = std::max({chk.dev_dressing, chk.dev_oscillator,
                            chk.dev_sigma_z});
    return chk;
}

namespace {

// Master-equation coherence on a grid; gamma0 = 0 short-circuits to the
// constant trajectory (the series requires a strictly positive coupling).
std::vector<double> master_coherence(const model::ModelParams& p,
                                     double amp2ab,
                                     const std::vector<double>& t_grid) {
    std::vector<double> C(t_grid.size(), amp2ab);
    if (p.gamma0 == 0.0) return C;
    rates::SidebandSeries series(p);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const cplx g = series.cumulative(t_grid[i]);
        C[i] = amp2ab * std::exp(-g.real());
    }
    return C;
}

} // namespace

ComparisonReport compare_oracle(const model::ModelParams& p,
                                const OracleConfig& cfg,
                                const dynamics::InitialAmplitudes& init,
                                const std::vector<double>& t_grid) {
    check_params_allow_zero_coupling(p);
    const auto amp = dynamics::InitialAmplitudes::checked(init.a, init.b);
    const double two_ab = 2.0 * std::abs(amp.a) * std::abs(amp.b);

    ComparisonReport rep;
    rep.t = t_grid;
    rep.gamma_floor = 1e-3;

    auto run = [&](const model::ModelParams& q, std::vector<double>& Cm,
                   std::vector<double>& Co) -> double {
        Cm = master_coherence(q, two_ab, t_grid);
        const EvolutionResult ev = exact_evolution(q, cfg, init, t_grid);
        Co.resize(t_grid.size());
        double max_rel = 0.0;
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            Co[i] = 2.0 * std::abs(ev.rho[i](0, 1));
            if (two_ab <= 0.0 || Co[i] <= 0.0) continue;
            const double g_oracle = -std::log(Co[i] / two_ab);
            if (g_oracle < rep.gamma_floor) continue;
            const double g_master =
                Cm[i] > 0.0 ? -std::log(Cm[i] / two_ab) : g_oracle;
            max_rel = std::max(max_rel,
                               std::abs(g_master - g_oracle) / g_oracle);
        }
        return max_rel;
    };

    rep.max_rel_dev_gamma = run(p, rep.C_master, rep.C_oracle);
    rep.max_abs_dC = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        rep.max_abs_dC = std::max(rep.max_abs_dC,
                                  std::abs(rep.C_master[i] - rep.C_oracle[i]));

    model::ModelParams half = p;
    half.gamma0 *= 0.5;
    std::vector<double> Cm2, Co2;
    rep.halved_max_rel_dev_gamma = run(half, Cm2, Co2);

    if (rep.halved_max_rel_dev_gamma > 0.0)
        rep.deviation_ratio =
            rep.max_rel_dev_gamma / rep.halved_max_rel_dev_gamma;
    else
        rep.deviation_ratio = rep.max_rel_dev_gamma == 0.0
                                  ? 1.0
                                  : std::numeric_limits<double>::infinity();
    return rep;
}

} // namespace jch::oracle
