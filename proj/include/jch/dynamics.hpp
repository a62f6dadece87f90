#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "jch/model.hpp"
#include "jch/rates.hpp"

namespace jch::dynamics {

// Pure-state amplitudes of the initial qubit state; index 0 is the level
// whose population decays. Must satisfy |a|^2 + |b|^2 = 1 within 1e-12.
struct InitialAmplitudes {
    std::complex<double> a;
    std::complex<double> b;

    static InitialAmplitudes checked(std::complex<double> a, std::complex<double> b);
    static InitialAmplitudes equatorial(); // a = b = 1/sqrt(2)
};

struct DecoherenceFactors {
    double t;
    double G0;               // e^{-2 gamma(t)}, in (0, 1]
    std::complex<double> G1; // e^{-gamma(t) + i phi(t)};  G0 = |G1|^2
};

// 2x2 density matrix. checked() enforces Hermiticity, unit trace, and
// eigenvalues >= -1e-12; violations throw (no silent repair), since they
// indicate rate-integration bugs upstream.
struct QubitState {
    Eigen::Matrix2cd rho;
    static QubitState checked(const Eigen::Matrix2cd& rho);
};

// Amplitude-damping pair: K0 = diag(G1, 1) and K1 = sqrt(1 - G0) |1><0|.
// The transfer entry sits in the lower-left so the channel moves the
// population of the decaying index-0 level into index 1; this is the unique
// placement compatible with K0 and the density-matrix solution (the
// upper-right variant fails completeness against diag(G1, 1)).
struct KrausPair {
    Eigen::Matrix2cd K0;
    Eigen::Matrix2cd K1;
};

DecoherenceFactors decoherence_factors(const model::ModelParams& p, double t,
                                       const rates::TruncationSpec& trunc = {});

// rho00 = |a|^2 G0, rho01 = a conj(b) G1, rho11 = 1 - |a|^2 G0.
QubitState evolve_density(const InitialAmplitudes& init, const model::ModelParams& p,
                          double t, const rates::TruncationSpec& trunc = {});

KrausPair kraus_pair(const model::ModelParams& p, double t,
                     const rates::TruncationSpec& trunc = {});

QubitState apply_channel(const KrausPair& k, const QubitState& in);

// l1 norm of coherence: sum of off-diagonal magnitudes = 2 |rho01|.
double coherence_l1(const QubitState& state);

// (1/2) trace norm of rho1 - rho2 (Hermitian 2x2 closed form).
double trace_distance(const QubitState& s1, const QubitState& s2);

// Distance between the evolved antipodal equatorial pure states
// (a = b = 1/sqrt2 and a = -b = 1/sqrt2), which equals e^{-gamma(t)}.
// Computed both ways (closed form and direct trace norm); they must agree
// to 1e-10 or this throws.
double trace_distance_pair(const model::ModelParams& p, double t,
                           const rates::TruncationSpec& trunc = {});

// C_l1 over a uniform time grid: 2 |a b| e^{-gamma(t_k)}, t_k = t0 + k h.
// Dense-scan path shared with the sweep runner.
std::vector<double> coherence_trajectory(const InitialAmplitudes& init,
                                         const model::ModelParams& p, double t0,
                                         double h, std::size_t n,
                                         const rates::TruncationSpec& trunc = {});

} // namespace jch::dynamics
