#pragma once

#include <vector>

#include "jch/dynamics.hpp"
#include "jch/model.hpp"
#include "jch/rates.hpp"

namespace jch::nonmarkov {

struct ScanSpec {
    // 0 selects min(0.05/lambda, pi/(8 (|delta| + omega_ph L + lambda)), T/1000):
    // an eighth of the fastest sideband period, so sign lobes cannot alias.
    double step = 0.0;
    double root_tol = 0.0;   // 0 selects 1e-10 * T
    double tail_tol = 1e-6;  // convergence threshold on the horizon-tail bound
};

struct SignInterval {
    double t_start;
    double t_end;
    bool negative; // decay rate < 0 on the open interval
};

struct SignScan {
    std::vector<SignInterval> intervals; // tile [0, T] in order, no gaps
    bool aliasing_risk;                  // step wider than half the fastest period
    double step_used;
};

struct BackflowReport {
    double N = 0.0;
    std::vector<SignInterval> intervals;
    std::vector<double> contributions; // per negative interval, same order
    double horizon = 0.0;
    bool converged = false; // tail bound below tail_tol
    double tail_bound = 0.0;
    bool aliasing_risk = false; // propagated scan warning
};

// Dense sign scan of the decay rate plus bisection refinement of each
// bracketed root. Intervals tile [0, T] exactly.
SignScan gamma_sign_intervals(const model::ModelParams& p, double T,
                              const rates::TruncationSpec& trunc = {},
                              const ScanSpec& scan = {});

// Coherence-backflow measure: total positive increment of C_l1 over [0, T].
// Since dC/dt = -Gamma C and C > 0, rises happen exactly on Gamma < 0
// intervals, each contributing 2|ab| (e^{-gamma(end)} - e^{-gamma(start)}).
// The tail beyond T is bounded through the envelope |Gamma - Gamma_inf|
// <= B e^{-lambda t}; converged means that bound is below tail_tol.
BackflowReport nonmarkovianity(const model::ModelParams& p,
                               const dynamics::InitialAmplitudes& init, double T,
                               const rates::TruncationSpec& trunc = {},
                               const ScanSpec& scan = {});

} // namespace jch::nonmarkov
