#pragma once

#include <complex>
#include <functional>

#include "jch/model.hpp"
#include "jch/rates.hpp"

namespace jch::quad {

struct QuadResult {
    std::complex<double> value;
    double error_estimate; // sum of per-panel Kronrod-Gauss differences
    int panels;            // panels accepted
};

// Adaptive Gauss-Kronrod 7-15 on [a, b] for a complex integrand.
// Panels start no wider than initial_cap (pass +inf for a single seed
// panel), split until each local error fits its width-share of tol, and
// accumulate in ascending order of position. Deterministic.
// Throws convergence_error when max_panels is exhausted.
QuadResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                              double a, double b, double tol,
                              double initial_cap, int max_panels = 500000);

// Gamma(t) and S(t) as Re/Im of the integral of the bath correlation kernel
// over [0, t], evaluated without the sideband series. Panel width is capped
// at pi / (4 (omega_ph 4 g_p^2 + |delta| + lambda)) so the oscillatory
// exponent is resolved. Absolute accuracy target tol on each part.
std::pair<double, double> quadrature_rates(const model::ModelParams& p, double t,
                                           double tol);

// gamma(t) and phi(t) as Re/Im of the integral of (t - s) C(s) over [0, t].
std::pair<double, double> quadrature_cumulative(const model::ModelParams& p, double t,
                                                double tol);

} // namespace jch::quad
