#include "jch/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "jch/errors.hpp"
#include "jch/numerics.hpp"

namespace jch::quad {

using num::cplx;

namespace {

// Kronrod-15 abscissae on [0, 1) plus center, with Kronrod and embedded
// Gauss-7 weights (classical values).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
    cplx kronrod;
    double error;
};

PanelEval gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx resk{0.0, 0.0}, resg{0.0, 0.0};
    for (int j = 0; j < 8; ++j) {
        const double dx = h * xgk[j];
        cplx fsum = f(c - dx);
        if (j < 7) fsum += f(c + dx);
        resk += wgk[j] * fsum;
        // odd abscissae (and the center, j == 7) are the embedded Gauss-7 nodes
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    resk *= h;
    resg *= h;
    return {resk, std::abs(resk - resg)};
}

} // namespace

QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              double tol, double initial_cap, int max_panels) {
    if (!(b >= a)) throw validation_error("integration bounds must satisfy a <= b");
    if (!(tol > 0.0)) throw validation_error("quadrature tol must be positive");
    if (b == a) return {cplx{0.0, 0.0}, 0.0, 0};
    const double total = b - a;

    // seed panels, widest first on the stack so accepted panels come out in
    // ascending position order
    std::vector<std::pair<double, double>> stack;
    int seeds = 1;
    if (std::isfinite(initial_cap) && initial_cap > 0.0 && initial_cap < total)
        seeds = static_cast<int>(std::ceil(total / initial_cap));
    if (seeds > max_panels)
        throw convergence_error("quadrature: seed panel count exceeds the panel budget");
    stack.reserve(64);
    for (int i = seeds; i-- > 0;) {
        const double x0 = a + total * (static_cast<double>(i) / seeds);
        const double x1 = (i + 1 == seeds) ? b : a + total * (static_cast<double>(i + 1) / seeds);
        stack.emplace_back(x0, x1);
    }

    num::KahanSum<cplx> acc;
    num::KahanSum<double> errsum;
    int accepted = 0, evaluated = 0;
    while (!stack.empty()) {
        const auto [x0, x1] = stack.back();
        stack.pop_back();
        if (++evaluated > max_panels)
            throw convergence_error("quadrature panel budget exhausted");
        const PanelEval pe = gk15(f, x0, x1);
        const double width = x1 - x0;
        const double share = tol * (width / total);
        if (pe.error <= share || width <= 1e-14 * total) {
            acc.add(pe.kronrod);
            errsum.add(pe.error);
            ++accepted;
        } else {
            const double mid = 0.5 * (x0 + x1);
            stack.emplace_back(mid, x1); // left half processed first
            stack.emplace_back(x0, mid);
        }
    }
    return {acc.value(), errsum.value(), accepted};
}

namespace {

double panel_cap(const model::ModelParams& p) {
    const double wmax = p.omega_ph * 4.0 * p.g_p * p.g_p + std::abs(p.delta) + p.lambda;
    return std::numbers::pi / (4.0 * wmax);
}

} // namespace

std::pair<double, double> quadrature_rates(const model::ModelParams& p_, double t,
                                           double tol) {
    const auto p = model::validate_params(p_);
    if (!(t >= 0.0)) throw validation_error("t must be nonnegative");
    if (t == 0.0) return {0.0, 0.0};
    const auto r = integrate_adaptive(
        [&p](double s) { return rates::correlation_function(p, s); }, 0.0, t, tol,
        panel_cap(p));
    return {r.value.real(), r.value.imag()};
}

std::pair<double, double> quadrature_cumulative(const model::ModelParams& p_, double t,
                                                double tol) {
    const auto p = model::validate_params(p_);
    if (!(t >= 0.0)) throw validation_error("t must be nonnegative");
    if (t == 0.0) return {0.0, 0.0};
    const auto r = integrate_adaptive(
        [&p, t](double s) { return (t - s) * rates::correlation_function(p, s); }, 0.0,
        t, tol, panel_cap(p));
    return {r.value.real(), r.value.imag()};
}

} // namespace jch::quad
