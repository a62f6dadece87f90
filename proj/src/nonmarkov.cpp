#include "jch/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jch/errors.hpp"

namespace jch::nonmarkov {

namespace {

void check_scan(const ScanSpec& scan, double T) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw validation_error("horizon T must be finite and positive");
    if (scan.step < 0.0 || !std::isfinite(scan.step))
        throw validation_error("scan step must be finite and nonnegative");
    if (scan.root_tol < 0.0 || !std::isfinite(scan.root_tol))
        throw validation_error("root_tol must be finite and nonnegative");
    if (!(scan.tail_tol > 0.0))
        throw validation_error("tail_tol must be positive");
}

double bisect_root(const rates::SidebandSeries& series, double a, double b, double fa,
                   double tol) {
    // plain bisection: the rate is cheap and smooth, robustness over speed
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = series.rate(m).real();
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

SignScan gamma_sign_intervals(const model::ModelParams& p, double T,
                              const rates::TruncationSpec& trunc, const ScanSpec& scan) {
    check_scan(scan, T);
    const rates::SidebandSeries series(p, trunc);
    const auto pv = model::validate_params(p);

    const int top = series.count() - 1; // highest retained sideband index
    const double omega_max =
        std::abs(pv.delta) + pv.omega_ph * static_cast<double>(top) + pv.lambda;
    const double h_auto = std::min({0.05 / pv.lambda,
                                    std::numbers::pi / (8.0 * omega_max), T / 1000.0});
    double h = scan.step > 0.0 ? scan.step : h_auto;
    h = std::min(h, T);
    const double root_tol = scan.root_tol > 0.0 ? scan.root_tol : 1e-10 * T;

    SignScan out;
    out.step_used = h;
    out.aliasing_risk = h > std::numbers::pi / omega_max;

    const std::size_t n = static_cast<std::size_t>(std::ceil(T / h));
    const auto samples = series.scan_samples(0.0, h, n);

    // bracket sign changes between consecutive samples (and against T)
    std::vector<double> roots;
    auto consider = [&](double ta, double tb, double fa, double fb) {
        if (fa == 0.0 || (fa < 0.0) == (fb < 0.0)) return;
        // re-anchor on exact evaluations; rotor drift can fake a marginal flip
        const double fae = series.rate(ta).real();
        const double fbe = series.rate(tb).real();
        if (fae == 0.0 || (fae < 0.0) == (fbe < 0.0)) return;
        roots.push_back(bisect_root(series, ta, tb, fae, root_tol));
    };
    for (std::size_t i = 0; i + 1 < n; ++i)
        consider(samples[i].t, samples[i + 1].t, samples[i].Gamma, samples[i + 1].Gamma);
    const double t_last = samples.back().t;
    if (t_last < T)
        consider(t_last, T, samples.back().Gamma, series.rate(T).real());

    // assemble tiling intervals with sign from exact midpoint evaluations
    std::vector<double> bounds;
    bounds.push_back(0.0);
    for (double r : roots)
        if (r > bounds.back() && r < T) bounds.push_back(r);
    bounds.push_back(T);

    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
        const double lo = bounds[j], hi = bounds[j + 1];
        if (!(hi > lo)) continue;
        const bool neg = series.rate(0.5 * (lo + hi)).real() < 0.0;
        if (!out.intervals.empty() && out.intervals.back().negative == neg)
            out.intervals.back().t_end = hi; // merge spurious split
        else
            out.intervals.push_back({lo, hi, neg});
    }
    if (out.intervals.empty()) out.intervals.push_back({0.0, T, false});
    return out;
}

BackflowReport nonmarkovianity(const model::ModelParams& p,
                               const dynamics::InitialAmplitudes& init, double T,
                               const rates::TruncationSpec& trunc, const ScanSpec& scan) {
    dynamics::InitialAmplitudes::checked(init.a, init.b);
    const double amp = 2.0 * std::abs(init.a) * std::abs(init.b);
    const auto sign_scan = gamma_sign_intervals(p, T, trunc, scan);
    const rates::SidebandSeries series(p, trunc);

    BackflowReport rep;
    rep.intervals = sign_scan.intervals;
    rep.aliasing_risk = sign_scan.aliasing_risk;
    rep.horizon = T;

    num::KahanSum<double> total;
    for (const auto& iv : rep.intervals) {
        if (!iv.negative) continue;
        const double g0 = series.cumulative(iv.t_start).real();
        const double g1 = series.cumulative(iv.t_end).real();
        const double contrib = amp * (std::exp(-g1) - std::exp(-g0));
        rep.contributions.push_back(contrib);
        total.add(contrib);
    }
    rep.N = total.value();

    // horizon tail: |Gamma - Gamma_inf| <= B e^{-lambda t}, so gamma can lose
    // at most V beyond T, and the coherence can rise by at most
    // amp e^{-gamma(T)} (e^V - 1)
    const double lambda = model::validate_params(p).lambda;
    const double gamma_T = series.cumulative(T).real();
    const double g_inf = series.markov_rate();
    const double x = series.envelope_bound() * std::exp(-lambda * T);
    double V = 0.0;
    if (x > g_inf && g_inf > 0.0)
        V = (x - g_inf) / lambda - (g_inf / lambda) * std::log(x / g_inf);
    else if (x > 0.0 && g_inf <= 0.0)
        V = x / lambda; // cannot happen for valid params; kept as a safe fallback
    rep.tail_bound = amp * std::exp(-gamma_T) * std::expm1(V);
    rep.converged = rep.tail_bound < scan.tail_tol;
    return rep;
}

} // namespace jch::nonmarkov
