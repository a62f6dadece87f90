#include "jch/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jch/errors.hpp"

namespace jch::model {

ModelParams validate_params(const ModelParams& p) {
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(p.gamma0)) throw validation_error("gamma0 must be finite");
    if (!finite(p.lambda)) throw validation_error("lambda must be finite");
    if (!finite(p.delta)) throw validation_error("delta must be finite");
    if (!finite(p.omega_ph)) throw validation_error("omega_ph must be finite");
    if (!finite(p.g_p)) throw validation_error("g_p must be finite");
    if (!finite(p.omega0)) throw validation_error("omega0 must be finite");
    if (p.gamma0 <= 0.0) throw validation_error("gamma0 must be positive");
    if (p.lambda <= 0.0) throw validation_error("lambda must be positive");
    if (p.omega_ph <= 0.0) throw validation_error("omega_ph must be positive");
    if (p.g_p < 0.0) throw validation_error("g_p must be nonnegative");
    return p;
}

double spectral_density(const ModelParams& p, double omega) {
    const double d = omega - p.omega0 + p.delta;
    return (p.gamma0 / (2.0 * std::numbers::pi)) * p.lambda * p.lambda /
           (d * d + p.lambda * p.lambda);
}

double spectral_density_window_integral(const ModelParams& p, double half_width) {
    if (!(std::isfinite(half_width) && half_width > 0.0))
        throw validation_error("window half-width must be positive");
    // antiderivative (gamma0 lambda / 2pi) atan(x/lambda), symmetric window
    return (p.gamma0 * p.lambda / std::numbers::pi) * std::atan(half_width / p.lambda);
}

ValidityReport adiabaticity(const ModelParams& p, double threshold) {
    const double eps = p.gamma0 * std::exp(-2.0 * p.g_p * p.g_p) / p.omega_ph;
    return {eps, eps < threshold};
}

} // namespace jch::model
