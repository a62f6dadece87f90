#pragma once

namespace jch::model {

// Physical parameters. gamma0 = 1 fixes the time/frequency unit; every
// default below is quoted in those units.
struct ModelParams {
    double gamma0 = 1.0;   // effective qubit-cavity coupling, > 0
    double lambda = 1.0;   // cavity spectral width, > 0
    double delta = 0.0;    // cavity detuning (qubit splitting minus cavity center)
    double omega_ph = 10.0; // phonon frequency, > 0
    double g_p = 0.0;      // dimensionless qubit-phonon coupling, >= 0
    double omega0 = 0.0;   // qubit splitting; absolute frequency placement only
};

struct ValidityReport {
    double epsilon;      // gamma0 * exp(-2 g_p^2) / omega_ph
    bool anti_adiabatic; // epsilon < threshold
};

// Returns p unchanged if all invariants hold; throws validation_error
// naming the offending field otherwise.
ModelParams validate_params(const ModelParams& p);

// Lorentzian coupling profile (gamma0/2pi) lambda^2 / ((w - w0 + delta)^2 + lambda^2).
// Peak gamma0/(2pi) at w = omega0 - delta; integrates to gamma0*lambda/2 over the line.
double spectral_density(const ModelParams& p, double omega);

// Closed form of the window integral of spectral_density over
// [omega0 - delta - W, omega0 - delta + W]; used by tests and the bath
// discretizer as the captured-weight reference.
double spectral_density_window_integral(const ModelParams& p, double half_width);

// Diagnostic only, never blocks computation.
ValidityReport adiabaticity(const ModelParams& p, double threshold = 0.1);

} // namespace jch::model
