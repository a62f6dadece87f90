// Command-line front end. Exit codes: 0 success, 1 bad usage or invalid
// parameters, 2 a computation failed to converge (series cap, quadrature
// budget, integrator drift, or an unconverged backflow horizon).
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jch/dynamics.hpp"
#include "jch/errors.hpp"
#include "jch/model.hpp"
#include "jch/nonmarkov.hpp"
#include "jch/numerics.hpp"
#include "jch/oracle.hpp"
#include "jch/quadrature.hpp"
#include "jch/rates.hpp"
#include "jch/sweep.hpp"

using ojson = nlohmann::ordered_json;
namespace jm = jch::model;
namespace jd = jch::dynamics;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw jch::validation_error("cannot open output file: " + out_path);
    f << content;
}

ojson params_json(const jm::ModelParams& p) {
    ojson j;
    j["gamma0"] = p.gamma0;
    j["lambda"] = p.lambda;
    j["delta"] = p.delta;
    j["omega_ph"] = p.omega_ph;
    j["g_p"] = p.g_p;
    j["omega0"] = p.omega0;
    return j;
}

// "name=lo:hi:n" (uniform) or "name=v1,v2,..." (explicit list)
jch::sweep::AxisSpec parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw jch::validation_error(
            "axis syntax: name=lo:hi:n or name=v1,v2,...");
    const std::string name = text.substr(0, eq);
    const std::string rhs = text.substr(eq + 1);
    try {
        if (rhs.find(':') != std::string::npos) {
            double lo, hi;
            int n;
            char extra;
            if (std::sscanf(rhs.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n,
                            &extra) != 3)
                throw jch::validation_error(
                    "axis syntax: name=lo:hi:n or name=v1,v2,...");
            return jch::sweep::AxisSpec::linspace(name, lo, hi, n);
        }
        std::vector<double> vals;
        std::size_t pos = 0;
        while (pos <= rhs.size()) {
            const auto comma = rhs.find(',', pos);
            const std::string tok =
                rhs.substr(pos, comma == std::string::npos ? std::string::npos
                                                           : comma - pos);
            std::size_t used = 0;
            vals.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw jch::validation_error("bad axis value: " + tok);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return jch::sweep::AxisSpec::list(name, std::move(vals));
    } catch (const std::invalid_argument&) {
        throw jch::validation_error("axis syntax: name=lo:hi:n or name=v1,v2,...");
    } catch (const std::out_of_range&) {
        throw jch::validation_error("axis value out of range: " + text);
    }
}

void set_base_field(jm::ModelParams& p, const std::string& name, double v) {
    if (name == "lambda") p.lambda = v;
    else if (name == "delta") p.delta = v;
    else if (name == "g_p") p.g_p = v;
    else if (name == "omega_ph") p.omega_ph = v;
    else if (name == "gamma0") p.gamma0 = v;
    else if (name == "omega0") p.omega0 = v;
    else throw jch::validation_error("unknown parameter: " + name);
}

int needed_fock_levels(double g_p) {
    const double mu = 4.0 * g_p * g_p;
    return static_cast<int>(std::ceil(mu + 6.0 * std::sqrt(mu) + 4.0));
}

struct Cli {
    jm::ModelParams p{};
    jch::rates::TruncationSpec trunc{};
    double a_re = 1.0 / std::numbers::sqrt2, a_im = 0.0;
    double b_re = 1.0 / std::numbers::sqrt2, b_im = 0.0;
    std::string format = "csv";
    std::string out;
    std::string out_dir = ".";
    int jobs = 0;

    jd::InitialAmplitudes init() const {
        return jd::InitialAmplitudes::checked({a_re, a_im}, {b_re, b_im});
    }
    jch::sweep::OutputFormat fmt() const {
        if (format == "csv") return jch::sweep::OutputFormat::csv;
        if (format == "json") return jch::sweep::OutputFormat::json;
        return jch::sweep::OutputFormat::svg;
    }
    void forbid_svg() const {
        if (format == "svg")
            throw jch::validation_error(
                "svg output is only available for sweep");
    }
};

std::vector<jch::rates::RateSample> sample_grid(const jm::ModelParams& p,
                                                const jch::rates::TruncationSpec& trunc,
                                                double t_max, int samples) {
    if (!(std::isfinite(t_max) && t_max > 0))
        throw jch::validation_error("t-max must be positive");
    if (samples < 1) throw jch::validation_error("samples must be at least 1");
    jch::rates::SidebandSeries series(p, trunc);
    if (samples == 1) return {series.sample(t_max)};
    const double h = t_max / (samples - 1);
    return series.scan_samples(0.0, h, static_cast<std::size_t>(samples));
}

int run_rates(const Cli& cli, double t_max, int samples) {
    cli.forbid_svg();
    const auto rows = sample_grid(cli.p, cli.trunc, t_max, samples);
    if (cli.format == "csv") {
        std::string out = "t,Gamma,S,gamma,phi\n";
        for (const auto& r : rows)
            out += g17(r.t) + "," + g17(r.Gamma) + "," + g17(r.S) + "," +
                   g17(r.gamma_cum) + "," + g17(r.phi_cum) + "\n";
        emit(out, cli.out);
    } else {
        ojson j;
        j["schema"] = "jch.rates/1";
        j["params"] = params_json(cli.p);
        j["rel_tol"] = cli.trunc.rel_tol;
        j["max_terms"] = cli.trunc.max_terms;
        for (const char* key : {"t", "Gamma", "S", "gamma", "phi"})
            j[key] = ojson::array();
        for (const auto& r : rows) {
            j["t"].push_back(r.t);
            j["Gamma"].push_back(r.Gamma);
            j["S"].push_back(r.S);
            j["gamma"].push_back(r.gamma_cum);
            j["phi"].push_back(r.phi_cum);
        }
        emit(j.dump(2) + "\n", cli.out);
    }
    return 0;
}

int run_coherence(const Cli& cli, double t_max, int samples) {
    cli.forbid_svg();
    const auto init = cli.init();
    const double two_ab = 2.0 * std::abs(init.a) * std::abs(init.b);
    const double pop0 = std::norm(init.a);
    const auto rows = sample_grid(cli.p, cli.trunc, t_max, samples);
    if (cli.format == "csv") {
        std::string out = "t,C_l1,rho00\n";
        for (const auto& r : rows)
            out += g17(r.t) + "," + g17(two_ab * std::exp(-r.gamma_cum)) +
                   "," + g17(pop0 * std::exp(-2.0 * r.gamma_cum)) + "\n";
        emit(out, cli.out);
    } else {
        ojson j;
        j["schema"] = "jch.coherence/1";
        j["params"] = params_json(cli.p);
        j["init_a"] = {init.a.real(), init.a.imag()};
        j["init_b"] = {init.b.real(), init.b.imag()};
        j["t"] = ojson::array();
        j["C_l1"] = ojson::array();
        j["rho00"] = ojson::array();
        for (const auto& r : rows) {
            j["t"].push_back(r.t);
            j["C_l1"].push_back(two_ab * std::exp(-r.gamma_cum));
            j["rho00"].push_back(pop0 * std::exp(-2.0 * r.gamma_cum));
        }
        emit(j.dump(2) + "\n", cli.out);
    }
    return 0;
}

int run_nonmarkov(const Cli& cli, double horizon,
                  const jch::nonmarkov::ScanSpec& scan) {
    cli.forbid_svg();
    const auto rep = jch::nonmarkov::nonmarkovianity(cli.p, cli.init(), horizon,
                                                     cli.trunc, scan);
    if (cli.format == "csv") {
        std::string out = "t_start,t_end,negative,contribution\n";
        std::size_t neg = 0;
        for (const auto& iv : rep.intervals) {
            const double contrib = iv.negative ? rep.contributions[neg++] : 0.0;
            out += g17(iv.t_start) + "," + g17(iv.t_end) + "," +
                   (iv.negative ? "1" : "0") + "," + g17(contrib) + "\n";
        }
        emit(out, cli.out);
    } else {
        ojson j;
        j["schema"] = "jch.backflow/1";
        j["params"] = params_json(cli.p);
        j["horizon"] = rep.horizon;
        j["N"] = rep.N;
        j["converged"] = rep.converged;
        j["tail_bound"] = rep.tail_bound;
        j["aliasing_risk"] = rep.aliasing_risk;
        j["intervals"] = ojson::array();
        std::size_t neg = 0;
        for (const auto& iv : rep.intervals) {
            ojson o;
            o["t_start"] = iv.t_start;
            o["t_end"] = iv.t_end;
            o["negative"] = iv.negative;
            o["contribution"] = iv.negative ? rep.contributions[neg++] : 0.0;
            j["intervals"].push_back(std::move(o));
        }
        emit(j.dump(2) + "\n", cli.out);
    }
    std::fprintf(stderr,
                 "N = %.12g  converged=%d  tail_bound=%.3g  aliasing_risk=%d\n",
                 rep.N, rep.converged ? 1 : 0, rep.tail_bound,
                 rep.aliasing_risk ? 1 : 0);
    return rep.converged ? 0 : 2;
}

int run_sweep_cmd(const Cli& cli, const std::string& preset,
                  const std::string& mode_str, const std::string& axis1_str,
                  const std::string& axis2_str, double horizon, int t_samples,
                  const jch::nonmarkov::ScanSpec& scan,
                  const std::vector<std::pair<std::string, double>>& overrides) {
    using namespace jch::sweep;
    if (preset.empty()) {
        if (axis1_str.empty())
            throw jch::validation_error("either --preset or --axis1 is required");
        SweepSpec s;
        s.mode = mode_str == "coherence_vs_time" ? SweepMode::coherence_vs_time
                                                 : SweepMode::nm_grid;
        s.axis1 = parse_axis(axis1_str);
        if (!axis2_str.empty()) s.axis2 = parse_axis(axis2_str);
        s.base = cli.p;
        s.init = cli.init();
        s.time_horizon = horizon;
        s.t_samples = t_samples;
        s.trunc = cli.trunc;
        s.scan = scan;
        emit(serialize_result(run_sweep(s, cli.jobs), cli.fmt()), cli.out);
        return 0;
    }

    const PresetFamily* fam = nullptr;
    for (const auto& f : presets())
        if (f.name == preset) fam = &f;
    if (!fam) throw jch::validation_error("unknown preset: " + preset);

    std::vector<PresetPanel> panels = fam->panels;
    for (const auto& [name, value] : overrides) {
        if (name == fam->panel_param) {
            // The override names the parameter the panels vary: the family
            // collapses to a single panel at that value.
            char label[32];
            std::snprintf(label, sizeof label, "%s%g",
                          fam->label_prefix.c_str(), value);
            panels.resize(1);
            panels[0].label = label;
        }
        for (auto& panel : panels)
            set_base_field(panel.spec.base, name, value);
    }
    if (!cli.out.empty() && panels.size() > 1)
        throw jch::validation_error("use --out-dir with preset families");

    for (const auto& panel : panels) {
        const GridResult res = run_sweep(panel.spec, cli.jobs);
        const std::string body = serialize_result(res, cli.fmt());
        std::string path = cli.out;
        if (path.empty())
            path = cli.out_dir + "/" + output_basename(fam->name, panel, cli.fmt());
        emit(body, path);
        std::printf("%s\n", path.c_str());
    }
    return 0;
}

int run_oracle_quadrature(const Cli& cli, double t, double quad_tol) {
    cli.forbid_svg();
    jch::rates::SidebandSeries series(cli.p, cli.trunc);
    const auto s = series.sample(t);
    const auto [Gq, Sq] = jch::oracle::quadrature_rates(cli.p, t, quad_tol);
    const auto [gq, fq] = jch::oracle::quadrature_cumulative(cli.p, t, quad_tol);
    if (cli.format == "csv") {
        std::string out =
            "t,Gamma_series,Gamma_quad,S_series,S_quad,"
            "gamma_series,gamma_quad,phi_series,phi_quad\n";
        out += g17(t) + "," + g17(s.Gamma) + "," + g17(Gq) + "," + g17(s.S) +
               "," + g17(Sq) + "," + g17(s.gamma_cum) + "," + g17(gq) + "," +
               g17(s.phi_cum) + "," + g17(fq) + "\n";
        emit(out, cli.out);
    } else {
        ojson j;
        j["schema"] = "jch.quadcheck/1";
        j["params"] = params_json(cli.p);
        j["t"] = t;
        j["Gamma_series"] = s.Gamma;
        j["Gamma_quad"] = Gq;
        j["S_series"] = s.S;
        j["S_quad"] = Sq;
        j["gamma_series"] = s.gamma_cum;
        j["gamma_quad"] = gq;
        j["phi_series"] = s.phi_cum;
        j["phi_quad"] = fq;
        emit(j.dump(2) + "\n", cli.out);
    }
    std::fprintf(stderr, "max rate deviation = %.3e\n",
                 std::max(std::abs(s.Gamma - Gq), std::abs(s.S - Sq)));
    return 0;
}

jch::oracle::OracleConfig resolve_oracle_config(const Cli& cli, int modes,
                                                int n_ph_max, double window,
                                                double dt, double tol) {
    jch::oracle::OracleConfig cfg;
    cfg.modes = modes > 0 ? modes : (cli.p.g_p >= 2.0 ? 150 : 300);
    cfg.n_ph_max =
        n_ph_max > 0 ? n_ph_max : std::max(24, needed_fock_levels(cli.p.g_p));
    cfg.window_halfwidth = window;
    cfg.dt = dt;
    cfg.integrator_tol = tol;
    return cfg;
}

int run_oracle_exact(const Cli& cli, const jch::oracle::OracleConfig& cfg,
                     double t_max, int samples, bool compare) {
    cli.forbid_svg();
    if (!(std::isfinite(t_max) && t_max > 0))
        throw jch::validation_error("t-max must be positive");
    if (samples < 2) throw jch::validation_error("samples must be at least 2");
    const auto grid = jch::num::linspace(0.0, t_max, samples);

    if (compare) {
        const auto rep =
            jch::oracle::compare_oracle(cli.p, cfg, cli.init(), grid);
        if (cli.format == "csv") {
            std::string out = "t,C_master,C_oracle,abs_dC\n";
            for (std::size_t i = 0; i < rep.t.size(); ++i)
                out += g17(rep.t[i]) + "," + g17(rep.C_master[i]) + "," +
                       g17(rep.C_oracle[i]) + "," +
                       g17(std::abs(rep.C_master[i] - rep.C_oracle[i])) + "\n";
            emit(out, cli.out);
        } else {
            ojson j;
            j["schema"] = "jch.compare/1";
            j["params"] = params_json(cli.p);
            j["gamma_floor"] = rep.gamma_floor;
            j["max_abs_dC"] = rep.max_abs_dC;
            j["max_rel_dev_gamma"] = rep.max_rel_dev_gamma;
            j["halved_max_rel_dev_gamma"] = rep.halved_max_rel_dev_gamma;
            j["deviation_ratio"] = rep.deviation_ratio;
            j["t"] = rep.t;
            j["C_master"] = rep.C_master;
            j["C_oracle"] = rep.C_oracle;
            emit(j.dump(2) + "\n", cli.out);
        }
        std::fprintf(stderr,
                     "max|dC| = %.3e  rel_dev(gamma) = %.3e  halved = %.3e  "
                     "ratio = %.3g\n",
                     rep.max_abs_dC, rep.max_rel_dev_gamma,
                     rep.halved_max_rel_dev_gamma, rep.deviation_ratio);
        return 0;
    }

    const auto ev = jch::oracle::exact_evolution(cli.p, cfg, cli.init(), grid);
    if (cli.format == "csv") {
        std::string out = "t,rho00,rho01_re,rho01_im,C_l1\n";
        for (std::size_t i = 0; i < ev.t.size(); ++i) {
            const auto& rho = ev.rho[i];
            out += g17(ev.t[i]) + "," + g17(rho(0, 0).real()) + "," +
                   g17(rho(0, 1).real()) + "," + g17(rho(0, 1).imag()) + "," +
                   g17(2.0 * std::abs(rho(0, 1))) + "\n";
        }
        emit(out, cli.out);
    } else {
        ojson j;
        j["schema"] = "jch.oracle/1";
        j["params"] = params_json(cli.p);
        j["modes"] = cfg.modes;
        j["n_ph_max"] = cfg.n_ph_max;
        j["max_norm_drift"] = ev.max_norm_drift;
        j["max_top_level_population"] = ev.max_top_level_population;
        j["max_excitation_drift"] = ev.max_excitation_drift;
        j["t"] = ev.t;
        j["rho00"] = ojson::array();
        j["rho01_re"] = ojson::array();
        j["rho01_im"] = ojson::array();
        for (const auto& rho : ev.rho) {
            j["rho00"].push_back(rho(0, 0).real());
            j["rho01_re"].push_back(rho(0, 1).real());
            j["rho01_im"].push_back(rho(0, 1).imag());
        }
        emit(j.dump(2) + "\n", cli.out);
    }
    std::fprintf(stderr, "norm drift %.3e, cutoff leak %.3e, excitation drift %.3e\n",
                 ev.max_norm_drift, ev.max_top_level_population,
                 ev.max_excitation_drift);
    return 0;
}

int run_oracle_polaron(const Cli& cli, int n_ph_max) {
    cli.forbid_svg();
    const auto chk = jch::oracle::verify_polaron_transform(cli.p.g_p, n_ph_max);
    if (cli.format == "csv") {
        std::string out = "dev_dressing,dev_oscillator,dev_sigma_z,max_dev\n";
        out += g17(chk.dev_dressing) + "," + g17(chk.dev_oscillator) + "," +
               g17(chk.dev_sigma_z) + "," + g17(chk.max_dev) + "\n";
        emit(out, cli.out);
    } else {
        ojson j;
        j["schema"] = "jch.polaron/1";
        j["g_p"] = cli.p.g_p;
        j["n_ph_max"] = n_ph_max;
        j["dev_dressing"] = chk.dev_dressing;
        j["dev_oscillator"] = chk.dev_oscillator;
        j["dev_sigma_z"] = chk.dev_sigma_z;
        j["max_dev"] = chk.max_dev;
        emit(j.dump(2) + "\n", cli.out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Cli cli;
    CLI::App app{
        "Phonon-dressed amplitude damping: decay rates, coherence dynamics, "
        "backflow measure, parameter sweeps, and brute-force cross-checks."};
    app.footer(
        "Frequencies (lambda, delta, omega_ph, omega0) and couplings are in "
        "units of the reference decay rate gamma0; times are in its inverse "
        "units.");
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from an INI/TOML file")
        ->envname("JCH_CONFIG");

    app.add_option("--gamma0", cli.p.gamma0, "bare decay rate scale")
        ->capture_default_str();
    app.add_option("--lambda", cli.p.lambda, "spectral width of the cavity mode")
        ->capture_default_str();
    app.add_option("--delta", cli.p.delta, "qubit-cavity detuning")
        ->capture_default_str();
    app.add_option("--omega-ph", cli.p.omega_ph, "phonon frequency")
        ->capture_default_str();
    app.add_option("--g-p", cli.p.g_p, "dimensionless phonon coupling")
        ->capture_default_str();
    app.add_option("--omega0", cli.p.omega0, "qubit splitting")
        ->capture_default_str();
    app.add_option("--rel-tol", cli.trunc.rel_tol,
                   "sideband series truncation tolerance")
        ->capture_default_str();
    app.add_option("--max-terms", cli.trunc.max_terms,
                   "sideband series term cap")
        ->capture_default_str();
    app.add_option("--a-re", cli.a_re, "initial amplitude of the decaying level (real part)")
        ->capture_default_str();
    app.add_option("--a-im", cli.a_im, "initial amplitude of the decaying level (imaginary part)")
        ->capture_default_str();
    app.add_option("--b-re", cli.b_re, "initial amplitude of the stable level (real part)")
        ->capture_default_str();
    app.add_option("--b-im", cli.b_im, "initial amplitude of the stable level (imaginary part)")
        ->capture_default_str();
    app.add_option("--format", cli.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
    app.add_option("--out", cli.out, "write output to this file (default: stdout)");
    app.add_option("--out-dir", cli.out_dir, "directory for preset outputs")
        ->capture_default_str();
    app.add_option("--jobs", cli.jobs,
                   "worker threads for sweeps (0 = all, 1 = serial reference)")
        ->capture_default_str();

    double t_max_rates = 10.0, t_max_coh = 10.0, t_max_oracle = 20.0;
    int samples_rates = 1001, samples_coh = 1001, samples_oracle = 201;
    auto* rates_cmd =
        app.add_subcommand("rates", "time-dependent decay rate and frequency shift");
    rates_cmd->fallthrough();
    rates_cmd->add_option("--t-max", t_max_rates, "grid end time")
        ->capture_default_str();
    rates_cmd->add_option("--samples", samples_rates, "grid size including t=0")
        ->capture_default_str();

    auto* coh_cmd = app.add_subcommand("coherence", "l1 coherence trajectory");
    coh_cmd->fallthrough();
    coh_cmd->add_option("--t-max", t_max_coh, "grid end time")
        ->capture_default_str();
    coh_cmd->add_option("--samples", samples_coh, "grid size including t=0")
        ->capture_default_str();

    double horizon_nm = 50.0;
    jch::nonmarkov::ScanSpec scan;
    auto* nm_cmd = app.add_subcommand(
        "nonmarkov", "coherence-backflow measure over a finite horizon");
    nm_cmd->fallthrough();
    nm_cmd->add_option("--horizon", horizon_nm, "integration horizon")
        ->capture_default_str();
    nm_cmd->add_option("--step", scan.step, "sign-scan step (0 = auto)")
        ->capture_default_str();
    nm_cmd->add_option("--root-tol", scan.root_tol,
                       "root bisection tolerance (0 = auto)")
        ->capture_default_str();
    nm_cmd->add_option("--tail-tol", scan.tail_tol,
                       "horizon-tail convergence threshold")
        ->capture_default_str();

    std::string preset, mode_str = "nm_grid", axis1_str, axis2_str;
    double horizon_sweep = 50.0;
    int t_samples = 1001;
    jch::nonmarkov::ScanSpec sweep_scan;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "parameter sweeps over one or two axes");
    sweep_cmd->fallthrough();
    sweep_cmd->add_option("--preset", preset, "fig1, fig2, or fig3");
    sweep_cmd->add_option("--mode", mode_str, "sweep kind")
        ->check(CLI::IsMember({"nm_grid", "coherence_vs_time"}))
        ->capture_default_str();
    sweep_cmd->add_option("--axis1", axis1_str,
                          "first axis, name=lo:hi:n or name=v1,v2,...");
    sweep_cmd->add_option("--axis2", axis2_str, "second axis, same syntax");
    sweep_cmd->add_option("--horizon", horizon_sweep, "time horizon per cell")
        ->capture_default_str();
    sweep_cmd->add_option("--t-samples", t_samples,
                          "time samples per coherence series")
        ->capture_default_str();
    sweep_cmd->add_option("--step", sweep_scan.step, "sign-scan step (0 = auto)")
        ->capture_default_str();
    sweep_cmd->add_option("--tail-tol", sweep_scan.tail_tol,
                          "horizon-tail convergence threshold")
        ->capture_default_str();

    auto* oracle_cmd = app.add_subcommand(
        "oracle", "independent cross-checks of the analytic pipeline");
    oracle_cmd->fallthrough();
    oracle_cmd->require_subcommand(1);

    double quad_t = 1.0, quad_tol = 1e-10;
    auto* quad_cmd = oracle_cmd->add_subcommand(
        "quadrature", "adaptive-quadrature check of the sideband series");
    quad_cmd->fallthrough();
    quad_cmd->add_option("--t", quad_t, "evaluation time")->capture_default_str();
    quad_cmd->add_option("--quad-tol", quad_tol, "quadrature error budget")
        ->capture_default_str();

    int modes = 0, n_ph_max = 0, polaron_levels = 40;
    double window = 0.0, dt = 0.0, integ_tol = 1e-8;
    bool compare = false;
    auto* exact_cmd = oracle_cmd->add_subcommand(
        "exact", "brute-force wavefunction evolution of the full model");
    exact_cmd->fallthrough();
    exact_cmd->add_option("--t-max", t_max_oracle, "grid end time")
        ->capture_default_str();
    exact_cmd->add_option("--samples", samples_oracle, "grid size including t=0")
        ->capture_default_str();
    exact_cmd->add_option("--modes", modes,
                          "bath modes (0 = auto: 300, or 150 for g_p >= 2)");
    exact_cmd->add_option("--n-ph-max", n_ph_max, "phonon Fock cutoff (0 = auto)");
    exact_cmd->add_option("--window", window,
                          "bath half-width (0 = auto: 25 lambda)");
    exact_cmd->add_option("--dt", dt, "integrator step (0 = auto)");
    exact_cmd->add_option("--tol", integ_tol, "norm-drift / leakage alarm")
        ->capture_default_str();
    exact_cmd->add_flag("--compare", compare,
                        "compare against the analytic prediction at gamma0 "
                        "and gamma0/2");

    auto* polaron_cmd = oracle_cmd->add_subcommand(
        "polaron", "operator identities of the displacement transform");
    polaron_cmd->fallthrough();
    polaron_cmd->add_option("--n-ph-max", polaron_levels, "phonon Fock cutoff")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (rates_cmd->parsed()) return run_rates(cli, t_max_rates, samples_rates);
        if (coh_cmd->parsed()) return run_coherence(cli, t_max_coh, samples_coh);
        if (nm_cmd->parsed()) return run_nonmarkov(cli, horizon_nm, scan);
        if (sweep_cmd->parsed()) {
            // Explicitly-set model flags override every preset panel; if one
            // of them is the panel parameter itself the family collapses.
            std::vector<std::pair<std::string, double>> overrides;
            if (app.count("--gamma0")) overrides.emplace_back("gamma0", cli.p.gamma0);
            if (app.count("--lambda")) overrides.emplace_back("lambda", cli.p.lambda);
            if (app.count("--delta")) overrides.emplace_back("delta", cli.p.delta);
            if (app.count("--omega-ph")) overrides.emplace_back("omega_ph", cli.p.omega_ph);
            if (app.count("--g-p")) overrides.emplace_back("g_p", cli.p.g_p);
            if (app.count("--omega0")) overrides.emplace_back("omega0", cli.p.omega0);
            return run_sweep_cmd(cli, preset, mode_str, axis1_str, axis2_str,
                                 horizon_sweep, t_samples, sweep_scan,
                                 overrides);
        }
        if (quad_cmd->parsed()) return run_oracle_quadrature(cli, quad_t, quad_tol);
        if (exact_cmd->parsed())
            return run_oracle_exact(
                cli,
                resolve_oracle_config(cli, modes, n_ph_max, window, dt, integ_tol),
                t_max_oracle, samples_oracle, compare);
        if (polaron_cmd->parsed()) return run_oracle_polaron(cli, polaron_levels);
        std::fprintf(stderr, "no subcommand selected\n");
        return 1;
    } catch (const jch::convergence_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const jch::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
