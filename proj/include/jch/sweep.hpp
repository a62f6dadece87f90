#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jch/dynamics.hpp"
#include "jch/model.hpp"
#include "jch/nonmarkov.hpp"
#include "jch/rates.hpp"

namespace jch::sweep {

// A named parameter axis. Valid names: lambda, delta, g_p, omega_ph, gamma0.
struct AxisSpec {
    std::string name;
    std::vector<double> values; // finite, strictly increasing, nonempty

    static AxisSpec linspace(const std::string& name, double lo, double hi,
                             int n);
    static AxisSpec list(const std::string& name, std::vector<double> values);
};

enum class SweepMode {
    coherence_vs_time, // C_l1 trajectories, one series per axis combination
    nm_grid,           // backflow measure N, one value per grid cell
};

struct SweepSpec {
    SweepMode mode = SweepMode::nm_grid;
    AxisSpec axis1;
    std::optional<AxisSpec> axis2; // required (size >= 2) in nm_grid mode
    model::ModelParams base{};
    dynamics::InitialAmplitudes init = dynamics::InitialAmplitudes::equatorial();
    double time_horizon = 50.0;
    int t_samples = 1001; // coherence mode: uniform grid size incl. t = 0
    rates::TruncationSpec trunc{};
    nonmarkov::ScanSpec scan{};
};

// Row-major over (axis1, axis2); a failed cell keeps NaN values plus a
// per-cell flag instead of aborting the sweep.
struct GridResult {
    SweepSpec spec;
    std::vector<double> t;      // coherence mode: shared time grid
    std::vector<double> values; // nm: n1*n2;  coherence: n1*n2*t_samples
    std::vector<unsigned char> converged; // nm mode, per cell
    std::vector<std::string> flags;       // per cell; empty string = clean
    std::size_t n1 = 0;
    std::size_t n2 = 1;
};

// jobs: 0 = all available threads, 1 = strictly serial reference path
// (nested kernels pinned to one thread too), n = that many threads.
// Output bytes are identical for every jobs value: cells are independent
// and each cell's arithmetic is order-fixed.
GridResult run_coherence_series(const SweepSpec& spec, int jobs = 0);
GridResult run_nm_grid(const SweepSpec& spec, int jobs = 0);
GridResult run_sweep(const SweepSpec& spec, int jobs = 0);

enum class OutputFormat { csv, json, svg };

// csv: flat rows, "%.17g", RFC-4180 quoting, LF endings.
// json: {schema, params, axes, values, flags[, converged]}, NaN -> null.
// svg: heatmap (nm) or line plot (coherence), self-contained SVG 1.1.
std::string to_csv(const GridResult& res);
std::string to_json(const GridResult& res);
std::string to_svg(const GridResult& res);
std::string serialize_result(const GridResult& res, OutputFormat fmt);

// FNV-1a 64-bit over the canonical parameter+axes JSON; stable across runs
// and platforms, used to fingerprint output files.
std::uint64_t spec_hash(const SweepSpec& spec);

struct PresetPanel {
    std::string label; // e.g. "gp0"; panels differ in one base parameter
    SweepSpec spec;
};

struct PresetFamily {
    std::string name;
    std::string description;
    std::string panel_param;  // base-parameter field the panels vary
    std::string label_prefix; // labels are label_prefix + value
    std::vector<PresetPanel> panels;
};

// Canned sweep families:
//   fig1: coherence trajectories over lambda x delta, panels g_p = 0 / 2
//   fig2: N over (delta, lambda), panels g_p = 0 / 2
//   fig3: N over (lambda, g_p), panels delta = 0 / 1 / 10
const std::vector<PresetFamily>& presets();

// "<preset>-<panel>-<hash16>.<ext>"
std::string output_basename(const std::string& preset, const PresetPanel& panel,
                            OutputFormat fmt);

} // namespace jch::sweep
