#include "jch/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

#include "jch/errors.hpp"
#include "jch/numerics.hpp"

namespace jch::sweep {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_axis(const AxisSpec& a) {
    static const char* known[] = {"lambda", "delta", "g_p", "omega_ph",
                                  "gamma0"};
    if (std::find_if(std::begin(known), std::end(known), [&](const char* n) {
            return a.name == n;
        }) == std::end(known))
        throw validation_error("unknown axis name: " + a.name);
    if (a.values.empty())
        throw validation_error("axis must have at least one value");
    double prev = -std::numeric_limits<double>::infinity();
    for (double v : a.values) {
        if (!(std::isfinite(v) && v > prev))
            throw validation_error(
                "axis values must be finite and strictly increasing");
        prev = v;
    }
}

void apply_axis(model::ModelParams& p, const std::string& name, double v) {
    if (name == "lambda")
        p.lambda = v;
    else if (name == "delta")
        p.delta = v;
    else if (name == "g_p")
        p.g_p = v;
    else if (name == "omega_ph")
        p.omega_ph = v;
    else if (name == "gamma0")
        p.gamma0 = v;
    else
        throw validation_error("unknown axis name: " + name);
}

void check_common(const SweepSpec& spec) {
    check_axis(spec.axis1);
    if (spec.axis2) check_axis(*spec.axis2);
    if (!(std::isfinite(spec.time_horizon) && spec.time_horizon > 0.0))
        throw validation_error("time_horizon must be positive");
    dynamics::InitialAmplitudes::checked(spec.init.a, spec.init.b);
}

// Cells are independent and internally order-fixed, so any thread count
// produces the same bytes. jobs == 1 opens a one-thread parallel region:
// omp_in_parallel() is then true inside, which pins nested kernels to a
// single thread as well — a genuine serial reference path.
template <typename F>
void for_cells(std::size_t count, int jobs, F&& body) {
    if (jobs < 0) throw validation_error("jobs must be nonnegative");
    const int nt = jobs == 0 ? omp_get_max_threads() : jobs;
    if (nt <= 1) {
#pragma omp parallel num_threads(1)
#pragma omp single
        {
            for (std::size_t i = 0; i < count; ++i) body(i);
        }
    } else {
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i)
            body(static_cast<std::size_t>(i));
    }
}

void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += "\"";
    return q;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ojson header_json(const SweepSpec& s) {
    ojson j;
    j["schema"] = "jch.sweep/1";
    ojson p;
    p["mode"] =
        s.mode == SweepMode::nm_grid ? "nm_grid" : "coherence_vs_time";
    p["gamma0"] = s.base.gamma0;
    p["lambda"] = s.base.lambda;
    p["delta"] = s.base.delta;
    p["omega_ph"] = s.base.omega_ph;
    p["g_p"] = s.base.g_p;
    p["omega0"] = s.base.omega0;
    p["init_a"] = {s.init.a.real(), s.init.a.imag()};
    p["init_b"] = {s.init.b.real(), s.init.b.imag()};
    p["time_horizon"] = s.time_horizon;
    if (s.mode == SweepMode::coherence_vs_time) p["t_samples"] = s.t_samples;
    p["rel_tol"] = s.trunc.rel_tol;
    p["max_terms"] = s.trunc.max_terms;
    if (s.mode == SweepMode::nm_grid) {
        p["scan_step"] = s.scan.step;
        p["root_tol"] = s.scan.root_tol;
        p["tail_tol"] = s.scan.tail_tol;
    }
    j["params"] = p;
    ojson axes = ojson::array();
    axes.push_back({{"name", s.axis1.name}, {"values", s.axis1.values}});
    if (s.axis2)
        axes.push_back({{"name", s.axis2->name}, {"values", s.axis2->values}});
    j["axes"] = axes;
    return j;
}

} // namespace

AxisSpec AxisSpec::linspace(const std::string& name, double lo, double hi,
                            int n) {
    if (n < 1) throw validation_error("axis must have at least one value");
    return list(name, num::linspace(lo, hi, static_cast<std::size_t>(n)));
}

AxisSpec AxisSpec::list(const std::string& name, std::vector<double> values) {
    AxisSpec a{name, std::move(values)};
    check_axis(a);
    return a;
}

GridResult run_coherence_series(const SweepSpec& spec, int jobs) {
    if (spec.mode != SweepMode::coherence_vs_time)
        throw validation_error("sweep mode must be coherence_vs_time");
    check_common(spec);
    if (spec.t_samples < 1)
        throw validation_error("t_samples must be at least 1");

    GridResult r;
    r.spec = spec;
    r.n1 = spec.axis1.values.size();
    r.n2 = spec.axis2 ? spec.axis2->values.size() : 1;
    const std::size_t nt = static_cast<std::size_t>(spec.t_samples);
    const double h = nt > 1 ? spec.time_horizon / static_cast<double>(nt - 1)
                            : 1.0; // placeholder step for a single sample
    r.t.resize(nt);
    for (std::size_t k = 0; k < nt; ++k)
        r.t[k] = nt > 1 ? static_cast<double>(k) * h : 0.0;
    r.values.assign(r.n1 * r.n2 * nt, kNaN);
    r.flags.assign(r.n1 * r.n2, "");

    for_cells(r.n1 * r.n2, jobs, [&](std::size_t idx) {
        const std::size_t i = idx / r.n2, j = idx % r.n2;
        try {
            model::ModelParams p = spec.base;
            apply_axis(p, spec.axis1.name, spec.axis1.values[i]);
            if (spec.axis2)
                apply_axis(p, spec.axis2->name, spec.axis2->values[j]);
            model::validate_params(p);
            const auto traj = dynamics::coherence_trajectory(
                spec.init, p, 0.0, h, nt, spec.trunc);
            std::copy(traj.begin(), traj.end(), r.values.begin() + idx * nt);
        } catch (const std::exception& e) {
            r.flags[idx] = e.what();
        } catch (...) {
            r.flags[idx] = "unknown error";
        }
    });
    return r;
}

GridResult run_nm_grid(const SweepSpec& spec, int jobs) {
    if (spec.mode != SweepMode::nm_grid)
        throw validation_error("sweep mode must be nm_grid");
    check_common(spec);
    if (!spec.axis2)
        throw validation_error("nm_grid requires two axes");
    if (spec.axis1.values.size() < 2 || spec.axis2->values.size() < 2)
        throw validation_error("nm_grid axes must each have at least 2 values");

    GridResult r;
    r.spec = spec;
    r.n1 = spec.axis1.values.size();
    r.n2 = spec.axis2->values.size();
    r.values.assign(r.n1 * r.n2, kNaN);
    r.converged.assign(r.n1 * r.n2, 0);
    r.flags.assign(r.n1 * r.n2, "");

    for_cells(r.n1 * r.n2, jobs, [&](std::size_t idx) {
        const std::size_t i = idx / r.n2, j = idx % r.n2;
        try {
            model::ModelParams p = spec.base;
            apply_axis(p, spec.axis1.name, spec.axis1.values[i]);
            apply_axis(p, spec.axis2->name, spec.axis2->values[j]);
            model::validate_params(p);
            const auto rep = nonmarkov::nonmarkovianity(
                p, spec.init, spec.time_horizon, spec.trunc, spec.scan);
            r.values[idx] = rep.N;
            r.converged[idx] = rep.converged ? 1 : 0;
            if (rep.aliasing_risk) r.flags[idx] = "aliasing_risk";
        } catch (const std::exception& e) {
            r.flags[idx] = e.what();
        } catch (...) {
            r.flags[idx] = "unknown error";
        }
    });
    return r;
}

GridResult run_sweep(const SweepSpec& spec, int jobs) {
    return spec.mode == SweepMode::nm_grid ? run_nm_grid(spec, jobs)
                                           : run_coherence_series(spec, jobs);
}

std::string to_csv(const GridResult& r) {
    const SweepSpec& s = r.spec;
    std::string out;
    if (s.mode == SweepMode::nm_grid) {
        out += s.axis1.name + "," + s.axis2->name + ",N,converged,flag\n";
        for (std::size_t i = 0; i < r.n1; ++i)
            for (std::size_t j = 0; j < r.n2; ++j) {
                const std::size_t idx = i * r.n2 + j;
                append_g17(out, s.axis1.values[i]);
                out += ',';
                append_g17(out, s.axis2->values[j]);
                out += ',';
                append_g17(out, r.values[idx]);
                out += ',';
                out += r.converged[idx] ? '1' : '0';
                out += ',';
                out += csv_field(r.flags[idx]);
                out += '\n';
            }
        return out;
    }
    out += s.axis1.name;
    if (s.axis2) out += "," + s.axis2->name;
    out += ",t,C_l1,flag\n";
    const std::size_t nt = r.t.size();
    for (std::size_t i = 0; i < r.n1; ++i)
        for (std::size_t j = 0; j < r.n2; ++j) {
            const std::size_t idx = i * r.n2 + j;
            for (std::size_t k = 0; k < nt; ++k) {
                append_g17(out, s.axis1.values[i]);
                out += ',';
                if (s.axis2) {
                    append_g17(out, s.axis2->values[j]);
                    out += ',';
                }
                append_g17(out, r.t[k]);
                out += ',';
                append_g17(out, r.values[idx * nt + k]);
                out += ',';
                out += csv_field(r.flags[idx]);
                out += '\n';
            }
        }
    return out;
}

std::string to_json(const GridResult& r) {
    ojson j = header_json(r.spec);
    if (r.spec.mode == SweepMode::coherence_vs_time)
        j["axes"].push_back({{"name", "t"}, {"values", r.t}});

    const std::size_t per_cell =
        r.spec.mode == SweepMode::coherence_vs_time ? r.t.size() : 1;
    ojson values = ojson::array();
    ojson flags = ojson::array();
    for (std::size_t i = 0; i < r.n1; ++i) {
        ojson row_v = ojson::array();
        ojson row_f = ojson::array();
        for (std::size_t j = 0; j < r.n2; ++j) {
            const std::size_t idx = i * r.n2 + j;
            if (per_cell == 1) {
                row_v.push_back(r.values[idx]);
            } else {
                ojson series = ojson::array();
                for (std::size_t k = 0; k < per_cell; ++k)
                    series.push_back(r.values[idx * per_cell + k]);
                row_v.push_back(std::move(series));
            }
            row_f.push_back(r.flags[idx]);
        }
        values.push_back(std::move(row_v));
        flags.push_back(std::move(row_f));
    }
    j["values"] = std::move(values);
    j["flags"] = std::move(flags);
    if (r.spec.mode == SweepMode::nm_grid) {
        ojson conv = ojson::array();
        for (std::size_t i = 0; i < r.n1; ++i) {
            ojson row = ojson::array();
            for (std::size_t j = 0; j < r.n2; ++j)
                row.push_back(r.converged[i * r.n2 + j] != 0);
            conv.push_back(std::move(row));
        }
        j["converged"] = std::move(conv);
    }
    return j.dump(2) + "\n";
}

namespace {

void append_num(std::string& out, double v, const char* fmt = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, fmt, v);
    out += buf;
}

std::string rgb(double r, double g, double b) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(r)),
                  static_cast<int>(std::lround(g)),
                  static_cast<int>(std::lround(b)));
    return buf;
}

// Monotone single-hue ramp, light to dark.
std::string blues(double u) {
    u = std::min(1.0, std::max(0.0, u));
    // stops: #f7fbff -> #6baed6 -> #08306b
    const double s0[3] = {0xf7, 0xfb, 0xff};
    const double s1[3] = {0x6b, 0xae, 0xd6};
    const double s2[3] = {0x08, 0x30, 0x6b};
    const double* lo = u < 0.5 ? s0 : s1;
    const double* hi = u < 0.5 ? s1 : s2;
    const double w = u < 0.5 ? 2.0 * u : 2.0 * u - 1.0;
    return rgb(lo[0] + w * (hi[0] - lo[0]), lo[1] + w * (hi[1] - lo[1]),
               lo[2] + w * (hi[2] - lo[2]));
}

const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                            "#bcbd22", "#17becf"};

void svg_text(std::string& out, double x, double y, const std::string& body,
              const char* extra = "") {
    out += "<text x=\"";
    append_num(out, x, "%.1f");
    out += "\" y=\"";
    append_num(out, y, "%.1f");
    out += "\" ";
    out += extra;
    out += ">";
    out += body;
    out += "</text>\n";
}

std::string svg_heatmap(const GridResult& r) {
    const AxisSpec& a1 = r.spec.axis1;
    const AxisSpec& a2 = *r.spec.axis2;
    const double ml = 70, mt = 40, mr = 130, mb = 60;
    const double pw = 480, ph = 400;
    const double W = ml + pw + mr, H = mt + ph + mb;

    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (double v : r.values)
        if (std::isfinite(v)) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    if (!(vmax >= vmin)) {
        vmin = 0;
        vmax = 1;
    }
    const double span = vmax > vmin ? vmax - vmin : 1.0;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    append_num(s, W, "%.0f");
    s += "\" height=\"";
    append_num(s, H, "%.0f");
    s += "\" viewBox=\"0 0 ";
    append_num(s, W, "%.0f");
    s += " ";
    append_num(s, H, "%.0f");
    s += "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg_text(s, ml + pw / 2, 22, "coherence backflow N",
             "text-anchor=\"middle\" font-size=\"14\"");

    s += "<g shape-rendering=\"crispEdges\">\n";
    const double cw = pw / static_cast<double>(r.n1);
    const double ch = ph / static_cast<double>(r.n2);
    for (std::size_t i = 0; i < r.n1; ++i)
        for (std::size_t j = 0; j < r.n2; ++j) {
            const double v = r.values[i * r.n2 + j];
            const std::string fill =
                std::isfinite(v) ? blues((v - vmin) / span) : "#cccccc";
            s += "<rect class=\"cell\" x=\"";
            append_num(s, ml + i * cw, "%.2f");
            s += "\" y=\"";
            append_num(s, mt + (r.n2 - 1 - j) * ch, "%.2f");
            s += "\" width=\"";
            append_num(s, cw, "%.2f");
            s += "\" height=\"";
            append_num(s, ch, "%.2f");
            s += "\" fill=\"" + fill + "\"/>\n";
        }
    s += "</g>\n";

    // axis names and end-point ticks
    svg_text(s, ml + pw / 2, H - 16, a1.name, "text-anchor=\"middle\"");
    {
        std::string label;
        append_num(label, a1.values.front());
        svg_text(s, ml, mt + ph + 16, label, "text-anchor=\"middle\"");
        label.clear();
        append_num(label, a1.values.back());
        svg_text(s, ml + pw, mt + ph + 16, label, "text-anchor=\"middle\"");
    }
    {
        std::string extra = "text-anchor=\"middle\" transform=\"rotate(-90 18 ";
        append_num(extra, mt + ph / 2, "%.1f");
        extra += ")\"";
        svg_text(s, 18, mt + ph / 2, a2.name, extra.c_str());
        std::string label;
        append_num(label, a2.values.front());
        svg_text(s, ml - 6, mt + ph, label, "text-anchor=\"end\"");
        label.clear();
        append_num(label, a2.values.back());
        svg_text(s, ml - 6, mt + 12, label, "text-anchor=\"end\"");
    }

    // colorbar
    const double cb_x = ml + pw + 40, cb_w = 18;
    const int segs = 64;
    s += "<g shape-rendering=\"crispEdges\">\n";
    for (int k = 0; k < segs; ++k) {
        const double u = (k + 0.5) / segs;
        s += "<rect x=\"";
        append_num(s, cb_x, "%.1f");
        s += "\" y=\"";
        append_num(s, mt + ph - (k + 1) * ph / segs, "%.2f");
        s += "\" width=\"";
        append_num(s, cb_w, "%.1f");
        s += "\" height=\"";
        append_num(s, ph / segs + 0.5, "%.2f");
        s += "\" fill=\"" + blues(u) + "\"/>\n";
    }
    s += "</g>\n";
    {
        std::string label;
        append_num(label, vmin, "%.3g");
        svg_text(s, cb_x + cb_w + 6, mt + ph, label, "");
        label.clear();
        append_num(label, vmax, "%.3g");
        svg_text(s, cb_x + cb_w + 6, mt + 12, label, "");
    }
    s += "</svg>\n";
    return s;
}

std::string svg_lines(const GridResult& r) {
    const AxisSpec& a1 = r.spec.axis1;
    const double ml = 70, mt = 40, mr = 190, mb = 60;
    const double pw = 520, ph = 400;
    const double W = ml + pw + mr, H = mt + ph + mb;
    const std::size_t nt = r.t.size();

    const double t0 = r.t.front();
    const double t1 = r.t.back();
    const double tspan = t1 > t0 ? t1 - t0 : 1.0;
    double ymax = 0.0;
    for (double v : r.values)
        if (std::isfinite(v)) ymax = std::max(ymax, v);
    if (ymax <= 0.0) ymax = 1.0;

    auto px = [&](double t) { return ml + (t - t0) / tspan * pw; };
    auto py = [&](double v) { return mt + ph - v / ymax * ph; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    append_num(s, W, "%.0f");
    s += "\" height=\"";
    append_num(s, H, "%.0f");
    s += "\" viewBox=\"0 0 ";
    append_num(s, W, "%.0f");
    s += " ";
    append_num(s, H, "%.0f");
    s += "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg_text(s, ml + pw / 2, 22, "l1 coherence vs time",
             "text-anchor=\"middle\" font-size=\"14\"");
    s += "<rect x=\"";
    append_num(s, ml, "%.1f");
    s += "\" y=\"";
    append_num(s, mt, "%.1f");
    s += "\" width=\"";
    append_num(s, pw, "%.1f");
    s += "\" height=\"";
    append_num(s, ph, "%.1f");
    s += "\" fill=\"none\" stroke=\"#444444\"/>\n";

    std::size_t series = 0;
    for (std::size_t i = 0; i < r.n1; ++i)
        for (std::size_t j = 0; j < r.n2; ++j, ++series) {
            const char* color = kPalette[series % 10];
            const double* v = r.values.data() + (i * r.n2 + j) * nt;
            std::size_t k = 0;
            while (k < nt) {
                while (k < nt && !std::isfinite(v[k])) ++k;
                std::size_t run = k;
                while (run < nt && std::isfinite(v[run])) ++run;
                if (run - k >= 2) {
                    s += "<polyline fill=\"none\" stroke=\"";
                    s += color;
                    s += "\" stroke-width=\"1.2\" points=\"";
                    for (std::size_t q = k; q < run; ++q) {
                        append_num(s, px(r.t[q]), "%.2f");
                        s += ",";
                        append_num(s, py(v[q]), "%.2f");
                        if (q + 1 < run) s += " ";
                    }
                    s += "\"/>\n";
                } else if (run - k == 1) {
                    s += "<circle r=\"2\" fill=\"";
                    s += color;
                    s += "\" cx=\"";
                    append_num(s, px(r.t[k]), "%.2f");
                    s += "\" cy=\"";
                    append_num(s, py(v[k]), "%.2f");
                    s += "\"/>\n";
                }
                k = run;
            }
            // legend
            std::string label = a1.name + "=";
            append_num(label, a1.values[i], "%g");
            if (r.spec.axis2) {
                label += " " + r.spec.axis2->name + "=";
                append_num(label, r.spec.axis2->values[j], "%g");
            }
            const double ly = mt + 10 + 16.0 * static_cast<double>(series);
            if (ly < mt + ph) {
                s += "<rect x=\"";
                append_num(s, ml + pw + 16, "%.1f");
                s += "\" y=\"";
                append_num(s, ly - 8, "%.1f");
                s += "\" width=\"12\" height=\"12\" fill=\"";
                s += color;
                s += "\"/>\n";
                svg_text(s, ml + pw + 32, ly + 2, label, "");
            }
        }

    svg_text(s, ml + pw / 2, H - 16, "t", "text-anchor=\"middle\"");
    {
        std::string extra = "text-anchor=\"middle\" transform=\"rotate(-90 18 ";
        append_num(extra, mt + ph / 2, "%.1f");
        extra += ")\"";
        svg_text(s, 18, mt + ph / 2, "C_l1", extra.c_str());
    }
    {
        std::string label;
        append_num(label, t0);
        svg_text(s, ml, mt + ph + 16, label, "text-anchor=\"middle\"");
        label.clear();
        append_num(label, t1);
        svg_text(s, ml + pw, mt + ph + 16, label, "text-anchor=\"middle\"");
        label.clear();
        append_num(label, 0.0);
        svg_text(s, ml - 6, mt + ph + 4, label, "text-anchor=\"end\"");
        label.clear();
        append_num(label, ymax, "%.3g");
        svg_text(s, ml - 6, mt + 12, label, "text-anchor=\"end\"");
    }
    s += "</svg>\n";
    return s;
}

} // namespace

std::string to_svg(const GridResult& r) {
    return r.spec.mode == SweepMode::nm_grid ? svg_heatmap(r) : svg_lines(r);
}

std::string serialize_result(const GridResult& res, OutputFormat fmt) {
    switch (fmt) {
        case OutputFormat::csv: return to_csv(res);
        case OutputFormat::json: return to_json(res);
        case OutputFormat::svg: return to_svg(res);
    }
    throw validation_error("unknown output format");
}

std::uint64_t spec_hash(const SweepSpec& spec) {
    return fnv1a64(header_json(spec).dump());
}

const std::vector<PresetFamily>& presets() {
    static const std::vector<PresetFamily> fams = [] {
        std::vector<PresetFamily> v;
        {
            PresetFamily fam;
            fam.name = "fig1";
            fam.description =
                "coherence trajectories across cavity widths and detunings";
            fam.panel_param = "g_p";
            fam.label_prefix = "gp";
            for (double gp : {0.0, 2.0}) {
                SweepSpec s;
                s.mode = SweepMode::coherence_vs_time;
                s.axis1 = AxisSpec::list("lambda", {0.1, 0.3, 0.5, 1.0, 10.0});
                s.axis2 = AxisSpec::list("delta", {0.0, 1.0, 10.0});
                s.base.g_p = gp;
                s.time_horizon = 50.0;
                s.t_samples = 2001;
                fam.panels.push_back({gp == 0.0 ? "gp0" : "gp2", s});
            }
            v.push_back(std::move(fam));
        }
        {
            PresetFamily fam;
            fam.name = "fig2";
            fam.description =
                "backflow measure over detuning and cavity width";
            fam.panel_param = "g_p";
            fam.label_prefix = "gp";
            for (double gp : {0.0, 2.0}) {
                SweepSpec s;
                s.mode = SweepMode::nm_grid;
                s.axis1 = AxisSpec::linspace("delta", 0.0, 10.0, 60);
                s.axis2 = AxisSpec::linspace("lambda", 0.02, 2.0, 60);
                s.base.g_p = gp;
                s.time_horizon = 50.0;
                fam.panels.push_back({gp == 0.0 ? "gp0" : "gp2", s});
            }
            v.push_back(std::move(fam));
        }
        {
            PresetFamily fam;
            fam.name = "fig3";
            fam.description =
                "backflow measure over cavity width and phonon coupling";
            fam.panel_param = "delta";
            fam.label_prefix = "delta";
            for (double d : {0.0, 1.0, 10.0}) {
                SweepSpec s;
                s.mode = SweepMode::nm_grid;
                s.axis1 = AxisSpec::linspace("lambda", 0.02, 2.0, 60);
                s.axis2 = AxisSpec::linspace("g_p", 0.0, 3.0, 60);
                s.base.delta = d;
                s.time_horizon = 50.0;
                char label[24];
                std::snprintf(label, sizeof label, "delta%g", d);
                fam.panels.push_back({label, s});
            }
            v.push_back(std::move(fam));
        }
        return v;
    }();
    return fams;
}

std::string output_basename(const std::string& preset,
                            const PresetPanel& panel, OutputFormat fmt) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(spec_hash(panel.spec)));
    const char* ext = fmt == OutputFormat::csv    ? "csv"
                      : fmt == OutputFormat::json ? "json"
                                                  : "svg";
    return preset + "-" + panel.label + "-" + hex + "." + ext;
}

} // namespace jch::sweep
