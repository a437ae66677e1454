// SPDX-License-Identifier: Apache-2.0
#include "zwm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "zwm/helstrom.hpp"
#include "zwm/oracle.hpp"
#include "zwm/shot_sim.hpp"
#include "zwm/thermal.hpp"
#include "zwm/usd_idp.hpp"
#include "zwm/zwm_model.hpp"

namespace zwm {

namespace {

std::string fmt6(double x) {
    char b[40];
    std::snprintf(b, sizeof(b), "%.6f", x);
    return b;
}

std::string fmt2(double x) {
    char b[40];
    std::snprintf(b, sizeof(b), "%.2f", x);
    return b;
}

std::string fmt_sci(double x) {
    char b[40];
    std::snprintf(b, sizeof(b), "%.3e", x);
    return b;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out.good()) throw IoError("write to '" + path + "' failed");
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ZWM_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 1;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRecord>& rows,
                      const std::vector<std::string>& header_comments) {
    const bool with_thermal = !rows.empty() && rows.front().fidelity.has_value();
    std::string out;
    for (const std::string& c : header_comments) out += "# " + c + "\n";
    out += "T_power,t_amp,V,D,p_err_min,p_inc_opt";
    if (with_thermal) out += ",fidelity,chain_holds";
    out += "\n";
    for (const SweepRecord& r : rows) {
        out += fmt6(r.T_power) + "," + fmt6(r.t_amp) + "," + fmt6(r.V) + "," + fmt6(r.D) + "," +
               fmt6(r.p_err_min) + "," + fmt6(r.p_inc_opt);
        if (with_thermal) {
            out += "," + fmt6(r.fidelity.value());
            out += std::string(",") + (r.chain_holds.value_or(false) ? "1" : "0");
        }
        out += "\n";
    }
    return out;
}

std::string sweep_json_text(const std::vector<SweepRecord>& rows, const std::string& axis) {
    nlohmann::json j;
    j["axis"] = axis;
    j["records"] = nlohmann::json::array();
    for (const SweepRecord& r : rows) {
        nlohmann::json rec;
        rec["T_power"] = r.T_power;
        rec["t_amp"] = r.t_amp;
        rec["V"] = r.V;
        rec["D"] = r.D;
        rec["p_err_min"] = r.p_err_min;
        rec["p_inc_opt"] = r.p_inc_opt;
        if (r.fidelity) rec["fidelity"] = *r.fidelity;
        if (r.chain_holds) rec["chain_holds"] = *r.chain_holds;
        j["records"].push_back(rec);
    }
    return j.dump(2) + "\n";
}

std::string render_svg(const std::vector<SvgSeries>& series, const std::string& x_label,
                       const std::string& y_label, const std::string& title) {
    constexpr double x0 = 70.0, x1 = 610.0, y0 = 430.0, y1 = 50.0;
    const auto px = [&](double u) { return x0 + (x1 - x0) * std::clamp(u, 0.0, 1.0); };
    const auto py = [&](double v) { return y0 + (y1 - y0) * std::clamp(v, 0.0, 1.0); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\">" + title + "</text>\n";
    s += "<path d=\"M " + fmt2(x0) + " " + fmt2(y0) + " L " + fmt2(x1) + " " + fmt2(y0) +
         "\" stroke=\"#000000\" fill=\"none\"/>\n";
    s += "<path d=\"M " + fmt2(x0) + " " + fmt2(y0) + " L " + fmt2(x0) + " " + fmt2(y1) +
         "\" stroke=\"#000000\" fill=\"none\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double f = 0.25 * k;
        s += "<path d=\"M " + fmt2(px(f)) + " " + fmt2(y0) + " L " + fmt2(px(f)) + " " +
             fmt2(y0 + 5.0) + "\" stroke=\"#000000\" fill=\"none\"/>\n";
        s += "<text x=\"" + fmt2(px(f)) + "\" y=\"" + fmt2(y0 + 18.0) +
             "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" + fmt2(f) +
             "</text>\n";
        s += "<path d=\"M " + fmt2(x0) + " " + fmt2(py(f)) + " L " + fmt2(x0 - 5.0) + " " +
             fmt2(py(f)) + "\" stroke=\"#000000\" fill=\"none\"/>\n";
        s += "<text x=\"" + fmt2(x0 - 8.0) + "\" y=\"" + fmt2(py(f) + 4.0) +
             "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" + fmt2(f) +
             "</text>\n";
    }
    s += "<text x=\"" + fmt2(0.5 * (x0 + x1)) + "\" y=\"468\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"12\">" + x_label + "</text>\n";
    s += "<text x=\"" + fmt2(x0) + "\" y=\"40\" text-anchor=\"start\" "
         "font-family=\"monospace\" font-size=\"12\">" + y_label + "</text>\n";

    for (const SvgSeries& ser : series) {
        s += "<polyline fill=\"none\" stroke=\"" + ser.color + "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& [u, v] : ser.points) {
            if (!first) s += " ";
            s += fmt2(px(u)) + "," + fmt2(py(v));
            first = false;
        }
        s += "\"/>\n";
    }
    double ly = 60.0;
    for (const SvgSeries& ser : series) {
        s += "<path d=\"M 480.00 " + fmt2(ly) + " L 510.00 " + fmt2(ly) + "\" stroke=\"" +
             ser.color + "\" stroke-width=\"1.5\" fill=\"none\"/>\n";
        s += "<text x=\"515.00\" y=\"" + fmt2(ly + 4.0) +
             "\" font-family=\"monospace\" font-size=\"11\">" + ser.name + "</text>\n";
        ly += 18.0;
    }
    s += "</svg>\n";
    return s;
}

std::vector<std::pair<double, double>> parse_reference_csv(const std::string& text) {
    std::vector<std::pair<double, double>> points;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
            trimmed.pop_back();
        std::size_t start = trimmed.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        if (trimmed[start] == '#') continue;
        const std::size_t comma = trimmed.find(',');
        if (comma == std::string::npos)
            throw Error("reference CSV line " + std::to_string(line_no) + ": expected two columns");
        char* end1 = nullptr;
        char* end2 = nullptr;
        const std::string c1 = trimmed.substr(start, comma - start);
        const std::string c2 = trimmed.substr(comma + 1);
        const double x = std::strtod(c1.c_str(), &end1);
        const double y = std::strtod(c2.c_str(), &end2);
        const auto fully = [](const std::string& s, const char* end) {
            if (end == s.c_str()) return false;
            for (const char* p = end; *p; ++p)
                if (*p != ' ') return false;
            return true;
        };
        if (!fully(c1, end1) || !fully(c2, end2))
            throw Error("reference CSV line " + std::to_string(line_no) + ": not numeric");
        points.emplace_back(x, y);
    }
    if (points.empty()) throw Error("reference CSV contains no data rows");
    return points;
}

namespace {

struct AxisGrid {
    std::vector<double> axis_values;  // grid variable in the chosen convention
    std::vector<double> t_amps;
};

AxisGrid make_grid(double lo, double hi, int steps, const std::string& axis) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi))
        throw UsageError("grid bounds must satisfy 0 <= min < max <= 1");
    if (steps < 2) throw UsageError("steps must be >= 2");
    AxisGrid g;
    for (int i = 0; i < steps; ++i) {
        const double u = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
        g.axis_values.push_back(u);
        g.t_amps.push_back(axis == "power" ? std::sqrt(u) : u);
    }
    return g;
}

std::vector<SweepRecord> pure_sweep_rows(const AxisGrid& grid) {
    std::vector<SweepRecord> rows;
    for (double t : grid.t_amps) {
        const ObjectSplitter splitter = ObjectSplitter::from_amplitude(t);
        const ZwmConfig config(splitter);
        SweepRecord r;
        r.t_amp = t;
        r.T_power = splitter.power_transmittance();
        r.V = visibility(config);
        r.D = distinguishability(config);
        r.p_err_min = pure_state_error(Priors::equal(), r.V);
        r.p_inc_opt = optimal_idp(splitter).p_inc_opt;
        if (std::abs(r.D * r.D + r.V * r.V - 1.0) > 1e-9 || std::abs(r.p_inc_opt - r.V) > 1e-9)
            throw Error("sweep row at t=" + fmt6(t) + " violates the duality identities");
        rows.push_back(r);
    }
    return rows;
}

int cmd_point(double t_amp, bool json_mode, double p1, double gamma_abs, double phase) {
    const ObjectSplitter splitter = ObjectSplitter::from_amplitude(t_amp);
    const Priors priors(p1, 1.0 - p1);
    const ZwmConfig config(splitter, phase, Complex(gamma_abs, 0.0), priors);
    const double v = visibility(config);
    const double d = distinguishability(config);
    const double p_err = pure_state_error(priors, v);
    const SymmetricBranch branch = symmetric_branch_inconclusive(priors, Complex(v, 0.0));
    const auto [phi_a, phi_b] = marker_states(splitter);
    const HelstromSolution sol =
        helstrom_bound(priors, density_from_pure(phi_a), density_from_pure(phi_b));

    if (json_mode) {
        nlohmann::json j;
        j["t_amp"] = t_amp;
        j["T_power"] = splitter.power_transmittance();
        j["p1"] = p1;
        j["gamma"] = gamma_abs;
        j["pump_phase"] = phase;
        j["V"] = v;
        j["D"] = d;
        j["p_err_min"] = p_err;
        j["p_suc_max"] = 1.0 - p_err;
        j["alpha_opt"] = branch.alpha;
        j["beta_opt"] = branch.beta;
        j["p_inc_opt"] = branch.value;
        j["branch_valid"] = branch.branch_valid;
        j["theta"] = sol.theta;
        j["phi_angle"] = sol.phi_angle;
        j["measurement_arbitrary"] = sol.measurement_arbitrary;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "t_amp=" << fmt6(t_amp) << "\n"
              << "T_power=" << fmt6(splitter.power_transmittance()) << "\n"
              << "V=" << fmt6(v) << "\n"
              << "D=" << fmt6(d) << "\n"
              << "p_err_min=" << fmt6(p_err) << "\n"
              << "p_suc_max=" << fmt6(1.0 - p_err) << "\n"
              << "alpha_opt=" << fmt6(branch.alpha) << "\n"
              << "beta_opt=" << fmt6(branch.beta) << "\n"
              << "p_inc_opt=" << fmt6(branch.value) << "\n"
              << "branch_valid=" << (branch.branch_valid ? 1 : 0) << "\n"
              << "theta=" << fmt6(sol.theta) << "\n"
              << "phi_angle=" << fmt6(sol.phi_angle) << "\n";
    return kExitOk;
}

int cmd_sweep(double lo, double hi, int steps, const std::string& axis, const std::string& out,
              const std::string& format) {
    const AxisGrid grid = make_grid(lo, hi, steps, axis);
    const std::vector<SweepRecord> rows = pure_sweep_rows(grid);
    const std::string axis_note = "axis=" + axis + (axis == "power"
                                                        ? " (grid variable is T=|t|^2)"
                                                        : " (grid variable is |t|)");
    if (format == "csv") {
        emit(sweep_csv(rows, {"zwm sweep", axis_note}), out);
    } else if (format == "json") {
        emit(sweep_json_text(rows, axis), out);
    } else {
        std::vector<SvgSeries> series(4);
        series[0] = {"V", "#1f77b4", {}};
        series[1] = {"D", "#d62728", {}};
        series[2] = {"p_err_min", "#2ca02c", {}};
        series[3] = {"p_inc_opt", "#9467bd", {}};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double u = grid.axis_values[i];
            series[0].points.emplace_back(u, rows[i].V);
            series[1].points.emplace_back(u, rows[i].D);
            series[2].points.emplace_back(u, rows[i].p_err_min);
            series[3].points.emplace_back(u, rows[i].p_inc_opt);
        }
        if (out.empty()) throw Error("svg format requires --out");
        emit(render_svg(series, axis == "power" ? "T = |t|^2" : "|t|", "probability",
                        "zwm sweep (" + axis_note + ")"),
             out);
    }
    return kExitOk;
}

int cmd_thermal(double nbar, int nmax, double lo, double hi, int steps, const std::string& axis,
                const std::string& out, const std::string& format) {
    const AxisGrid grid = make_grid(lo, hi, steps, axis);
    std::vector<SweepRecord> rows;
    for (std::size_t i = 0; i < grid.t_amps.size(); ++i) {
        const ObjectSplitter splitter = ObjectSplitter::from_amplitude(grid.t_amps[i]);
        const ThermalConfig config(splitter, nbar, nmax);
        const MixedMarkerPair markers = conditional_markers_thermal(config);
        SweepRecord r;
        r.t_amp = grid.t_amps[i];
        r.T_power = splitter.power_transmittance();
        r.V = markers.visibility;
        const double d_hel =
            trace_norm(helstrom_operator(Priors::equal(), markers.rho_a, markers.rho_b));
        r.D = d_hel;
        r.p_err_min = 0.5 * (1.0 - d_hel);
        r.p_inc_opt = markers.fidelity;  // certified lower bound on P_inc_opt
        r.fidelity = markers.fidelity;
        r.chain_holds = markers.visibility <= markers.fidelity + 1e-9;
        if (!r.chain_holds.value())
            throw Error("thermal row at t=" + fmt6(r.t_amp) + " violates V <= F");
        rows.push_back(r);
    }
    const std::string note = "nbar=" + fmt6(nbar) + " nmax=" + std::to_string(nmax) +
                             " axis=" + axis +
                             " (D and p_err_min are trace-norm quantities of the delivered"
                             " markers; p_inc_opt column reports the fidelity lower bound)";
    if (format == "csv") {
        emit(sweep_csv(rows, {"zwm thermal", note}), out);
    } else if (format == "json") {
        emit(sweep_json_text(rows, axis), out);
    } else {
        std::vector<SvgSeries> series(2);
        series[0] = {"V", "#1f77b4", {}};
        series[1] = {"fidelity", "#ff7f0e", {}};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            series[0].points.emplace_back(grid.axis_values[i], rows[i].V);
            series[1].points.emplace_back(grid.axis_values[i], *rows[i].fidelity);
        }
        if (out.empty()) throw Error("svg format requires --out");
        emit(render_svg(series, axis == "power" ? "T = |t|^2" : "|t|", "value",
                        "zwm thermal (" + note + ")"),
             out);
    }
    return kExitOk;
}

int cmd_shots(double t_amp, const std::string& strategy, long long n, std::uint64_t seed,
              const std::string& out) {
    const ObjectSplitter splitter = ObjectSplitter::from_amplitude(t_amp);
    const auto [phi_a, phi_b] = marker_states(splitter);
    const DensityMatrix rho_a = density_from_pure(phi_a);
    const DensityMatrix rho_b = density_from_pure(phi_b);
    const Priors priors = Priors::equal();

    Povm povm = (strategy == "helstrom")
                    ? helstrom_bound(priors, rho_a, rho_b).povm
                    : optimal_idp(splitter).povm.as_povm();

    const ShotConfig config{std::move(povm), priors, rho_a, rho_b, n, seed, 0.0};
    const CountRecord rec = simulate_counts(config);
    const ProbabilityEstimates est = estimate_probabilities(rec);
    const ConfusionMatrix cm = confusion_matrix(rec);

    std::cout << "p_suc_hat=" << fmt6(est.p_suc_hat) << " se=" << fmt6(est.se_suc) << "\n"
              << "p_inc_hat=" << fmt6(est.p_inc_hat) << " se=" << fmt6(est.se_inc) << "\n"
              << "errors_a=" << rec.errors_a << " errors_b=" << rec.errors_b << "\n"
              << "empirical_bayes_error=" << fmt6(cm.empirical_bayes_error) << "\n";

    std::string csv = "seed,n_shots,t,n_a,n_b,n_inc,errors_a,errors_b\n";
    csv += count_record_csv_line(rec, seed, n, t_amp) + "\n";
    if (!out.empty()) write_text_file(out, csv);
    return kExitOk;
}

int cmd_verify(int resolution, int hel_rounds, int usd_rounds, bool inject_fault) {
    constexpr double pi = std::numbers::pi;
    bool all_pass = true;

    // Helstrom: oracle vs closed form on a (p1, s) grid
    {
        const GridSpec grid{resolution, hel_rounds, 0.1};
        double max_dev = 0.0;
        double worst_p1 = 0.0, worst_s = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double p1 = static_cast<double>(i) / 20.0;
            const Priors priors(p1, 1.0 - p1);
            for (int j = 0; j <= 20; ++j) {
                const double s = static_cast<double>(j) / 20.0;
                const ObjectSplitter splitter = ObjectSplitter::from_amplitude(s);
                const auto [phi_a, phi_b] = marker_states(splitter);
                const MinErrorSearch search = brute_force_min_error(
                    density_from_pure(phi_a), density_from_pure(phi_b), priors, grid);
                double closed = pure_state_error(priors, s);
                if (inject_fault) closed += 1e-6;
                const double dev = std::abs(search.best_error - closed);
                if (dev > max_dev) {
                    max_dev = dev;
                    worst_p1 = p1;
                    worst_s = s;
                }
            }
        }
        const double step = pi * std::pow(0.1, hel_rounds) / (resolution - 1);
        const double tol = std::max(1e-8, 4.0 * step * step);
        const bool pass = max_dev <= tol;
        all_pass = all_pass && pass;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " helstrom oracle vs closed form: max_dev="
                  << fmt_sci(max_dev) << " tol=" << fmt_sci(tol) << " at (p1=" << fmt6(worst_p1)
                  << ", s=" << fmt6(worst_s) << ") grid 21x21, oracle res=" << resolution
                  << " rounds=" << hel_rounds << "\n";
    }

    // IDP: oracle vs 1 - s at equal priors
    {
        const GridSpec grid{resolution, usd_rounds, 0.1};
        double max_dev = 0.0;
        double worst_s = 0.0;
        for (int j = 0; j <= 100; ++j) {
            const double s = static_cast<double>(j) / 100.0;
            const ObjectSplitter splitter = ObjectSplitter::from_amplitude(s);
            const UsdSearch search = brute_force_usd(splitter, Priors::equal(), grid);
            double closed = 1.0 - s;
            if (inject_fault) closed += 1e-6;
            const double dev = std::abs(search.best_success - closed);
            if (dev > max_dev) {
                max_dev = dev;
                worst_s = s;
            }
        }
        const double step = std::pow(0.1, usd_rounds) / (resolution - 1);
        const double tol = std::max(1e-8, 2.0 * step);
        const bool pass = max_dev <= tol;
        all_pass = all_pass && pass;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " usd oracle vs closed form: max_dev="
                  << fmt_sci(max_dev) << " tol=" << fmt_sci(tol) << " at s=" << fmt6(worst_s)
                  << " (101 s values), oracle res=" << resolution << " rounds=" << usd_rounds
                  << "\n";
    }

    std::cout << (all_pass ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return all_pass ? kExitOk : kExitComputation;
}

int cmd_overlay(const std::string& reference_path, double lo, double hi, int steps,
                const std::string& axis, const std::string& out) {
    std::ifstream in(reference_path, std::ios::binary);
    if (!in) throw IoError("cannot open reference CSV '" + reference_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::vector<std::pair<double, double>> reference = parse_reference_csv(buffer.str());

    const AxisGrid grid = make_grid(lo, hi, steps, axis);
    SvgSeries idp{"IDP", "#1f77b4", {}};
    for (std::size_t i = 0; i < grid.t_amps.size(); ++i) {
        const double p_inc = optimal_idp(ObjectSplitter::from_amplitude(grid.t_amps[i])).p_inc_opt;
        idp.points.emplace_back(grid.axis_values[i],
                                std::sqrt(std::max(0.0, 1.0 - p_inc * p_inc)));
    }
    SvgSeries external{"external", "#ff7f0e", reference};
    if (out.empty()) throw Error("overlay requires --out");
    emit(render_svg({external, idp}, axis == "power" ? "T = |t|^2" : "|t|", "D",
                    "distinguishability overlay"),
         out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Optimal which-crystal decision strategies for the induced-coherence"
                 " interferometer"};
    app.name("zwm");
    app.set_config("--config", "", "key=value config file (flags win over file values)");
    app.require_subcommand(1);

    // point
    auto* point = app.add_subcommand("point", "evaluate one configuration");
    double point_t = -1.0, point_T = -1.0;
    double point_p1 = 0.5, point_gamma = 1.0, point_phase = 0.0;
    bool point_json = false;
    auto* opt_t = point->add_option("--t", point_t, "amplitude transmittance |t|")
                      ->check(CLI::Range(0.0, 1.0));
    auto* opt_T = point->add_option("--T", point_T, "power transmittance |t|^2")
                      ->check(CLI::Range(0.0, 1.0));
    opt_t->excludes(opt_T);
    opt_T->excludes(opt_t);
    point->add_option("--p1", point_p1, "prior for hypothesis A")->check(CLI::Range(0.0, 1.0));
    point->add_option("--gamma", point_gamma, "idler mode overlap magnitude")
        ->check(CLI::Range(0.0, 1.0));
    point->add_option("--phase", point_phase, "relative pump phase (radians)");
    point->add_flag("--json", point_json, "machine-readable output");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "transmittance sweep");
    double sweep_lo = 0.0, sweep_hi = 1.0;
    int sweep_steps = 101;
    std::string sweep_axis = "power", sweep_out, sweep_format = "csv";
    sweep->add_option("--min", sweep_lo, "grid start")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--max", sweep_hi, "grid end")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--steps", sweep_steps, "grid points")->check(CLI::Range(2, 1000000));
    sweep->add_option("--axis", sweep_axis, "grid variable convention")
        ->check(CLI::IsMember({"amp", "power"}));
    sweep->add_option("--out", sweep_out, "output path (default stdout)");
    sweep->add_option("--format", sweep_format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    // thermal
    auto* thermal = app.add_subcommand("thermal", "thermal-noise duality sweep");
    double th_nbar = 0.0;
    int th_nmax = 15;
    double th_lo = 0.0, th_hi = 1.0;
    int th_steps = 21;
    std::string th_axis = "power", th_out, th_format = "csv";
    thermal->add_option("--nbar", th_nbar, "mean thermal photon number")
        ->check(CLI::Range(0.0, 1e6));
    thermal->add_option("--nmax", th_nmax, "Fock cutoff for the thermal mode")
        ->check(CLI::Range(1, 60));
    thermal->add_option("--min", th_lo, "grid start")->check(CLI::Range(0.0, 1.0));
    thermal->add_option("--max", th_hi, "grid end")->check(CLI::Range(0.0, 1.0));
    thermal->add_option("--steps", th_steps, "grid points")->check(CLI::Range(2, 100000));
    thermal->add_option("--axis", th_axis, "grid variable convention")
        ->check(CLI::IsMember({"amp", "power"}));
    thermal->add_option("--out", th_out, "output path (default stdout)");
    thermal->add_option("--format", th_format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));

    // shots
    auto* shots = app.add_subcommand("shots", "seeded Monte Carlo photon counting");
    double sh_t = 0.5;
    std::string sh_strategy = "idp", sh_out;
    long long sh_n = 1000000;
    std::uint64_t sh_seed = default_seed();
    shots->add_option("--t", sh_t, "amplitude transmittance")->check(CLI::Range(0.0, 1.0));
    shots->add_option("--strategy", sh_strategy, "helstrom|idp")
        ->check(CLI::IsMember({"helstrom", "idp"}));
    shots->add_option("--n", sh_n, "number of shots")->check(CLI::Range(1LL, 1000000000LL));
    shots->add_option("--seed", sh_seed, "PRNG seed (default from ZWM_SEED, else 1)");
    shots->add_option("--out", sh_out, "CSV output path");

    // verify
    auto* verify = app.add_subcommand("verify", "oracle vs closed-form verification suites");
    int vf_resolution = 401, vf_hel_rounds = 4, vf_usd_rounds = 8;
    bool vf_fault = false;
    verify->add_option("--resolution", vf_resolution, "oracle grid resolution per axis")
        ->check(CLI::Range(3, 5001));
    verify->add_option("--hel-rounds", vf_hel_rounds, "refinement rounds (min-error oracle)")
        ->check(CLI::Range(0, 12));
    verify->add_option("--usd-rounds", vf_usd_rounds, "refinement rounds (USD oracle)")
        ->check(CLI::Range(0, 12));
    verify->add_flag("--self-test-fault", vf_fault,
                     "perturb the closed form to prove the harness can fail");

    // overlay
    auto* overlay = app.add_subcommand("overlay", "render an external D curve beside the IDP one");
    std::string ov_reference, ov_out;
    double ov_lo = 0.0, ov_hi = 1.0;
    int ov_steps = 101;
    std::string ov_axis = "power";
    overlay->add_option("--reference", ov_reference, "CSV of (x, D) pairs")->required();
    overlay->add_option("--min", ov_lo, "grid start")->check(CLI::Range(0.0, 1.0));
    overlay->add_option("--max", ov_hi, "grid end")->check(CLI::Range(0.0, 1.0));
    overlay->add_option("--steps", ov_steps, "grid points")->check(CLI::Range(2, 100000));
    overlay->add_option("--axis", ov_axis, "grid variable convention")
        ->check(CLI::IsMember({"amp", "power"}));
    overlay->add_option("--out", ov_out, "SVG output path")->required();

    std::vector<std::string> argv_storage;
    argv_storage.push_back("zwm");
    for (const std::string& a : args) argv_storage.push_back(a);
    std::vector<char*> argv;
    for (std::string& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(point)) {
            const bool has_t = opt_t->count() > 0;
            const bool has_T = opt_T->count() > 0;
            if (has_t == has_T) {
                std::cerr << "usage error: give exactly one of --t or --T\n";
                return kExitUsage;
            }
            const double t_amp = has_t ? point_t : std::sqrt(point_T);
            return cmd_point(t_amp, point_json, point_p1, point_gamma, point_phase);
        }
        if (app.got_subcommand(sweep))
            return cmd_sweep(sweep_lo, sweep_hi, sweep_steps, sweep_axis, sweep_out, sweep_format);
        if (app.got_subcommand(thermal))
            return cmd_thermal(th_nbar, th_nmax, th_lo, th_hi, th_steps, th_axis, th_out,
                               th_format);
        if (app.got_subcommand(shots))
            return cmd_shots(sh_t, sh_strategy, sh_n, sh_seed, sh_out);
        if (app.got_subcommand(verify))
            return cmd_verify(vf_resolution, vf_hel_rounds, vf_usd_rounds, vf_fault);
        if (app.got_subcommand(overlay))
            return cmd_overlay(ov_reference, ov_lo, ov_hi, ov_steps, ov_axis, ov_out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    std::cerr << "usage error: no subcommand\n";
    return kExitUsage;
}

}  // namespace zwm
