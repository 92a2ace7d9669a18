#include "mpflow/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mpflow/csv.hpp"
#include "mpflow/plot.hpp"
#include "mpflow/snapshot.hpp"
#include "mpflow/sweeps.hpp"

namespace mpflow {

namespace {

namespace fs = std::filesystem;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Manifest {
    std::string command;
    const ExperimentConfig* config = nullptr;
    RunSummary* summary = nullptr;

    void write(const std::string& out_dir) const {
        nlohmann::json j;
        j["command"] = command;
        j["version"] = "0.1.0";
        j["created_utc"] = utc_timestamp();  // excluded from determinism comparisons
        j["config"] = nlohmann::json::parse(config_echo_json(*config));
        j["validity_t_max"] = summary->validity_t_max;
        j["ok"] = summary->ok;
        nlohmann::json checks = nlohmann::json::array();
        for (const CheckResult& c : summary->checks)
            checks.push_back({{"name", c.name},
                              {"passed", c.passed},
                              {"value", c.value},
                              {"threshold", c.threshold},
                              {"detail", c.detail}});
        j["checks"] = checks;
        j["outputs"] = summary->outputs;
        j["warnings"] = summary->warnings;
        std::ofstream out(fs::path(out_dir) / "manifest.json");
        require(out.good(), errc::io, "cannot write manifest.json in " + out_dir);
        out << j.dump(2) << "\n";
    }
};

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec, errc::io, "cannot create output directory " + dir);
}

void finish(RunSummary& summary, Manifest& manifest, const std::string& out_dir) {
    summary.ok = std::all_of(summary.checks.begin(), summary.checks.end(),
                             [](const CheckResult& c) { return c.passed; });
    summary.outputs.push_back("manifest.json");
    manifest.write(out_dir);
}

void add_check(RunSummary& s, const std::string& name, bool passed, double value,
               double threshold, const std::string& detail = "") {
    s.checks.push_back({name, passed, value, threshold, detail});
}

std::vector<std::vector<double>> trajectory_rows(const Trajectory& traj) {
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.records.size());
    for (const auto& rec : traj.records) rows.push_back(rec.csv_row());
    return rows;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& out_dir,
                          const std::string& name, RunSummary& summary) {
    write_csv((fs::path(out_dir) / name).string(), DiagnosticsRecord::csv_columns(),
              trajectory_rows(traj));
    summary.outputs.push_back(name);
}

std::vector<std::pair<double, double>> series_of(const Trajectory& traj,
                                                 const std::string& column) {
    const auto& cols = DiagnosticsRecord::csv_columns();
    int idx = -1;
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (cols[c] == column) idx = int(c);
    require(idx >= 0, errc::invalid_argument, "unknown trajectory column: " + column);
    std::vector<std::pair<double, double>> out;
    for (const auto& rec : traj.records) {
        const auto row = rec.csv_row();
        out.emplace_back(rec.t, row[idx]);
    }
    return out;
}

Trajectory run_from_config(const ExperimentConfig& cfg, RunSummary& summary,
                           std::optional<RunMode> mode_override = std::nullopt) {
    auto grid = std::make_shared<const TorusGrid>(cfg.n, cfg.length);
    InitialDataSpec init = cfg.initial;
    if (init.kind == InitialDataKind::random_field && cfg.seed != 1 && init.seed == 1)
        init.seed = cfg.seed;
    BuildResult built = build_initial_data(init, grid);
    for (const auto& w : built.warnings) summary.warnings.push_back(w);
    SolverConfig sc = cfg.time;
    if (mode_override) sc.mode = *mode_override;
    SolverDiagnostics diag;
    diag.g_schedule = cfg.checks.fourier_splitting;
    diag.profile_errors = cfg.diag_profile_errors;
    diag.sup_norms = cfg.diag_sup_norms;
    Trajectory traj = simulate(built.state, cfg.params, sc, diag);
    for (const auto& w : traj.warnings) summary.warnings.push_back(w);
    summary.validity_t_max = traj.validity_t_max;
    return traj;
}

void evaluate_trajectory_checks(const ExperimentConfig& cfg, const Trajectory& traj,
                                RunSummary& summary) {
    const auto& recs = traj.records;
    const std::size_t last = recs.size() - 1;
    const double T = recs[last].t;
    if (cfg.checks.energy_equality_tol) {
        const double E0 = recs[0].energy_u + recs[0].energy_h;
        const double res = energy_equality_residual(recs, 0, last, cfg.params);
        const double per_unit = std::abs(res) / std::max(T, 1e-300);
        add_check(summary, "energy_equality", per_unit <= *cfg.checks.energy_equality_tol * E0,
                  per_unit, *cfg.checks.energy_equality_tol * E0,
                  "|residual|/T vs tol*E(0)");
    }
    if (cfg.checks.psi_monotonicity_slack) {
        if (cfg.params.gamma == 0.0) {
            const auto rep =
                monotonicity_report(series_of(traj, "psi"), *cfg.checks.psi_monotonicity_slack);
            add_check(summary, "psi_monotonicity", rep.violations == 0, double(rep.violations), 0.0,
                      "violations beyond slack*psi(0); max uptick " +
                          format_g17(rep.max_uptick));
        } else {
            summary.warnings.push_back("psi_monotonicity check skipped: gamma > 0");
        }
    }
    if (cfg.checks.identity_tol) {
        double res = 0.0, scale = 0.0;
        if (cfg.params.gamma == 0.0) {
            res = identity_residual_gamma0(recs, traj.accums, 0, last, cfg.params);
            scale = recs[0].psi;
        } else {
            res = identity_residual_gammapos(recs, traj.accums, 0, last, cfg.params);
            scale = 0.5 * (recs[0].eps_sq + a_coeff(cfg.params) * recs[0].grad_u_sq);
        }
        const double per_unit = std::abs(res) / std::max(T, 1e-300);
        add_check(summary, cfg.params.gamma == 0.0 ? "identity_gamma0" : "identity_gammapos",
                  per_unit <= *cfg.checks.identity_tol * scale, per_unit,
                  *cfg.checks.identity_tol * scale, "integrated enstrophy identity residual");
    }
    if (cfg.checks.fourier_splitting) {
        const auto rep = fourier_splitting_check(recs, cfg.params, *cfg.checks.fourier_splitting);
        add_check(summary, "fourier_splitting",
                  rep.max_ratio <= cfg.checks.fourier_splitting_ratio_max, rep.max_ratio,
                  cfg.checks.fourier_splitting_ratio_max, "max LHS/RHS of the splitting bound");
    }
    if (cfg.checks.little_o_factor) {
        // final decade of samples vs the peak, for t*||h||^2 and t*||grad u||^2
        for (const char* col : {"energy_h", "grad_u_sq"}) {
            const auto series = series_of(traj, col);
            double peak = 0.0, final_max = 0.0;
            for (const auto& [t, v] : series) {
                const double tv = t * v;
                peak = std::max(peak, tv);
                if (t >= 0.9 * T) final_max = std::max(final_max, tv);
            }
            add_check(summary, std::string("little_o_t_") + col,
                      final_max <= *cfg.checks.little_o_factor * peak, final_max,
                      *cfg.checks.little_o_factor * peak, "final window of t*value vs peak");
        }
    }
    if (cfg.checks.linear_match_tol && cfg.time.mode == RunMode::linear) {
        double worst = 0.0;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const SpectralState zL = apply_semigroup(traj.z0, recs[i].t, cfg.params);
            const InstantRates r = instant_rates(zL, cfg.params);
            const double scale = std::max(
                {r.energy_u + r.energy_h, recs[i].energy_u + recs[i].energy_h, 1e-300});
            worst = std::max(worst, std::abs(recs[i].energy_u + recs[i].energy_h -
                                             (r.energy_u + r.energy_h)) /
                                        scale);
        }
        // compare the full final state too
        const SpectralState zL = apply_semigroup(traj.z0, T, cfg.params);
        double num = 0.0, den = 0.0;
        for (std::size_t m = 0; m < zL.omega_hat.spec().size(); ++m) {
            num += std::norm(zL.omega_hat.spec()[m] - traj.final_state.omega_hat.spec()[m]) +
                   std::norm(zL.h_hat.spec()[m] - traj.final_state.h_hat.spec()[m]);
            den += std::norm(zL.omega_hat.spec()[m]) + std::norm(zL.h_hat.spec()[m]);
        }
        worst = std::max(worst, std::sqrt(num / std::max(den, 1e-300)));
        add_check(summary, "linear_match", worst <= *cfg.checks.linear_match_tol, worst,
                  *cfg.checks.linear_match_tol, "stepped linear run vs apply_semigroup");
    }
    for (const SlopeCheck& sc : cfg.checks.slopes) {
        double lo = sc.t_lo, hi = sc.t_hi;
        if (lo == 0.0 && hi == 0.0) {
            hi = std::min(T, traj.validity_t_max);
            lo = hi / 20.0;
        }
        const DecayFit fit = decay_slope_fit(series_of(traj, sc.quantity), lo, hi);
        const double slope = -fit.gamma_hat;
        add_check(summary, "slope_" + sc.quantity, std::abs(slope - sc.target) <= sc.tol, slope,
                  sc.target, "fitted log-log slope over [" + format_g17(lo) + ", " +
                                 format_g17(hi) + "], target +- " + format_g17(sc.tol));
    }
}

nlohmann::json fit_to_json(const DecayFit& fit) {
    return {{"gamma_hat", fit.gamma_hat},
            {"t_lo", fit.t_lo},
            {"t_hi", fit.t_hi},
            {"rms_residual", fit.rms_residual},
            {"samples", fit.samples}};
}

void write_json_file(const std::string& out_dir, const std::string& name, const nlohmann::json& j,
                     RunSummary& summary) {
    std::ofstream out(fs::path(out_dir) / name);
    require(out.good(), errc::io, "cannot write " + name);
    out << j.dump(2) << "\n";
    summary.outputs.push_back(name);
}

}  // namespace

RunSummary run_simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    RunSummary summary;
    Manifest manifest{"simulate", &cfg, &summary};
    const Trajectory traj = run_from_config(cfg, summary);
    if (cfg.outputs.emit_csv) write_trajectory_csv(traj, out_dir, "trajectory.csv", summary);
    if (cfg.outputs.emit_snapshots) {
        write_snapshot((fs::path(out_dir) / "state_initial").string(), 0.0,
                       {{"omega", &traj.z0.omega_hat}, {"h", &traj.z0.h_hat}});
        write_snapshot((fs::path(out_dir) / "state_final").string(), traj.records.back().t,
                       {{"omega", &traj.final_state.omega_hat}, {"h", &traj.final_state.h_hat}});
        for (const char* f : {"state_initial.json", "state_initial.omega.bin",
                              "state_initial.h.bin", "state_final.json", "state_final.omega.bin",
                              "state_final.h.bin"})
            summary.outputs.push_back(f);
    }
    evaluate_trajectory_checks(cfg, traj, summary);
    if (cfg.outputs.emit_svg) {
        PlotOptions opts;
        opts.y_columns = {"energy_u", "energy_h"};
        opts.log_x = false;
        opts.log_y = true;
        opts.title = "energy";
        const CsvTable table = read_csv((fs::path(out_dir) / "trajectory.csv").string());
        plot_csv(table, opts, (fs::path(out_dir) / "energy.svg").string());
        summary.outputs.push_back("energy.svg");
    }
    finish(summary, manifest, out_dir);
    return summary;
}

RunSummary run_decay_study(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    RunSummary summary;
    Manifest manifest{"decay-study", &cfg, &summary};
    const Trajectory traj = run_from_config(cfg, summary);
    if (cfg.outputs.emit_csv) write_trajectory_csv(traj, out_dir, "trajectory.csv", summary);

    nlohmann::json fits;
    const double T = traj.records.back().t;
    const double hi = std::min(T, traj.validity_t_max);
    const double lo = hi / 20.0;
    fits["window"] = {{"t_lo", lo}, {"t_hi", hi}};
    fits["validity_t_max"] = traj.validity_t_max;
    for (const char* col : {"energy_u", "energy_h"}) {
        const DecayFit fit = decay_slope_fit(series_of(traj, col), lo, hi);
        fits[col] = fit_to_json(fit);
    }
    evaluate_trajectory_checks(cfg, traj, summary);
    write_json_file(out_dir, "fits.json", fits, summary);
    if (cfg.outputs.emit_svg) {
        PlotOptions opts;
        opts.y_columns = {"energy_u", "energy_h"};
        opts.log_x = true;
        opts.log_y = true;
        opts.title = "decay study";
        const CsvTable table = read_csv((fs::path(out_dir) / "trajectory.csv").string());
        plot_csv(table, opts, (fs::path(out_dir) / "decay.svg").string());
        summary.outputs.push_back("decay.svg");
    }
    finish(summary, manifest, out_dir);
    return summary;
}

RunSummary run_profile_error(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    RunSummary summary;
    Manifest manifest{"profile-error", &cfg, &summary};
    ExperimentConfig cfg2 = cfg;
    cfg2.diag_profile_errors = true;
    const Trajectory traj = run_from_config(cfg2, summary);
    if (cfg.outputs.emit_csv) write_trajectory_csv(traj, out_dir, "trajectory.csv", summary);

    const double T = traj.records.back().t;
    double lo = cfg.profile_error.t_lo, hi = cfg.profile_error.t_hi;
    if (lo == 0.0 && hi == 0.0) {
        hi = std::min(T, traj.validity_t_max);
        lo = hi / 20.0;
    }
    // err_lin_u^2 / zeta(t, Gamma) must stay within a bounded band
    double ratio_min = HUGE_VAL, ratio_max = 0.0;
    std::vector<std::pair<double, double>> hu_ratio;
    for (const auto& rec : traj.records) {
        if (rec.t < lo || rec.t > hi || rec.t <= 0.0) continue;
        const double zt = zeta(rec.t, cfg.profile_error.zeta_Gamma);
        const double r = rec.diff_lin_u * rec.diff_lin_u / zt;
        ratio_min = std::min(ratio_min, r);
        ratio_max = std::max(ratio_max, r);
        if (rec.diff_lin_h > 0.0)
            hu_ratio.emplace_back(rec.t,
                                  rec.diff_lin_u * rec.diff_lin_u /
                                      (rec.diff_lin_h * rec.diff_lin_h));
    }
    require(ratio_min < HUGE_VAL, errc::invalid_argument,
            "profile-error: no samples in the fit window");
    const double band = ratio_max / std::max(ratio_min, 1e-300);
    add_check(summary, "profile_ratio_stable", band <= cfg.profile_error.ratio_max, band,
              cfg.profile_error.ratio_max,
              "max/min of err_lin_u^2 / zeta(t, " + format_g17(cfg.profile_error.zeta_Gamma) +
                  ") over [" + format_g17(lo) + ", " + format_g17(hi) + "]");
    const DecayFit rfit = decay_slope_fit(hu_ratio, lo, hi);
    const double rslope = -rfit.gamma_hat;
    add_check(summary, "h_gain_slope",
              std::abs(rslope - cfg.profile_error.h_ratio_slope_target) <=
                  cfg.profile_error.h_ratio_slope_tol,
              rslope, cfg.profile_error.h_ratio_slope_target,
              "slope of err_lin_u^2/err_lin_h^2 (h converges faster by ~t)");

    nlohmann::json j;
    j["window"] = {{"t_lo", lo}, {"t_hi", hi}};
    j["zeta_Gamma"] = cfg.profile_error.zeta_Gamma;
    j["ratio_band"] = band;
    j["h_gain_slope"] = rslope;
    write_json_file(out_dir, "profile.json", j, summary);
    finish(summary, manifest, out_dir);
    return summary;
}

RunSummary run_compare_ns(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    RunSummary summary;
    Manifest manifest{"compare-ns", &cfg, &summary};

    const Trajectory mp = run_from_config(cfg, summary);
    // Navier-Stokes comparator: same u0, h channel disabled, viscosity mu
    ExperimentConfig ns_cfg = cfg;
    ns_cfg.initial.h_amplitude = 0.0;
    if (ns_cfg.initial.kind == InitialDataKind::enhanced_pair ||
        ns_cfg.initial.kind == InitialDataKind::power_law_micro)
        ns_cfg.initial.kind = InitialDataKind::power_law_velocity;
    const Trajectory ns = run_from_config(ns_cfg, summary, RunMode::ns_reference);
    if (cfg.outputs.emit_csv) {
        write_trajectory_csv(mp, out_dir, "micropolar.csv", summary);
        write_trajectory_csv(ns, out_dir, "navier_stokes.csv", summary);
    }

    const double T = std::min(mp.records.back().t, ns.records.back().t);
    double lo = cfg.compare_ns.t_lo, hi = cfg.compare_ns.t_hi;
    if (lo == 0.0 && hi == 0.0) {
        hi = std::min(T, mp.validity_t_max);
        lo = hi / 20.0;
    }
    const double final_mp = mp.records.back().energy_u;
    const double final_ns = ns.records.back().energy_u;
    const double ratio = final_mp / std::max(final_ns, 1e-300);
    add_check(summary, "enhanced_dissipation_final", ratio <= cfg.compare_ns.final_ratio_max,
              ratio, cfg.compare_ns.final_ratio_max, "final ||u||^2 micropolar / Navier-Stokes");
    const DecayFit fmp = decay_slope_fit(series_of(mp, "energy_u"), lo, hi);
    const DecayFit fns = decay_slope_fit(series_of(ns, "energy_u"), lo, hi);
    const double gap = fmp.gamma_hat - fns.gamma_hat;
    add_check(summary, "enhanced_dissipation_slope_gap", gap >= cfg.compare_ns.slope_gap_min, gap,
              cfg.compare_ns.slope_gap_min, "micropolar decays steeper by this much");

    nlohmann::json j;
    j["window"] = {{"t_lo", lo}, {"t_hi", hi}};
    j["final_ratio"] = ratio;
    j["micropolar_fit"] = fit_to_json(fmp);
    j["navier_stokes_fit"] = fit_to_json(fns);
    write_json_file(out_dir, "compare.json", j, summary);
    if (cfg.outputs.emit_svg) {
        // merge the two u-energy series into one deterministic chart input
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < mp.records.size() && i < ns.records.size(); ++i)
            rows.push_back(
                {mp.records[i].t, mp.records[i].energy_u, ns.records[i].energy_u});
        write_csv((fs::path(out_dir) / "compare.csv").string(),
                  {"t", "micropolar_energy_u", "ns_energy_u"}, rows);
        summary.outputs.push_back("compare.csv");
        PlotOptions opts;
        opts.log_x = true;
        opts.log_y = true;
        opts.title = "enhanced dissipation";
        plot_csv(read_csv((fs::path(out_dir) / "compare.csv").string()), opts,
                 (fs::path(out_dir) / "compare.svg").string());
        summary.outputs.push_back("compare.svg");
    }
    finish(summary, manifest, out_dir);
    return summary;
}

RunSummary run_linear_decay(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    RunSummary summary;
    Manifest manifest{"linear-decay", &cfg, &summary};
    const LinearDecayConfig& ld = cfg.linear_decay;

    const std::vector<double> ts = log_spaced(ld.t_lo, ld.t_hi, ld.points);
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<double, double>> useries, hseries;
    for (double t : ts) {
        const double u2 = radial_norm_sq(ld.data, RadialWhich::u_L, t, cfg.params);
        const double h2 = radial_norm_sq(ld.data, RadialWhich::h_L, t, cfg.params);
        const double heat2 = radial_norm_sq(ld.data, RadialWhich::heat_u, t, cfg.params);
        const double eu = std::sqrt(radial_norm_sq(ld.data, RadialWhich::profile_error_u, t, cfg.params));
        const double eh = std::sqrt(radial_norm_sq(ld.data, RadialWhich::profile_error_h, t, cfg.params));
        rows.push_back({t, u2, h2, heat2, eu, eh});
        useries.emplace_back(t, u2);
        hseries.emplace_back(t, h2);
    }
    write_csv((fs::path(out_dir) / "linear_decay.csv").string(),
              {"t", "uL2", "hL2", "heat_u2", "profile_err_u", "profile_err_h"}, rows);
    summary.outputs.push_back("linear_decay.csv");

    nlohmann::json j;
    const DecayFit ufit = decay_slope_fit(useries, ld.t_lo, ld.t_hi);
    j["uL2_fit"] = fit_to_json(ufit);
    if (ld.u_slope_target)
        add_check(summary, "uL2_slope", std::abs(-ufit.gamma_hat - *ld.u_slope_target) <=
                                            *ld.u_slope_tol,
                  -ufit.gamma_hat, *ld.u_slope_target, "fitted slope of ||u_L||^2");
    const bool h_nonzero = std::any_of(hseries.begin(), hseries.end(),
                                       [](const auto& p) { return p.second > 0.0; });
    if (h_nonzero) {
        const DecayFit hfit = decay_slope_fit(hseries, ld.t_lo, ld.t_hi);
        j["hL2_fit"] = fit_to_json(hfit);
        if (ld.h_slope_target)
            add_check(summary, "hL2_slope", std::abs(-hfit.gamma_hat - *ld.h_slope_target) <=
                                                *ld.h_slope_tol,
                      -hfit.gamma_hat, *ld.h_slope_target, "fitted slope of ||h_L||^2");
    }
    write_json_file(out_dir, "decay_fit.json", j, summary);
    if (cfg.outputs.emit_svg) {
        PlotOptions opts;
        opts.y_columns = {"uL2", "hL2", "heat_u2"};
        opts.log_x = true;
        opts.log_y = true;
        opts.title = "linear decay";
        plot_csv(read_csv((fs::path(out_dir) / "linear_decay.csv").string()), opts,
                 (fs::path(out_dir) / "linear_decay.svg").string());
        summary.outputs.push_back("linear_decay.svg");
    }
    finish(summary, manifest, out_dir);
    return summary;
}

RunSummary run_symbol_verify(const ExperimentConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    RunSummary summary;
    Manifest manifest{"symbol-verify", &cfg, &summary};
    const SymbolVerifyConfig& sv = cfg.symbol_verify;
    const BoundsReport rep =
        sweep_symbol_bounds(cfg.params, log_spaced(sv.r_lo, sv.r_hi, sv.r_points),
                            log_spaced(sv.t_lo, sv.t_hi, sv.t_points), sv.ratio_limit);
    {
        std::ofstream out(fs::path(out_dir) / "bounds.json");
        require(out.good(), errc::io, "cannot write bounds.json");
        out << bounds_report_to_json(rep) << "\n";
        summary.outputs.push_back("bounds.json");
    }
    for (const char* key : {"e11", "e22", "e21"})
        add_check(summary, std::string("decade_ratio_") + key,
                  rep.decade_ratio.at(key) < sv.ratio_limit, rep.decade_ratio.at(key),
                  sv.ratio_limit, "per-decade maxima spread of the weighted symbol error");
    finish(summary, manifest, out_dir);
    return summary;
}

}  // namespace mpflow
