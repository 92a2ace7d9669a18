#include "mpflow/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mpflow/toml.hpp"

namespace mpflow {

namespace {

PhiKind phi_from_name(const std::string& name) {
    if (name == "algebraic") return PhiKind::algebraic;
    if (name == "gaussian") return PhiKind::gaussian;
    fail(errc::validation, "unknown phi profile: " + name + " (use algebraic or gaussian)");
}

std::string phi_name(PhiKind kind) {
    return kind == PhiKind::algebraic ? "algebraic" : "gaussian";
}

RadialDataKind radial_kind_from_name(const std::string& name) {
    if (name == "velocity_only") return RadialDataKind::velocity_only;
    if (name == "micro_only") return RadialDataKind::micro_only;
    if (name == "enhanced_pair") return RadialDataKind::enhanced_pair;
    fail(errc::validation, "unknown radial data kind: " + name);
}

RunMode mode_from_name(const std::string& name) {
    if (name == "nonlinear") return RunMode::nonlinear;
    if (name == "linear") return RunMode::linear;
    if (name == "ns_reference") return RunMode::ns_reference;
    fail(errc::validation, "unknown mode: " + name);
}

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::nonlinear: return "nonlinear";
        case RunMode::linear: return "linear";
        case RunMode::ns_reference: return "ns_reference";
    }
    return "?";
}

SlopeCheck parse_slope_check(const toml::Document& doc, const std::string& prefix) {
    SlopeCheck sc;
    sc.quantity = doc.get_string(prefix + ".quantity", sc.quantity);
    sc.target = doc.get_double(prefix + ".target", sc.target);
    sc.tol = doc.get_double(prefix + ".tol", sc.tol);
    if (doc.has(prefix + ".window")) {
        const auto w = doc.at(prefix + ".window").as_double_array();
        require(w.size() == 2 && w[0] < w[1], errc::validation,
                prefix + ".window must be [t_lo, t_hi] with t_lo < t_hi");
        sc.t_lo = w[0];
        sc.t_hi = w[1];
    }
    return sc;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    const toml::Document doc = toml::Document::parse(text);
    ExperimentConfig cfg;

    cfg.params.mu = doc.get_double("params.mu", cfg.params.mu);
    cfg.params.chi = doc.get_double("params.chi", cfg.params.chi);
    cfg.params.gamma = doc.get_double("params.gamma", cfg.params.gamma);
    try {
        cfg.params.validate();
    } catch (const error& e) {
        fail(errc::validation, std::string("params: ") + e.what());
    }

    cfg.n = int(doc.get_int("grid.n", cfg.n));
    cfg.length = doc.get_double("grid.length", cfg.length);
    require(cfg.n > 0 && cfg.n % 2 == 0, errc::validation, "grid.n must be positive and even");
    require(cfg.length > 0.0, errc::validation, "grid.length must be > 0");

    cfg.time.dt = doc.get_double("time.dt", cfg.time.dt);
    cfg.time.t_end = doc.get_double("time.t_end", cfg.time.t_end);
    cfg.time.save_every = int(doc.get_int("time.save_every", cfg.time.save_every));
    cfg.time.cfl_limit = doc.get_double("time.cfl_limit", cfg.time.cfl_limit);
    cfg.time.enforce_dealias = doc.get_bool("time.enforce_dealias", cfg.time.enforce_dealias);
    cfg.time.mode = mode_from_name(doc.get_string("mode", "nonlinear"));
    cfg.time.validate();

    if (doc.has_prefix("initial_data")) {
        cfg.initial.kind =
            initial_data_kind_from_name(doc.get_string("initial_data.kind", "gaussian_vortex"));
        cfg.initial.amplitude = doc.get_double("initial_data.amplitude", cfg.initial.amplitude);
        cfg.initial.Gamma = doc.get_double("initial_data.Gamma", cfg.initial.Gamma);
        cfg.initial.phi = phi_from_name(doc.get_string("initial_data.phi", "algebraic"));
        cfg.initial.cutoff_k = doc.get_double("initial_data.cutoff_k", cfg.initial.cutoff_k);
        cfg.initial.h_amplitude = doc.get_double("initial_data.h_amplitude", cfg.initial.h_amplitude);
        cfg.initial.center_x = doc.get_double("initial_data.center_x", cfg.initial.center_x);
        cfg.initial.center_y = doc.get_double("initial_data.center_y", cfg.initial.center_y);
        cfg.initial.width = doc.get_double("initial_data.width", cfg.initial.width);
        cfg.initial.h_width = doc.get_double("initial_data.h_width", cfg.initial.h_width);
        cfg.initial.seed = std::uint64_t(doc.get_int("initial_data.seed", 1));
        cfg.initial.spectrum_exponent =
            doc.get_double("initial_data.spectrum_exponent", cfg.initial.spectrum_exponent);
        cfg.initial.mode_m1 = int(doc.get_int("initial_data.mode_m1", cfg.initial.mode_m1));
        cfg.initial.mode_m2 = int(doc.get_int("initial_data.mode_m2", cfg.initial.mode_m2));
        cfg.initial.validate();
    }

    cfg.outputs.directory = doc.get_string("outputs.directory", cfg.outputs.directory);
    cfg.outputs.emit_csv = doc.get_bool("outputs.emit_csv", cfg.outputs.emit_csv);
    cfg.outputs.emit_json = doc.get_bool("outputs.emit_json", cfg.outputs.emit_json);
    cfg.outputs.emit_snapshots = doc.get_bool("outputs.emit_snapshots", cfg.outputs.emit_snapshots);
    cfg.outputs.emit_svg = doc.get_bool("outputs.emit_svg", cfg.outputs.emit_svg);

    if (doc.has_prefix("checks.energy_equality"))
        cfg.checks.energy_equality_tol = doc.get_double("checks.energy_equality.tol", 1e-6);
    if (doc.has_prefix("checks.psi_monotonicity"))
        cfg.checks.psi_monotonicity_slack = doc.get_double("checks.psi_monotonicity.slack", 1e-10);
    if (doc.has_prefix("checks.identity"))
        cfg.checks.identity_tol = doc.get_double("checks.identity.tol", 1e-6);
    if (doc.has_prefix("checks.fourier_splitting")) {
        GSchedule gs;
        gs.alpha = doc.get_double("checks.fourier_splitting.alpha", gs.alpha);
        gs.A = doc.get_double("checks.fourier_splitting.A", gs.A);
        cfg.checks.fourier_splitting = gs;
        cfg.checks.fourier_splitting_ratio_max =
            doc.get_double("checks.fourier_splitting.ratio_max", 2.0);
    }
    if (doc.has_prefix("checks.little_o"))
        cfg.checks.little_o_factor = doc.get_double("checks.little_o.factor", 0.1);
    if (doc.has_prefix("checks.linear_match"))
        cfg.checks.linear_match_tol = doc.get_double("checks.linear_match.tol", 1e-12);
    for (const char* name : {"slope_u", "slope_h"})
        if (doc.has_prefix(std::string("checks.") + name))
            cfg.checks.slopes.push_back(parse_slope_check(doc, std::string("checks.") + name));

    if (doc.has_prefix("linear_decay")) {
        cfg.linear_decay.data.Gamma = doc.get_double("linear_decay.Gamma", 1.0);
        cfg.linear_decay.data.phi = phi_from_name(doc.get_string("linear_decay.phi", "algebraic"));
        cfg.linear_decay.data.amplitude = doc.get_double("linear_decay.amplitude", 1.0);
        cfg.linear_decay.data.kind =
            radial_kind_from_name(doc.get_string("linear_decay.data_kind", "velocity_only"));
        cfg.linear_decay.t_lo = doc.get_double("linear_decay.t_lo", cfg.linear_decay.t_lo);
        cfg.linear_decay.t_hi = doc.get_double("linear_decay.t_hi", cfg.linear_decay.t_hi);
        cfg.linear_decay.points = int(doc.get_int("linear_decay.points", cfg.linear_decay.points));
        if (doc.has("linear_decay.u_slope_target")) {
            cfg.linear_decay.u_slope_target = doc.at("linear_decay.u_slope_target").as_double();
            cfg.linear_decay.u_slope_tol = doc.get_double("linear_decay.u_slope_tol", 0.05);
        }
        if (doc.has("linear_decay.h_slope_target")) {
            cfg.linear_decay.h_slope_target = doc.at("linear_decay.h_slope_target").as_double();
            cfg.linear_decay.h_slope_tol = doc.get_double("linear_decay.h_slope_tol", 0.1);
        }
        cfg.linear_decay.data.validate();
        require(cfg.linear_decay.t_lo > 0.0 && cfg.linear_decay.t_hi > cfg.linear_decay.t_lo,
                errc::validation, "linear_decay: need 0 < t_lo < t_hi");
        require(cfg.linear_decay.points >= 8, errc::validation,
                "linear_decay: need at least 8 points");
    }

    if (doc.has_prefix("symbol_verify")) {
        auto& sv = cfg.symbol_verify;
        sv.r_lo = doc.get_double("symbol_verify.r_lo", sv.r_lo);
        sv.r_hi = doc.get_double("symbol_verify.r_hi", sv.r_hi);
        sv.r_points = int(doc.get_int("symbol_verify.r_points", sv.r_points));
        sv.t_lo = doc.get_double("symbol_verify.t_lo", sv.t_lo);
        sv.t_hi = doc.get_double("symbol_verify.t_hi", sv.t_hi);
        sv.t_points = int(doc.get_int("symbol_verify.t_points", sv.t_points));
        sv.ratio_limit = doc.get_double("symbol_verify.ratio_limit", sv.ratio_limit);
        require(sv.t_lo >= 1.0, errc::validation,
                "symbol_verify: the bounds hold for t >= 1 only; t_lo must be >= 1");
    }

    if (doc.has_prefix("profile_error")) {
        auto& pe = cfg.profile_error;
        pe.zeta_Gamma = doc.get_double("profile_error.zeta_Gamma", pe.zeta_Gamma);
        pe.ratio_max = doc.get_double("profile_error.ratio_max", pe.ratio_max);
        pe.h_ratio_slope_target =
            doc.get_double("profile_error.h_ratio_slope_target", pe.h_ratio_slope_target);
        pe.h_ratio_slope_tol =
            doc.get_double("profile_error.h_ratio_slope_tol", pe.h_ratio_slope_tol);
        pe.t_lo = doc.get_double("profile_error.t_lo", pe.t_lo);
        pe.t_hi = doc.get_double("profile_error.t_hi", pe.t_hi);
    }

    if (doc.has_prefix("compare_ns")) {
        auto& cn = cfg.compare_ns;
        cn.final_ratio_max = doc.get_double("compare_ns.final_ratio_max", cn.final_ratio_max);
        cn.slope_gap_min = doc.get_double("compare_ns.slope_gap_min", cn.slope_gap_min);
        cn.t_lo = doc.get_double("compare_ns.t_lo", cn.t_lo);
        cn.t_hi = doc.get_double("compare_ns.t_hi", cn.t_hi);
    }

    cfg.diag_profile_errors = doc.get_bool("diagnostics.profile_errors", false);
    cfg.diag_sup_norms = doc.get_bool("diagnostics.sup_norms", false);
    cfg.seed = std::uint64_t(doc.get_int("seed", 1));
    cfg.threads = int(doc.get_int("threads", 1));
    require(cfg.threads >= 1, errc::validation, "threads must be >= 1");
    cfg.strict = doc.get_bool("strict", false);
    cfg.time.strict = cfg.strict;

    const auto leftovers = doc.unconsumed();
    if (!leftovers.empty()) {
        std::ostringstream msg;
        msg << "unknown config key";
        if (leftovers.size() > 1) msg << "s";
        for (const auto& [path, line] : leftovers) msg << " '" << path << "' (line " << line << ")";
        fail(errc::validation, msg.str());
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io, "cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_echo_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["params"] = {{"mu", c.params.mu}, {"chi", c.params.chi}, {"gamma", c.params.gamma}};
    j["grid"] = {{"n", c.n}, {"length", c.length}};
    j["time"] = {{"dt", c.time.dt},
                 {"t_end", c.time.t_end},
                 {"save_every", c.time.save_every},
                 {"cfl_limit", c.time.cfl_limit},
                 {"enforce_dealias", c.time.enforce_dealias}};
    j["mode"] = mode_name(c.time.mode);
    j["initial_data"] = {{"kind", initial_data_kind_name(c.initial.kind)},
                         {"amplitude", c.initial.amplitude},
                         {"Gamma", c.initial.Gamma},
                         {"phi", phi_name(c.initial.phi)},
                         {"cutoff_k", c.initial.cutoff_k},
                         {"h_amplitude", c.initial.h_amplitude},
                         {"seed", c.initial.seed}};
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["strict"] = c.strict;
    return j.dump(2);
}

}  // namespace mpflow
