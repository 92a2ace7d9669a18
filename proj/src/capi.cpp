#include "mpflow.h"

#include <cstring>
#include <sstream>

#include "mpflow/experiments.hpp"
#include "mpflow/plot.hpp"

using namespace mpflow;

struct mp_config {
    ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

mp_status status_of(errc code) {
    switch (code) {
        case errc::invalid_argument: return MP_ERR_INVALID_ARGUMENT;
        case errc::parse: return MP_ERR_PARSE;
        case errc::validation: return MP_ERR_VALIDATION;
        case errc::io: return MP_ERR_IO;
        case errc::diverged: return MP_ERR_DIVERGED;
        case errc::numerical: return MP_ERR_NUMERICAL;
        case errc::internal: return MP_ERR_INTERNAL;
    }
    return MP_ERR_INTERNAL;
}

template <typename Fn>
mp_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MP_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return MP_ERR_INTERNAL;
    }
}

mp_status run_command(RunSummary (*runner)(const ExperimentConfig&, const std::string&),
                      const mp_config* config, const char* out_dir, int* checks_failed) {
    if (checks_failed) *checks_failed = 0;
    return guarded([&]() -> mp_status {
        require(config != nullptr && out_dir != nullptr, errc::invalid_argument,
                "config and out_dir must not be null");
        const RunSummary summary = runner(config->cfg, out_dir);
        int failed = 0;
        std::ostringstream detail;
        for (const auto& c : summary.checks)
            if (!c.passed) {
                ++failed;
                detail << (failed > 1 ? "; " : "") << c.name << " (value " << c.value
                       << ", threshold " << c.threshold << ")";
            }
        if (checks_failed) *checks_failed = failed;
        if (failed > 0) {
            g_last_error = "checks failed: " + detail.str();
            return MP_ERR_CHECKS_FAILED;
        }
        return MP_OK;
    });
}

}  // namespace

extern "C" {

const char* mp_status_name(mp_status status) {
    switch (status) {
        case MP_OK: return "ok";
        case MP_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case MP_ERR_PARSE: return "parse_error";
        case MP_ERR_VALIDATION: return "validation_error";
        case MP_ERR_IO: return "io_error";
        case MP_ERR_DIVERGED: return "diverged";
        case MP_ERR_NUMERICAL: return "numerical_failure";
        case MP_ERR_CHECKS_FAILED: return "checks_failed";
        case MP_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* mp_last_error(void) { return g_last_error.c_str(); }

void mp_version(int* major, int* minor, int* patch) {
    if (major) *major = 0;
    if (minor) *minor = 1;
    if (patch) *patch = 0;
}

mp_status mp_config_parse_file(const char* path, mp_config** out_config) {
    return guarded([&]() -> mp_status {
        require(path != nullptr && out_config != nullptr, errc::invalid_argument,
                "path and out_config must not be null");
        auto* handle = new mp_config{parse_config_file(path)};
        *out_config = handle;
        return MP_OK;
    });
}

mp_status mp_config_parse_string(const char* text, mp_config** out_config) {
    return guarded([&]() -> mp_status {
        require(text != nullptr && out_config != nullptr, errc::invalid_argument,
                "text and out_config must not be null");
        auto* handle = new mp_config{parse_config(text)};
        *out_config = handle;
        return MP_OK;
    });
}

void mp_config_free(mp_config* config) { delete config; }

mp_status mp_config_set_seed(mp_config* config, uint64_t seed) {
    return guarded([&]() -> mp_status {
        require(config != nullptr, errc::invalid_argument, "config must not be null");
        config->cfg.seed = seed;
        return MP_OK;
    });
}

mp_status mp_config_set_threads(mp_config* config, int threads) {
    return guarded([&]() -> mp_status {
        require(config != nullptr, errc::invalid_argument, "config must not be null");
        require(threads >= 1, errc::invalid_argument, "threads must be >= 1");
        config->cfg.threads = threads;
        return MP_OK;
    });
}

mp_status mp_config_set_strict(mp_config* config, int strict) {
    return guarded([&]() -> mp_status {
        require(config != nullptr, errc::invalid_argument, "config must not be null");
        config->cfg.strict = strict != 0;
        config->cfg.time.strict = config->cfg.strict;
        return MP_OK;
    });
}

mp_status mp_run_simulate(const mp_config* c, const char* d, int* f) {
    return run_command(run_simulate, c, d, f);
}
mp_status mp_run_decay_study(const mp_config* c, const char* d, int* f) {
    return run_command(run_decay_study, c, d, f);
}
mp_status mp_run_profile_error(const mp_config* c, const char* d, int* f) {
    return run_command(run_profile_error, c, d, f);
}
mp_status mp_run_compare_ns(const mp_config* c, const char* d, int* f) {
    return run_command(run_compare_ns, c, d, f);
}
mp_status mp_run_linear_decay(const mp_config* c, const char* d, int* f) {
    return run_command(run_linear_decay, c, d, f);
}
mp_status mp_run_symbol_verify(const mp_config* c, const char* d, int* f) {
    return run_command(run_symbol_verify, c, d, f);
}

mp_status mp_plot_csv(const char* csv_path, const char* svg_path, const mp_plot_options* options) {
    return guarded([&]() -> mp_status {
        require(csv_path != nullptr && svg_path != nullptr, errc::invalid_argument,
                "csv_path and svg_path must not be null");
        PlotOptions opts;
        if (options) {
            if (options->x_column) opts.x_column = options->x_column;
            if (options->y_columns) {
                std::stringstream ss(options->y_columns);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) opts.y_columns.push_back(item);
            }
            opts.log_x = options->log_x != 0;
            opts.log_y = options->log_y != 0;
            if (options->title) opts.title = options->title;
        }
        plot_csv(read_csv(csv_path), opts, svg_path);
        return MP_OK;
    });
}

mp_status mp_symbol_eval(double mu, double chi, double gamma, double R, double t,
                         double out_entries[4]) {
    return guarded([&]() -> mp_status {
        require(out_entries != nullptr, errc::invalid_argument, "out_entries must not be null");
        const SymbolMatrix m = symbol(R, t, MaterialParams{mu, chi, gamma});
        out_entries[0] = m.e11;
        out_entries[1] = m.e12;
        out_entries[2] = m.e21;
        out_entries[3] = m.e22;
        return MP_OK;
    });
}

mp_status mp_symbol_intermediates(double mu, double chi, double gamma, double R, double out[7]) {
    return guarded([&]() -> mp_status {
        require(out != nullptr, errc::invalid_argument, "out must not be null");
        const SymbolIntermediates s = intermediates(R, MaterialParams{mu, chi, gamma});
        out[0] = s.R;
        out[1] = s.alpha;
        out[2] = s.beta;
        out[3] = s.D;
        out[4] = s.sqrtD;
        out[5] = s.decay_slow;
        out[6] = s.decay_fast;
        return MP_OK;
    });
}

mp_status mp_expm_oracle(double mu, double chi, double gamma, double R, double t,
                         double out_entries[4]) {
    return guarded([&]() -> mp_status {
        require(out_entries != nullptr, errc::invalid_argument, "out_entries must not be null");
        const auto m = expm_oracle(R, t, MaterialParams{mu, chi, gamma});
        std::memcpy(out_entries, m.data(), 4 * sizeof(double));
        return MP_OK;
    });
}

mp_status mp_delta_fs(double mu, double chi, double* out) {
    return guarded([&]() -> mp_status {
        require(out != nullptr, errc::invalid_argument, "out must not be null");
        *out = delta_fs(MaterialParams{mu, chi, 0.0});
        return MP_OK;
    });
}

mp_status mp_a_coeff(double mu, double chi, double gamma, double* out) {
    return guarded([&]() -> mp_status {
        require(out != nullptr, errc::invalid_argument, "out must not be null");
        *out = a_coeff(MaterialParams{mu, chi, gamma});
        return MP_OK;
    });
}

mp_status mp_zeta(double t, double Gamma, double* out) {
    return guarded([&]() -> mp_status {
        require(out != nullptr, errc::invalid_argument, "out must not be null");
        *out = zeta(t, Gamma);
        return MP_OK;
    });
}

mp_status mp_radial_norm_sq(double mu, double chi, double gamma, double Gamma, const char* phi,
                            const char* data_kind, double amplitude, const char* which, double t,
                            double* out) {
    return guarded([&]() -> mp_status {
        require(phi && data_kind && which && out, errc::invalid_argument,
                "phi, data_kind, which and out must not be null");
        RadialDataSpec spec;
        spec.Gamma = Gamma;
        spec.amplitude = amplitude;
        const std::string phis = phi;
        if (phis == "algebraic")
            spec.phi = PhiKind::algebraic;
        else if (phis == "gaussian")
            spec.phi = PhiKind::gaussian;
        else
            fail(errc::invalid_argument, "unknown phi: " + phis);
        const std::string kinds = data_kind;
        if (kinds == "velocity_only")
            spec.kind = RadialDataKind::velocity_only;
        else if (kinds == "micro_only")
            spec.kind = RadialDataKind::micro_only;
        else if (kinds == "enhanced_pair")
            spec.kind = RadialDataKind::enhanced_pair;
        else
            fail(errc::invalid_argument, "unknown data_kind: " + kinds);
        *out = radial_norm_sq(spec, radial_which_from_name(which), t,
                              MaterialParams{mu, chi, gamma});
        return MP_OK;
    });
}

}  // extern "C"
