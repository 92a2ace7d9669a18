// Command-line front end for the mpflow shared library.  Talks to the
// library exclusively through the C API in mpflow.h.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "mpflow.h"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
    auto* copt = cmd->add_option("--config", args.config_path, "experiment config (TOML)");
    if (needs_config) copt->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: from config)");
    cmd->add_option("--seed", args.seed, "override the config seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--threads", args.threads, "worker threads for sweeps");
    cmd->add_flag("--strict", args.strict, "treat warnings as errors");
}

int fail_with(mp_status status) {
    std::fprintf(stderr, "error (%s): %s\n", mp_status_name(status), mp_last_error());
    return status == MP_ERR_CHECKS_FAILED ? 1 : 2;
}

using Runner = mp_status (*)(const mp_config*, const char*, int*);

int run(const CommonArgs& args, Runner runner, const char* name) {
    mp_config* config = nullptr;
    mp_status st = mp_config_parse_file(args.config_path.c_str(), &config);
    if (st != MP_OK) return fail_with(st);
    if (args.seed_set) mp_config_set_seed(config, args.seed);
    if (args.threads > 0)
        if ((st = mp_config_set_threads(config, args.threads)) != MP_OK) {
            mp_config_free(config);
            return fail_with(st);
        }
    if (args.strict) mp_config_set_strict(config, 1);
    const std::string out_dir = args.out_dir.empty() ? std::string("out/") + name : args.out_dir;
    int checks_failed = 0;
    st = runner(config, out_dir.c_str(), &checks_failed);
    mp_config_free(config);
    if (st == MP_OK) {
        std::printf("%s: ok (outputs in %s)\n", name, out_dir.c_str());
        return 0;
    }
    if (st == MP_ERR_CHECKS_FAILED)
        std::fprintf(stderr, "%s: %d check(s) failed: %s\n", name, checks_failed, mp_last_error());
    else
        return fail_with(st);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mpflow: 2D micropolar fluid laboratory"};
    app.require_subcommand(1);

    int vmaj = 0, vmin = 0, vpat = 0;
    mp_version(&vmaj, &vmin, &vpat);
    app.set_version_flag("--version", std::to_string(vmaj) + "." + std::to_string(vmin) + "." +
                                          std::to_string(vpat));

    CommonArgs sym, lin, simargs, decay, prof, comp;
    auto* c_sym = app.add_subcommand("symbol-verify", "sweep the linear-symbol bounds");
    add_common(c_sym, sym);
    auto* c_lin = app.add_subcommand("linear-decay", "radial-quadrature linear decay rates");
    add_common(c_lin, lin);
    auto* c_sim = app.add_subcommand("simulate", "run the nonlinear (or linear) solver");
    add_common(c_sim, simargs);
    auto* c_dec = app.add_subcommand("decay-study", "nonlinear decay-rate study");
    add_common(c_dec, decay);
    auto* c_pro = app.add_subcommand("profile-error", "distance to the linear evolution");
    add_common(c_pro, prof);
    auto* c_cmp = app.add_subcommand("compare-ns", "micropolar vs Navier-Stokes dissipation");
    add_common(c_cmp, comp);

    std::string plot_csv_path, plot_svg, plot_x = "t", plot_y, plot_title;
    bool plot_logx = false, plot_logy = false;
    auto* c_plot = app.add_subcommand("plot", "render a CSV as an SVG chart");
    c_plot->add_option("--csv", plot_csv_path, "input CSV")->required();
    c_plot->add_option("--out", plot_svg, "output SVG path")->required();
    c_plot->add_option("--x", plot_x, "x column (default t)");
    c_plot->add_option("--y", plot_y, "comma-separated y columns (default: all)");
    c_plot->add_flag("--log-x", plot_logx, "logarithmic x axis");
    c_plot->add_flag("--log-y", plot_logy, "logarithmic y axis");
    c_plot->add_option("--title", plot_title, "chart title");

    CLI11_PARSE(app, argc, argv);

    if (c_sym->parsed()) return run(sym, mp_run_symbol_verify, "symbol-verify");
    if (c_lin->parsed()) return run(lin, mp_run_linear_decay, "linear-decay");
    if (c_sim->parsed()) return run(simargs, mp_run_simulate, "simulate");
    if (c_dec->parsed()) return run(decay, mp_run_decay_study, "decay-study");
    if (c_pro->parsed()) return run(prof, mp_run_profile_error, "profile-error");
    if (c_cmp->parsed()) return run(comp, mp_run_compare_ns, "compare-ns");
    if (c_plot->parsed()) {
        mp_plot_options opts{};
        opts.x_column = plot_x.c_str();
        opts.y_columns = plot_y.empty() ? nullptr : plot_y.c_str();
        opts.log_x = plot_logx ? 1 : 0;
        opts.log_y = plot_logy ? 1 : 0;
        opts.title = plot_title.empty() ? nullptr : plot_title.c_str();
        const mp_status st = mp_plot_csv(plot_csv_path.c_str(), plot_svg.c_str(), &opts);
        if (st != MP_OK) return fail_with(st);
        std::printf("plot: wrote %s\n", plot_svg.c_str());
        return 0;
    }
    return 0;
}
