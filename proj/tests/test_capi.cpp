// Exercises the shared-library surface through the C header only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "mpflow.h"

namespace fs = std::filesystem;

TEST_CASE("version and status names") {
    int maj = -1, min = -1, pat = -1;
    mp_version(&maj, &min, &pat);
    CHECK(maj == 0);
    CHECK(min >= 1);
    CHECK(pat >= 0);
    CHECK(std::strcmp(mp_status_name(MP_OK), "ok") == 0);
    CHECK(std::strcmp(mp_status_name(MP_ERR_PARSE), "parse_error") == 0);
}

TEST_CASE("config parsing through the C API") {
    mp_config* cfg = nullptr;
    CHECK(mp_config_parse_string("[params]\nmu = 2.0\n", &cfg) == MP_OK);
    REQUIRE(cfg != nullptr);
    CHECK(mp_config_set_seed(cfg, 42) == MP_OK);
    CHECK(mp_config_set_threads(cfg, 0) == MP_ERR_INVALID_ARGUMENT);
    CHECK(mp_config_set_threads(cfg, 2) == MP_OK);
    mp_config_free(cfg);

    mp_config* bad = nullptr;
    CHECK(mp_config_parse_string("[params]\nmu = -3\n", &bad) == MP_ERR_VALIDATION);
    CHECK(std::strlen(mp_last_error()) > 0);
    CHECK(mp_config_parse_string("oops\n", &bad) == MP_ERR_PARSE);
    CHECK(mp_config_parse_file("/nonexistent/path.toml", &bad) == MP_ERR_IO);
    CHECK(mp_config_parse_string(nullptr, &bad) == MP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("symbol evaluation and scalar helpers") {
    double e[4] = {0, 0, 0, 0};
    REQUIRE(mp_symbol_eval(1.0, 1.0, 0.0, 1.0, 0.0, e) == MP_OK);
    CHECK(e[0] == 1.0);
    CHECK(e[1] == 0.0);
    CHECK(e[3] == 1.0);
    CHECK(mp_symbol_eval(1.0, 1.0, 0.0, 1.0, -1.0, e) == MP_ERR_INVALID_ARGUMENT);
    CHECK(mp_symbol_eval(-1.0, 1.0, 0.0, 1.0, 1.0, e) == MP_ERR_INVALID_ARGUMENT);

    double s[7];
    REQUIRE(mp_symbol_intermediates(1.0, 1.0, 0.0, 1.0, s) == MP_OK);
    CHECK(s[1] == doctest::Approx(3.0));   // alpha
    CHECK(s[2] == doctest::Approx(-1.0));  // beta
    CHECK(s[3] == doctest::Approx(5.0));   // D

    double oracle[4];
    REQUIRE(mp_expm_oracle(1.0, 1.0, 0.0, 1.0, 1.0, oracle) == MP_OK);
    REQUIRE(mp_symbol_eval(1.0, 1.0, 0.0, 1.0, 1.0, e) == MP_OK);
    CHECK(std::abs(oracle[0] - e[0]) <= 1e-9);
    CHECK(std::abs(oracle[1] - 1.0 * e[1]) <= 1e-9);  // top-right is R * e12

    double delta = 0.0;
    REQUIRE(mp_delta_fs(1.0, 1.0, &delta) == MP_OK);
    CHECK(delta == doctest::Approx(6.0 - std::sqrt(20.0)).epsilon(1e-14));
    double a = 0.0;
    REQUIRE(mp_a_coeff(1.0, 1.0, 1.0, &a) == MP_OK);
    CHECK(a == doctest::Approx(1.0));
    double zt = 0.0;
    REQUIRE(mp_zeta(9.0, 1.5, &zt) == MP_OK);
    CHECK(zt == doctest::Approx(0.01));
    CHECK(mp_zeta(9.0, 3.0, &zt) == MP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("radial norms through the C API") {
    double v = 0.0;
    REQUIRE(mp_radial_norm_sq(1.0, 1.0, 1.0, 1.0, "algebraic", "velocity_only", 1.0, "u_L", 10.0,
                              &v) == MP_OK);
    CHECK(v > 0.0);
    CHECK(mp_radial_norm_sq(1.0, 1.0, 1.0, 1.0, "bogus", "velocity_only", 1.0, "u_L", 10.0, &v) ==
          MP_ERR_INVALID_ARGUMENT);
    CHECK(mp_radial_norm_sq(1.0, 1.0, 1.0, 1.0, "algebraic", "velocity_only", 1.0, "nope", 10.0,
                            &v) == MP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("a tiny simulate run end to end through the C API") {
    const fs::path dir = fs::temp_directory_path() / "mpflow_capi_run";
    fs::remove_all(dir);
    mp_config* cfg = nullptr;
    const char* text =
        "[grid]\nn = 32\n"
        "[time]\ndt = 0.0005\nt_end = 0.2\n"
        "[initial_data]\nkind = \"gaussian_vortex\"\namplitude = 0.5\nwidth = 1.0\n"
        "[checks.energy_equality]\ntol = 1e-5\n";
    REQUIRE(mp_config_parse_string(text, &cfg) == MP_OK);
    int failed = -1;
    CHECK(mp_run_simulate(cfg, dir.string().c_str(), &failed) == MP_OK);
    CHECK(failed == 0);
    CHECK(fs::exists(dir / "trajectory.csv"));
    CHECK(fs::exists(dir / "manifest.json"));

    mp_plot_options opts{};
    opts.y_columns = "energy_u";
    opts.log_y = 1;
    CHECK(mp_plot_csv((dir / "trajectory.csv").string().c_str(),
                      (dir / "energy.svg").string().c_str(), &opts) == MP_OK);
    CHECK(fs::exists(dir / "energy.svg"));
    CHECK(mp_plot_csv("/nonexistent.csv", (dir / "x.svg").string().c_str(), &opts) == MP_ERR_IO);
    mp_config_free(cfg);
}
