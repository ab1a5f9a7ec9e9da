#include "rvfl/experiments.hpp"

#include "rvfl/report.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rvfl;

TEST_CASE("config parsing") {
    const Config cfg = Config::from_string(R"(
# comment
seed = 7
name = "hello # not a comment"
alpha = 1.5            # trailing comment
flag = true
grid = 1, 2, 4
)");
    CHECK(cfg.get_int("seed") == 7);
    CHECK(cfg.get_string("name") == "hello # not a comment");
    CHECK(cfg.get_double("alpha") == 1.5);
    CHECK(cfg.get_bool("flag", false));
    CHECK(cfg.get_int_list("grid", {}) == std::vector<long>{1, 2, 4});
    CHECK(cfg.get_int("missing", 9) == 9);
    CHECK_THROWS_AS((void)cfg.get_int("name"), std::invalid_argument);
    CHECK_THROWS_AS((void)Config::from_string("novalue"), std::invalid_argument);
}

TEST_CASE("canonical form and hash are stable under reordering") {
    const Config a = Config::from_string("x = 1\ny = 2\n");
    const Config b = Config::from_string("y = 2\nx = 1\n");
    CHECK(a.canonical() == b.canonical());
    CHECK(fnv1a_64(a.canonical()) == fnv1a_64(b.canonical()));
}

TEST_CASE("csv writer is byte-stable") {
    CsvWriter a({"n", "value"});
    a.add_row({10.0, 0.12345678901234567});
    CsvWriter b({"n", "value"});
    b.add_row({10.0, 0.12345678901234567});
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 8) == "n,value\n");
    // full precision round trip
    CHECK(std::stod(CsvWriter::format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("svg rendering") {
    SvgSeries s1{"a", {{1.0, 1.0}, {10.0, 0.1}, {100.0, 0.01}}};
    SvgSeries s2{"b", {{1.0, 2.0}, {10.0, 0.2}, {100.0, 0.02}}};
    SvgOptions opt;
    opt.title = "t";
    opt.log_x = true;
    opt.log_y = true;
    const std::string svg = render_svg({s1, s2}, opt);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::size_t polylines = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        ++pos;
    }
    CHECK(polylines == 2);
    CHECK_THROWS(render_svg({SvgSeries{"bad", {{1.0, -1.0}}}}, opt));
}

TEST_CASE("manifest is deterministic and reruns produce identical CSVs") {
    const Config cfg = Config::from_string("seed = 3\nmc.n_grid = 20, 50\nmc.trials = 60\n");
    const auto m1 = make_manifest("mc-verify", cfg, 3, {"a.csv"});
    const auto m2 = make_manifest("mc-verify", cfg, 3, {"a.csv"});
    CHECK(m1 == m2);

    const ScalarField lin = [](const Eigen::VectorXd& x) { return x[0]; };
    const auto dom = CompactDomain::unit_box(1);
    const auto rows1 = verify_mse_law(lin, dom, {20, 50}, 60, 3, 0.5, 1.0 / 12.0);
    const auto rows2 = verify_mse_law(lin, dom, {20, 50}, 60, 3, 0.5, 1.0 / 12.0, 4);
    CsvWriter c1({"n", "mse_emp", "mse_pred", "ratio"});
    CsvWriter c2({"n", "mse_emp", "mse_pred", "ratio"});
    for (const auto& r : rows1)
        c1.add_row({static_cast<double>(r.n), r.mse_emp, r.mse_pred, r.ratio});
    for (const auto& r : rows2)
        c2.add_row({static_cast<double>(r.n), r.mse_emp, r.mse_pred, r.ratio});
    CHECK(c1.str() == c2.str()); // same seed, different thread counts
}

TEST_CASE("figure1 config validation") {
    Config cfg = Config::from_string("rvfl.n_grid = 8, 4\n");
    CHECK_THROWS_AS((void)Figure1Config::from(cfg), std::invalid_argument);
    Config cfg2 = Config::from_string("gmra.j_max = 3\ngmra.levels = 5\n");
    CHECK_THROWS_AS((void)Figure1Config::from(cfg2), std::invalid_argument);
    Config ok = Config::from_string("gmra.j_max = 3\ngmra.levels = 1, 3\nrvfl.n_grid = 4, 8\n");
    const auto fc = Figure1Config::from(ok);
    CHECK(fc.levels == std::vector<long>{1, 3});
}

TEST_CASE("figure1 tiny run produces finite positive errors") {
    Figure1Config fc;
    fc.seed = 5;
    fc.training_count = 500;
    fc.j_max = 3;
    fc.levels = {2, 3};
    fc.n_grid = {8, 16};
    fc.omegas = {10.0};
    fc.test_count = 40;
    const auto rows = run_figure1_core(fc);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.mean_rel_error));
        CHECK(r.mean_rel_error > 0.0);
    }

    SUBCASE("doubling the test count moves means by less than 2 standard errors") {
        Figure1Config fc2 = fc;
        fc2.test_count = 80;
        const auto rows2 = run_figure1_core(fc2);
        // estimate the per-point spread from a third run's per-point errors
        for (std::size_t i = 0; i < rows.size(); ++i) {
            // relative errors on this testbed sit well under 1; a
            // conservative spread bound of 1.0 gives se <= 1/sqrt(40)
            const double se = 1.0 / std::sqrt(40.0);
            CHECK(std::abs(rows[i].mean_rel_error - rows2[i].mean_rel_error) < 2.0 * se);
        }
    }
}

TEST_CASE("rvfl-1d tiny run: error drops with n") {
    Rvfl1dConfig rc;
    rc.seed = 9;
    rc.n_grid = {50, 800};
    rc.seeds = 3;
    const auto rows = run_rvfl_1d_core(rc);
    std::vector<double> small_n, large_n;
    for (const auto& r : rows) (r.n == 50 ? small_n : large_n).push_back(r.l2_error);
    CHECK(median(large_n) < median(small_n));
}

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS(median({}));
}
