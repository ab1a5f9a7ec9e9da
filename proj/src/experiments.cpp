#include "rvfl/experiments.hpp"

#include "rvfl/analytic_profile.hpp"
#include "rvfl/parallel.hpp"
#include "rvfl/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

namespace rvfl {

ScalarField target_by_name(const std::string& name) {
    if (name == "exp-sum") return [](const Eigen::VectorXd& x) { return test_function_exp_sum(x); };
    if (name == "bump")
        return [](const Eigen::VectorXd& x) {
            const double t = x[0];
            if (std::abs(t) >= 1.0) return 0.0;
            return std::exp(-1.0 / (1.0 - t * t));
        };
    if (name == "coord") return [](const Eigen::VectorXd& x) { return x[0]; };
    if (name == "one") return [](const Eigen::VectorXd&) { return 1.0; };
    throw std::invalid_argument("unknown target function: " + name);
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// ---------------------------------------------------------------------------
// figure 1
// ---------------------------------------------------------------------------

Figure1Config Figure1Config::from(const Config& cfg) {
    Figure1Config fc;
    fc.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    fc.ambient_dim = static_cast<int>(cfg.get_int("sphere.ambient_dim", 20));
    fc.sphere_seed = static_cast<std::uint64_t>(cfg.get_int("sphere.seed", 7));
    fc.d = static_cast<int>(cfg.get_int("gmra.d", 2));
    fc.j_max = static_cast<int>(cfg.get_int("gmra.j_max", 10));
    fc.training_count = static_cast<int>(cfg.get_int("gmra.training_count", 5000));
    fc.levels = cfg.get_int_list("gmra.levels", fc.levels);
    fc.n_grid = cfg.get_int_list("rvfl.n_grid", fc.n_grid);
    fc.alpha = cfg.get_double("rvfl.alpha", 2.0);
    fc.omegas = cfg.get_double_list("rvfl.omega_grid", fc.omegas);
    fc.activation = cfg.get_string("rvfl.activation", "sech");
    fc.mode = cfg.get_string("rvfl.mode", "lsq");
    fc.ridge = cfg.get_double("rvfl.ridge", 0.0);
    fc.neighborhood_scale = cfg.get_double("rvfl.neighborhood_scale", 2.0);
    fc.test_count = static_cast<int>(cfg.get_int("test.count", 200));

    if (fc.training_count < 1 || fc.test_count < 1 || fc.j_max < 0)
        throw std::invalid_argument("figure1: counts must be positive");
    for (std::size_t i = 1; i < fc.n_grid.size(); ++i)
        if (fc.n_grid[i] <= fc.n_grid[i - 1])
            throw std::invalid_argument("figure1: n grid must be strictly increasing");
    for (long j : fc.levels)
        if (j < 0 || j > fc.j_max)
            throw std::invalid_argument("figure1: requested level outside [0, j_max]");
    if (fc.mode != "lsq" && fc.mode != "analytic")
        throw std::invalid_argument("figure1: mode must be lsq or analytic");
    return fc;
}

std::vector<Figure1Row> run_figure1_core(const Figure1Config& fc, unsigned threads) {
    const EmbeddedSphere sphere(fc.ambient_dim, fc.sphere_seed);
    const auto training = sphere.sample(fc.training_count, mix64(fc.seed ^ 0x7261696eULL));
    const auto test_points = sphere.sample(fc.test_count, mix64(fc.seed ^ 0x74657374ULL));
    const ScalarField f = target_by_name("exp-sum");
    const Activation rho = Activation::by_name(fc.activation);
    const TrainMode mode = fc.mode == "lsq" ? TrainMode::Lsq : TrainMode::Analytic;
    const Activation rho_used =
        mode == TrainMode::Analytic ? normalize_to_unit_integral(rho) : rho;

    const GmraTree tree = gmra_build(training, fc.d, fc.j_max, fc.seed, threads);

    struct Cell {
        int level;
        double omega;
        long n;
    };
    std::vector<Cell> grid;
    for (long j : fc.levels)
        for (double omega : fc.omegas)
            for (long n : fc.n_grid) grid.push_back({static_cast<int>(j), omega, n});

    std::vector<Figure1Row> rows(grid.size());
    parallel_for(
        grid.size(),
        [&](std::size_t g) {
            const Cell& cell = grid[g];
            ManifoldTrainConfig mc;
            mc.alpha = fc.alpha;
            mc.omega = cell.omega;
            mc.n_nodes = static_cast<int>(cell.n);
            mc.ridge = fc.ridge;
            mc.neighborhood_scale = fc.neighborhood_scale;
            // one master seed for the whole grid: node draws nest across the
            // n axis, which keeps the error curves comparable point to point
            const ManifoldModel model =
                train_manifold(f, tree, training, cell.level, mc, mode, rho_used, fc.seed, 1);
            const auto rep = relative_error_suite(model, f, test_points, 1);
            rows[g] = Figure1Row{cell.level, cell.omega, cell.n, rep.mean};
        },
        threads);
    return rows;
}

void run_figure1(const Config& cfg, const std::string& out_dir, unsigned threads) {
    const Figure1Config fc = Figure1Config::from(cfg);
    const auto rows = run_figure1_core(fc, threads);

    std::filesystem::create_directories(out_dir);
    CsvWriter csv({"j", "omega", "n", "mean_rel_error"});
    for (const auto& r : rows)
        csv.add_row({static_cast<double>(r.level), r.omega, static_cast<double>(r.n),
                     r.mean_rel_error});
    const std::string csv_path = out_dir + "/figure1.csv";
    csv.save(csv_path);

    std::vector<SvgSeries> series;
    for (long j : fc.levels)
        for (double omega : fc.omegas) {
            SvgSeries s;
            s.label = "j=" + std::to_string(j) + " omega=" + CsvWriter::format_double(omega);
            for (const auto& r : rows)
                if (r.level == j && r.omega == omega)
                    s.points.emplace_back(static_cast<double>(r.n), r.mean_rel_error);
            series.push_back(std::move(s));
        }
    SvgOptions opt;
    opt.title = "Mean relative error vs nodes";
    opt.x_label = "nodes n";
    opt.y_label = "mean relative error";
    opt.log_x = true;
    opt.log_y = true;
    const std::string svg_path = out_dir + "/figure1.svg";
    save_svg(series, opt, svg_path);
    save_manifest("figure1", cfg, fc.seed, {csv_path, svg_path}, out_dir + "/figure1.manifest.json");
}

// ---------------------------------------------------------------------------
// mc-verify
// ---------------------------------------------------------------------------

void run_mc_verify(const Config& cfg, const std::string& out_dir, unsigned threads) {
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    const auto n_grid = cfg.get_int_list("mc.n_grid", {100, 1000, 10000});
    const int trials = static_cast<int>(cfg.get_int("mc.trials", 10000));
    const std::string target = cfg.get_string("mc.target", "coord");
    const double lo = cfg.get_double("mc.domain_lo", 0.0);
    const double hi = cfg.get_double("mc.domain_hi", 1.0);

    const CompactDomain domain = CompactDomain::interval(lo, hi);
    const ScalarField f = target_by_name(target);
    std::optional<double> exact_i, exact_s;
    if (cfg.has("mc.exact_integral")) exact_i = cfg.get_double("mc.exact_integral");
    if (cfg.has("mc.exact_sigma_sq")) exact_s = cfg.get_double("mc.exact_sigma_sq");

    const auto rows = verify_mse_law(f, domain, n_grid, trials, seed, exact_i, exact_s, threads);

    std::filesystem::create_directories(out_dir);
    CsvWriter csv({"n", "mse_emp", "mse_pred", "ratio"});
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        csv.add_row({static_cast<double>(r.n), r.mse_emp, r.mse_pred, r.ratio});
        xs.push_back(static_cast<double>(r.n));
        ys.push_back(r.mse_emp);
    }
    const std::string csv_path = out_dir + "/mc_verify.csv";
    csv.save(csv_path);

    SvgSeries emp{"empirical MSE", {}};
    SvgSeries pred{"predicted vol^2 sigma^2 / n", {}};
    for (const auto& r : rows) {
        emp.points.emplace_back(static_cast<double>(r.n), r.mse_emp);
        pred.points.emplace_back(static_cast<double>(r.n), r.mse_pred);
    }
    SvgOptions opt;
    const double slope = loglog_slope(xs, ys);
    opt.title = "Monte-Carlo MSE law (log-log slope " + CsvWriter::format_double(slope) + ")";
    opt.x_label = "samples n";
    opt.y_label = "mean-square error";
    opt.log_x = true;
    opt.log_y = true;
    const std::string svg_path = out_dir + "/mc_verify.svg";
    save_svg({emp, pred}, opt, svg_path);
    save_manifest("mc-verify", cfg, seed, {csv_path, svg_path},
                  out_dir + "/mc_verify.manifest.json");
}

// ---------------------------------------------------------------------------
// rvfl-1d
// ---------------------------------------------------------------------------

Rvfl1dConfig Rvfl1dConfig::from(const Config& cfg) {
    Rvfl1dConfig rc;
    rc.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    rc.n_grid = cfg.get_int_list("rvfl1d.n_grid", rc.n_grid);
    rc.seeds = static_cast<int>(cfg.get_int("rvfl1d.seeds", 10));
    rc.alpha = cfg.get_double("rvfl1d.alpha", 1.0);
    rc.omega = cfg.get_double("rvfl1d.omega", rc.omega);
    rc.activation = cfg.get_string("rvfl1d.activation", "sech");
    rc.target = cfg.get_string("rvfl1d.target", "bump");
    rc.k_lo = cfg.get_double("rvfl1d.domain_lo", -1.0);
    rc.k_hi = cfg.get_double("rvfl1d.domain_hi", 1.0);
    if (rc.seeds < 1) throw std::invalid_argument("rvfl1d: seeds must be >= 1");
    return rc;
}

std::vector<Rvfl1dRow> run_rvfl_1d_core(const Rvfl1dConfig& rc, unsigned threads) {
    const CompactDomain domain = CompactDomain::interval(rc.k_lo, rc.k_hi);
    const ScalarField f = target_by_name(rc.target);
    const Activation rho = normalize_to_unit_integral(Activation::by_name(rc.activation));

    ParamConfig base;
    base.alpha = rc.alpha;
    base.omega = rc.omega;
    base.dim = 1;
    const AnalyticProfile1D profile(
        [&](double x) {
            Eigen::VectorXd v(1);
            v[0] = x;
            return f(v);
        },
        ParamConfig{rc.alpha, rc.omega, 1, 1, URange::Full}, domain, rho);

    struct Job {
        long n;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (long n : rc.n_grid)
        for (int s = 0; s < rc.seeds; ++s)
            jobs.push_back({n, mix64(rc.seed ^ (static_cast<std::uint64_t>(s) << 8))});

    std::vector<Rvfl1dRow> rows(jobs.size());
    parallel_for(
        jobs.size(),
        [&](std::size_t i) {
            ParamConfig cfg = base;
            cfg.n_nodes = static_cast<int>(jobs[i].n);
            const auto samples = sample_nodes(cfg, domain, jobs[i].seed);
            const RVFLNetwork net =
                analytic_weights(f, cfg, domain, samples, WeightRegime::Integrable, rho);
            rows[i] = Rvfl1dRow{jobs[i].n, jobs[i].seed, profile.l2_error_vs(net)};
        },
        threads);
    return rows;
}

void run_rvfl_1d(const Config& cfg, const std::string& out_dir, unsigned threads) {
    const Rvfl1dConfig rc = Rvfl1dConfig::from(cfg);
    const auto rows = run_rvfl_1d_core(rc, threads);

    std::filesystem::create_directories(out_dir);
    CsvWriter csv({"n", "seed", "l2_error"});
    for (const auto& r : rows)
        csv.add_row({static_cast<double>(r.n), static_cast<double>(r.seed), r.l2_error});
    const std::string csv_path = out_dir + "/rvfl1d.csv";
    csv.save(csv_path);

    SvgSeries med{"median over seeds", {}};
    std::vector<double> xs, ys;
    for (long n : rc.n_grid) {
        std::vector<double> errs;
        for (const auto& r : rows)
            if (r.n == n) errs.push_back(r.l2_error);
        const double m = median(errs);
        med.points.emplace_back(static_cast<double>(n), m);
        xs.push_back(static_cast<double>(n));
        ys.push_back(m);
    }
    SvgOptions opt;
    opt.title = "L2 error vs nodes (slope " + CsvWriter::format_double(loglog_slope(xs, ys)) + ")";
    opt.x_label = "nodes n";
    opt.y_label = "integrated squared error";
    opt.log_x = true;
    opt.log_y = true;
    const std::string svg_path = out_dir + "/rvfl1d.svg";
    save_svg({med}, opt, svg_path);
    save_manifest("rvfl-1d", cfg, rc.seed, {csv_path, svg_path},
                  out_dir + "/rvfl1d.manifest.json");
}

} // namespace rvfl
