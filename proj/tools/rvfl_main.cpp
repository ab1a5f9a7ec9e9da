// Command-line harness: model training/evaluation plus the experiment
// drivers (mc-verify, rvfl-1d, figure1). See README.md for the config
// schema.

#include "rvfl/analytic_profile.hpp"
#include "rvfl/experiments.hpp"
#include "rvfl/manifold.hpp"
#include "rvfl/network.hpp"
#include "rvfl/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace rvfl;

Config load_config(const std::string& path) {
    return path.empty() ? Config{} : Config::from_file(path);
}

void apply_overrides(Config& cfg, long seed_override, long threads_override) {
    if (seed_override >= 0) cfg.set("seed", std::to_string(seed_override));
    if (threads_override >= 0) cfg.set("threads", std::to_string(threads_override));
}

CompactDomain domain_from_config(const Config& cfg) {
    const std::string kind = cfg.get_string("domain.kind", "box");
    if (kind == "ball") {
        std::vector<double> center = cfg.get_double_list("domain.center", {0.0});
        Eigen::VectorXd c = Eigen::Map<Eigen::VectorXd>(center.data(),
                                                        static_cast<long>(center.size()));
        return CompactDomain::ball(c, cfg.get_double("domain.radius"));
    }
    if (kind != "box") throw std::invalid_argument("domain.kind must be box or ball");
    // bounds like "-1:1, -1:1"
    const std::string raw = cfg.get_string("domain.bounds", "-1:1");
    std::vector<std::pair<double, double>> bounds;
    std::stringstream ss(raw);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("domain.bounds entries must look like lo:hi");
        bounds.emplace_back(std::stod(part.substr(0, colon)), std::stod(part.substr(colon + 1)));
    }
    return CompactDomain::box(std::move(bounds));
}

ParamConfig param_config_from(const Config& cfg, int dim) {
    ParamConfig pc;
    pc.alpha = cfg.get_double("alpha", 1.0);
    pc.omega = cfg.get_double("omega", 3.14159265358979323846);
    pc.n_nodes = static_cast<int>(cfg.get_int("n_nodes", 128));
    pc.dim = dim;
    pc.u_range = cfg.get_string("u_range", "full") == "omega" ? URange::Omega : URange::Full;
    return pc;
}

unsigned threads_from(const Config& cfg) {
    return static_cast<unsigned>(cfg.get_int("threads", 0));
}

std::vector<Eigen::VectorXd> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file " + path);
    std::vector<Eigen::VectorXd> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric && pts.empty()) continue; // header row
        if (!numeric) throw std::runtime_error("non-numeric row in " + path);
        pts.push_back(Eigen::Map<Eigen::VectorXd>(row.data(), static_cast<long>(row.size())));
    }
    if (pts.empty()) throw std::runtime_error("no points in " + path);
    return pts;
}

int cmd_train_analytic(const Config& cfg, const std::string& out_path) {
    const CompactDomain domain = domain_from_config(cfg);
    const ParamConfig pc = param_config_from(cfg, domain.dim());
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    const ScalarField f = target_by_name(cfg.get_string("target", "bump"));
    const Activation rho =
        normalize_to_unit_integral(Activation::by_name(cfg.get_string("activation", "sech")));
    const WeightRegime regime = rho.kind() == Activation::Kind::Integrable
                                    ? WeightRegime::Integrable
                                    : WeightRegime::DerivativeIntegrable;
    const auto samples = sample_nodes(pc, domain, seed);
    const RVFLNetwork net = analytic_weights(f, pc, domain, samples, regime, rho);
    save_network(net, out_path);
    std::cout << "wrote " << out_path << " (" << net.size() << " nodes, dim " << net.dim()
              << ")\n";
    return 0;
}

int cmd_train_lsq(const Config& cfg, const std::string& out_path) {
    const CompactDomain domain = domain_from_config(cfg);
    const ParamConfig pc = param_config_from(cfg, domain.dim());
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    const ScalarField f = target_by_name(cfg.get_string("target", "bump"));
    const Activation rho = Activation::by_name(cfg.get_string("activation", "sech"));
    const int m = static_cast<int>(cfg.get_int("train.count", 256));
    const double ridge = cfg.get_double("ridge", 0.0);

    const auto points = sample_uniform(domain, m, mix64(seed ^ 0x706f696eULL));
    std::vector<double> labels(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) labels[i] = f(points[i]);
    const auto nodes = sample_nodes(pc, domain, seed);
    const LsqResult res = lsq_train(points, labels, nodes, rho, ridge);
    if (res.ill_conditioned)
        std::cerr << "warning: rank-deficient feature matrix (rank " << res.rank
                  << "); returned the minimum-norm solution\n";
    save_network(res.net, out_path);
    std::cout << "wrote " << out_path << " (relative residual " << res.relative_residual
              << ")\n";
    return 0;
}

Eigen::VectorXd parse_point(const std::string& raw) {
    std::vector<double> vals;
    std::stringstream ss(raw);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RVFL networks with analytic output weights and GMRA manifold charts"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", out_path = "model.json", model_path, point_raw,
                points_path, tree_path = "gmra.json";
    long seed_override = -1, threads_override = -1;
    int gmra_d = 2, gmra_jmax = 10;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config,-c", config_path, "config file (key = value)");
        sub->add_option("--seed", seed_override, "override config seed");
        sub->add_option("--threads", threads_override, "worker threads (0 = hardware)");
    };

    auto* train_analytic = app.add_subcommand("train-analytic",
                                              "closed-form output weights from the integral "
                                              "representation");
    add_common(train_analytic);
    train_analytic->add_option("--out", out_path, "output model path");

    auto* train_lsq = app.add_subcommand("train-lsq", "least-squares output weights");
    add_common(train_lsq);
    train_lsq->add_option("--out", out_path, "output model path");

    auto* eval = app.add_subcommand("eval", "evaluate a saved model at a point");
    eval->add_option("--model", model_path)->required();
    eval->add_option("--point", point_raw, "comma-separated coordinates")->required();

    auto* l2err = app.add_subcommand("l2err", "Monte-Carlo L2 error of a model against a target");
    add_common(l2err);
    l2err->add_option("--model", model_path)->required();

    auto* mc_verify = app.add_subcommand("mc-verify", "Monte-Carlo MSE-law table");
    add_common(mc_verify);
    mc_verify->add_option("--out-dir", out_dir);

    auto* gmra_cmd = app.add_subcommand("gmra-build", "build a GMRA tree from a point cloud");
    gmra_cmd->add_option("--points", points_path, "CSV of points, one per row")->required();
    gmra_cmd->add_option("--d", gmra_d, "intrinsic dimension")->required();
    gmra_cmd->add_option("--jmax", gmra_jmax, "maximum refinement level")->required();
    gmra_cmd->add_option("--seed", seed_override);
    gmra_cmd->add_option("--out", tree_path, "output tree path");

    auto* train_manifold_cmd =
        app.add_subcommand("train-manifold", "train per-cell charts over a GMRA level");
    add_common(train_manifold_cmd);
    train_manifold_cmd->add_option("--out", out_path, "output model path");

    auto* predict_cmd = app.add_subcommand("predict", "evaluate a manifold model at a point");
    predict_cmd->add_option("--model", model_path)->required();
    predict_cmd->add_option("--point", point_raw)->required();

    auto* figure1 = app.add_subcommand("figure1", "sphere experiment: error vs nodes");
    add_common(figure1);
    figure1->add_option("--out-dir", out_dir);

    auto* rvfl1d = app.add_subcommand("rvfl-1d", "1-D analytic construction: error vs nodes");
    add_common(rvfl1d);
    rvfl1d->add_option("--out-dir", out_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = load_config(config_path);
        apply_overrides(cfg, seed_override, threads_override);

        if (app.got_subcommand(train_analytic)) return cmd_train_analytic(cfg, out_path);
        if (app.got_subcommand(train_lsq)) return cmd_train_lsq(cfg, out_path);
        if (app.got_subcommand(eval)) {
            const RVFLNetwork net = load_network(model_path);
            std::cout << CsvWriter::format_double(net.evaluate(parse_point(point_raw))) << "\n";
            return 0;
        }
        if (app.got_subcommand(l2err)) {
            const RVFLNetwork net = load_network(model_path);
            const CompactDomain domain = domain_from_config(cfg);
            const ScalarField f = target_by_name(cfg.get_string("target", "bump"));
            const auto est = l2_error(f, net, domain, cfg.get_int("l2err.n_mc", 100000),
                                      static_cast<std::uint64_t>(cfg.get_int("seed", 42)),
                                      threads_from(cfg));
            std::cout << "estimate " << CsvWriter::format_double(est.estimate) << " std_error "
                      << CsvWriter::format_double(est.std_error) << "\n";
            return 0;
        }
        if (app.got_subcommand(mc_verify)) {
            run_mc_verify(cfg, out_dir, threads_from(cfg));
            std::cout << "wrote " << out_dir << "/mc_verify.csv\n";
            return 0;
        }
        if (app.got_subcommand(gmra_cmd)) {
            const auto points = read_points_csv(points_path);
            const auto seed =
                static_cast<std::uint64_t>(seed_override >= 0 ? seed_override : 42);
            const GmraTree tree = gmra_build(points, gmra_d, gmra_jmax, seed);
            save_gmra(tree, tree_path);
            std::cout << "wrote " << tree_path << " (depth " << tree.depth() << ", "
                      << tree.cells_at(tree.depth() - 1) << " cells at the deepest level)\n";
            return 0;
        }
        if (app.got_subcommand(train_manifold_cmd)) {
            const Figure1Config fc = Figure1Config::from(cfg);
            const EmbeddedSphere sphere(fc.ambient_dim, fc.sphere_seed);
            const auto training = sphere.sample(fc.training_count, mix64(fc.seed ^ 0x7261696eULL));
            const GmraTree tree = gmra_build(training, fc.d, fc.j_max, fc.seed, threads_from(cfg));
            ManifoldTrainConfig mc;
            mc.alpha = fc.alpha;
            mc.omega = fc.omegas.front();
            mc.n_nodes = static_cast<int>(fc.n_grid.back());
            mc.ridge = fc.ridge;
            const int level = static_cast<int>(fc.levels.back());
            const Activation rho = Activation::by_name(fc.activation);
            const TrainMode mode = fc.mode == "lsq" ? TrainMode::Lsq : TrainMode::Analytic;
            const ManifoldModel model = train_manifold(
                target_by_name("exp-sum"), tree, training, level, mc,
                mode, mode == TrainMode::Analytic ? normalize_to_unit_integral(rho) : rho,
                fc.seed, threads_from(cfg));
            save_manifold(model, out_path);
            std::cout << "wrote " << out_path << " (level " << level << ", "
                      << model.charts.size() << " charts)\n";
            return 0;
        }
        if (app.got_subcommand(predict_cmd)) {
            const ManifoldModel model = load_manifold(model_path);
            std::cout << CsvWriter::format_double(predict(model, parse_point(point_raw)))
                      << "\n";
            return 0;
        }
        if (app.got_subcommand(figure1)) {
            run_figure1(cfg, out_dir, threads_from(cfg));
            std::cout << "wrote " << out_dir << "/figure1.csv\n";
            return 0;
        }
        if (app.got_subcommand(rvfl1d)) {
            run_rvfl_1d(cfg, out_dir, threads_from(cfg));
            std::cout << "wrote " << out_dir << "/rvfl1d.csv\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
