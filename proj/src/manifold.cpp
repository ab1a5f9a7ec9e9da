#include "rvfl/manifold.hpp"

#include "rvfl/parallel.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rvfl {

using nlohmann::json;

std::function<double(const Eigen::VectorXd&)> chart_function(const ScalarField& f,
                                                             const GmraTree& tree, int j,
                                                             int k) {
    const GmraCell& cell = tree.cell(j, k);
    // (I - Phi) c with Phi = V V^T
    const Eigen::VectorXd offset =
        cell.center - cell.basis * (cell.basis.transpose() * cell.center);
    const Eigen::MatrixXd basis = cell.basis;
    return [f, offset, basis](const Eigen::VectorXd& z) { return f(offset + basis * z); };
}

namespace {

CompactDomain chart_box(const GmraTree& tree, const std::vector<Eigen::VectorXd>& points,
                        const GmraCell& cell, const std::vector<int>& training) {
    const int d = tree.intrinsic_dim;
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, -std::numeric_limits<double>::infinity());
    for (int idx : training) {
        const Eigen::VectorXd z = cell.basis.transpose() * points[static_cast<std::size_t>(idx)];
        lo = lo.cwiseMin(z);
        hi = hi.cwiseMax(z);
    }
    std::vector<std::pair<double, double>> bounds;
    bounds.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        double width = hi[i] - lo[i];
        if (!(width > 1e-9)) width = 1e-9;
        bounds.emplace_back(lo[i] - 0.05 * width, hi[i] + 0.05 * width);
    }
    return CompactDomain::box(std::move(bounds));
}

// all build points inside the ball around the cell center of radius
// scale x (farthest member distance)
std::vector<int> training_neighborhood(const std::vector<Eigen::VectorXd>& points,
                                       const GmraCell& cell, double scale) {
    double r = 0.0;
    for (int idx : cell.members)
        r = std::max(r, (points[static_cast<std::size_t>(idx)] - cell.center).norm());
    if (scale <= 1.0 || r == 0.0) return cell.members;
    const double reach = scale * r;
    std::vector<int> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if ((points[i] - cell.center).norm() <= reach) out.push_back(static_cast<int>(i));
    return out;
}

} // namespace

ManifoldModel train_manifold(const ScalarField& f, const GmraTree& tree,
                             const std::vector<Eigen::VectorXd>& points, int j,
                             const ManifoldTrainConfig& cfg, TrainMode mode,
                             const Activation& rho, std::uint64_t seed, unsigned threads) {
    if (j < 0 || j >= tree.depth()) throw std::invalid_argument("train_manifold: bad level");
    const int n_cells = tree.cells_at(j);
    const int d = tree.intrinsic_dim;

    ManifoldModel model;
    model.tree = tree;
    model.level = j;
    model.charts.resize(static_cast<std::size_t>(n_cells));

    parallel_for(
        static_cast<std::size_t>(n_cells),
        [&](std::size_t kc) {
            const int k = static_cast<int>(kc);
            const GmraCell& cell = tree.cell(j, k);
            ChartModel chart;
            chart.level = j;
            chart.cell = k;

            if (cell.members.empty()) {
                // no training data (e.g. a deserialized tree): pin the chart
                // to f at the cell center
                chart.fallback = true;
                chart.constant = f(cell.center);
                model.charts[kc] = std::move(chart);
                return;
            }

            const std::vector<int> training =
                mode == TrainMode::Lsq
                    ? training_neighborhood(points, cell, cfg.neighborhood_scale)
                    : cell.members;
            const CompactDomain domain = chart_box(tree, points, cell, training);
            ParamConfig node_cfg;
            node_cfg.alpha = cfg.alpha;
            node_cfg.omega = cfg.omega;
            node_cfg.n_nodes = cfg.n_nodes;
            node_cfg.dim = d;
            node_cfg.u_range = cfg.u_range;
            const std::uint64_t cell_seed = mix64(seed ^ (static_cast<std::uint64_t>(k) << 20));
            const auto nodes = sample_nodes(node_cfg, domain, cell_seed);
            const auto chart_f = chart_function(f, tree, j, k);
            auto chart_field = [&chart_f](const Eigen::VectorXd& z) { return chart_f(z); };

            if (mode == TrainMode::Analytic) {
                const WeightRegime regime = rho.kind() == Activation::Kind::Integrable
                                                ? WeightRegime::Integrable
                                                : WeightRegime::DerivativeIntegrable;
                chart.net = analytic_weights(chart_field, node_cfg, domain, nodes, regime, rho);
            } else {
                std::vector<Eigen::VectorXd> zs;
                std::vector<double> labels;
                zs.reserve(training.size());
                labels.reserve(training.size());
                for (int idx : training) {
                    const auto& x = points[static_cast<std::size_t>(idx)];
                    const GmraProjection p = project(tree, j, k, x);
                    zs.push_back(p.z);
                    labels.push_back(f(p.px));
                }
                chart.net = lsq_train(zs, labels, nodes, rho, cfg.ridge).net;
            }
            chart.domain = domain;
            model.charts[kc] = std::move(chart);
        },
        threads);
    return model;
}

double predict(const ManifoldModel& model, const Eigen::VectorXd& x) {
    const int k = nearest_center(model.tree, model.level, x);
    const ChartModel& chart = model.charts[static_cast<std::size_t>(k)];
    if (chart.fallback) return chart.constant;
    const GmraCell& cell = model.tree.cell(model.level, k);
    return chart.net->evaluate(cell.basis.transpose() * x);
}

RelativeErrorReport relative_error_suite(const ManifoldModel& model, const ScalarField& f,
                                         const std::vector<Eigen::VectorXd>& test_points,
                                         unsigned threads) {
    RelativeErrorReport rep;
    rep.per_point.resize(test_points.size());
    parallel_for(
        test_points.size(),
        [&](std::size_t i) {
            const double truth = f(test_points[i]);
            const double approx = predict(model, test_points[i]);
            const double denom = std::abs(truth);
            rep.per_point[i] =
                denom > 1e-300 ? std::abs(approx - truth) / denom : std::abs(approx - truth);
        },
        threads);
    rep.mean = rep.per_point.empty()
                   ? 0.0
                   : pairwise_sum(0, rep.per_point.size(),
                                  [&](std::size_t i) { return rep.per_point[i]; }) /
                         static_cast<double>(rep.per_point.size());
    return rep;
}

std::string manifold_to_json(const ManifoldModel& model) {
    json j;
    j["format"] = "manifold-rvfl";
    j["version"] = 1;
    j["level"] = model.level;
    j["tree"] = json::parse(gmra_to_json(model.tree));
    json charts = json::array();
    for (const auto& chart : model.charts) {
        json c;
        c["cell"] = chart.cell;
        c["fallback"] = chart.fallback;
        if (chart.fallback) {
            c["constant"] = chart.constant;
        } else {
            json bounds = json::array();
            for (const auto& [lo, hi] : chart.domain->bounds())
                bounds.push_back(std::vector<double>{lo, hi});
            c["domain"] = std::move(bounds);
            c["net"] = json::parse(network_to_json(*chart.net));
        }
        charts.push_back(std::move(c));
    }
    j["charts"] = std::move(charts);
    return j.dump();
}

ManifoldModel manifold_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format") != "manifold-rvfl" || j.at("version") != 1)
        throw std::invalid_argument("manifold_from_json: unsupported format or version");
    ManifoldModel model;
    model.level = j.at("level").get<int>();
    model.tree = gmra_from_json(j.at("tree").dump());
    for (const auto& c : j.at("charts")) {
        ChartModel chart;
        chart.level = model.level;
        chart.cell = c.at("cell").get<int>();
        chart.fallback = c.at("fallback").get<bool>();
        if (chart.fallback) {
            chart.constant = c.at("constant").get<double>();
        } else {
            std::vector<std::pair<double, double>> bounds;
            for (const auto& b : c.at("domain"))
                bounds.emplace_back(b[0].get<double>(), b[1].get<double>());
            chart.domain = CompactDomain::box(std::move(bounds));
            chart.net = network_from_json(c.at("net").dump());
        }
        model.charts.push_back(std::move(chart));
    }
    if (static_cast<int>(model.charts.size()) != model.tree.cells_at(model.level))
        throw std::invalid_argument("manifold_from_json: chart count does not match the level");
    return model;
}

void save_manifold(const ManifoldModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_manifold: cannot open " + path);
    out << manifold_to_json(model) << '\n';
}

ManifoldModel load_manifold(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_manifold: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return manifold_from_json(ss.str());
}

} // namespace rvfl
