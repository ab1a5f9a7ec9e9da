#ifndef RVFL_MANIFOLD_HPP
#define RVFL_MANIFOLD_HPP

#include "rvfl/gmra.hpp"
#include "rvfl/network.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rvfl {

// One trained chart: the cell's 2d coordinate box (member coordinates
// inflated 10%) and an RVFL network over R^d, or a constant fallback when
// the cell had no training members.
struct ChartModel {
    int level = 0;
    int cell = 0;
    std::optional<CompactDomain> domain;
    std::optional<RVFLNetwork> net;
    double constant = 0.0;
    bool fallback = false;
};

struct ManifoldModel {
    GmraTree tree;
    int level = 0;
    std::vector<ChartModel> charts; // one per level cell, same order
};

enum class TrainMode { Analytic, Lsq };

// The cell's chart-coordinate version of f: z -> f(c - Phi c + V z), which
// satisfies chart(V^T x) = f(P x).
std::function<double(const Eigen::VectorXd&)> chart_function(const ScalarField& f,
                                                             const GmraTree& tree, int j, int k);

struct ManifoldTrainConfig {
    double alpha = 2.0;
    double omega = 10.0;
    int n_nodes = 128;
    URange u_range = URange::Full;
    double ridge = 0.0;
    // lsq charts train on the points inside a ball around the cell center
    // whose radius is this multiple of the farthest member distance; 1.0
    // trains on the members alone
    double neighborhood_scale = 2.0;
};

// Algorithm: per level-j cell, sample d-dimensional RVFL parameters on the
// chart's coordinate box and fit the chart function, analytically or by
// least squares on the member pairs (V^T x_l, f(P x_l)).
ManifoldModel train_manifold(const ScalarField& f, const GmraTree& tree,
                             const std::vector<Eigen::VectorXd>& points, int j,
                             const ManifoldTrainConfig& cfg, TrainMode mode,
                             const Activation& rho, std::uint64_t seed, unsigned threads = 0);

// Nearest-center dispatch followed by the chart network at V^T x.
double predict(const ManifoldModel& model, const Eigen::VectorXd& x);

struct RelativeErrorReport {
    double mean = 0.0;
    std::vector<double> per_point;
};

RelativeErrorReport relative_error_suite(const ManifoldModel& model, const ScalarField& f,
                                         const std::vector<Eigen::VectorXd>& test_points,
                                         unsigned threads = 0);

std::string manifold_to_json(const ManifoldModel& model);
ManifoldModel manifold_from_json(const std::string& text);
void save_manifold(const ManifoldModel& model, const std::string& path);
ManifoldModel load_manifold(const std::string& path);

} // namespace rvfl

#endif
