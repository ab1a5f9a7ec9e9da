#include "rvfl/manifold.hpp"

#include "rvfl/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace rvfl;

namespace {

const ScalarField exp_sum = [](const Eigen::VectorXd& x) { return test_function_exp_sum(x); };

std::vector<Eigen::VectorXd> planar_cloud(int count, int n_dim, int d, std::uint64_t seed) {
    Substream rng(seed, 0);
    Eigen::MatrixXd basis(n_dim, d);
    for (int i = 0; i < n_dim; ++i)
        for (int j = 0; j < d; ++j) basis(i, j) = rng.normal();
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd z(d);
        for (int j = 0; j < d; ++j) z[j] = rng.uniform(-1.0, 1.0);
        pts.push_back(basis * z);
    }
    return pts;
}

ManifoldTrainConfig small_cfg(int n_nodes) {
    ManifoldTrainConfig cfg;
    cfg.alpha = 2.0;
    cfg.omega = 6.0;
    cfg.n_nodes = n_nodes;
    return cfg;
}

} // namespace

TEST_CASE("chart identity: chart(V^T x) = f(P x)") {
    const EmbeddedSphere sphere(15, 3);
    const auto pts = sphere.sample(1200, 10);
    const GmraTree tree = gmra_build(pts, 2, 5, 7);
    const int j = 4;
    for (int k = 0; k < tree.cells_at(j); k += 5) {
        const auto chart = chart_function(exp_sum, tree, j, k);
        const auto& cell = tree.cell(j, k);
        for (std::size_t mi = 0; mi < cell.members.size(); mi += 3) {
            const auto& x = pts[static_cast<std::size_t>(cell.members[mi])];
            const auto p = project(tree, j, k, x);
            CHECK(chart(p.z) == doctest::Approx(exp_sum(p.px)).epsilon(1e-12));
        }
    }
}

TEST_CASE("chart of a constant function is constant") {
    const EmbeddedSphere sphere(10, 5);
    const auto pts = sphere.sample(300, 4);
    const GmraTree tree = gmra_build(pts, 2, 3, 2);
    const ScalarField one = [](const Eigen::VectorXd&) { return 1.0; };
    const auto chart = chart_function(one, tree, 2, 0);
    Eigen::VectorXd z(2);
    z << 0.3, -0.9;
    CHECK(chart(z) == 1.0);
}

TEST_CASE("chart formula matches the dense-matrix route") {
    const EmbeddedSphere sphere(12, 9);
    const auto pts = sphere.sample(500, 3);
    const GmraTree tree = gmra_build(pts, 2, 4, 5);
    const int j = 3, k = 1;
    const auto& cell = tree.cell(j, k);
    const auto chart = chart_function(exp_sum, tree, j, k);
    const Eigen::MatrixXd phi = cell.basis * cell.basis.transpose();
    Substream rng(31, 0);
    for (int i = 0; i < 20; ++i) {
        Eigen::VectorXd z(2);
        z << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
        const Eigen::VectorXd arg =
            (Eigen::MatrixXd::Identity(12, 12) - phi) * cell.center + cell.basis * z;
        CHECK(chart(z) == doctest::Approx(exp_sum(arg)).epsilon(1e-12));
    }
}

TEST_CASE("zero target trains to the zero model") {
    const EmbeddedSphere sphere(8, 2);
    const auto pts = sphere.sample(400, 6);
    const GmraTree tree = gmra_build(pts, 2, 3, 4);
    const ScalarField zero = [](const Eigen::VectorXd&) { return 0.0; };
    for (TrainMode mode : {TrainMode::Lsq, TrainMode::Analytic}) {
        const Activation rho = mode == TrainMode::Analytic
                                   ? normalize_to_unit_integral(Activation::sech())
                                   : Activation::sech();
        const auto model = train_manifold(zero, tree, pts, 3, small_cfg(32), mode, rho, 11);
        for (const auto& x : sphere.sample(50, 12))
            CHECK(std::abs(predict(model, x)) <= 1e-12);
    }
}

TEST_CASE("planar data with the exact interpolation regime") {
    // linear target on a 2-plane: per-chart least squares with n >= m
    const auto pts = planar_cloud(240, 6, 2, 21);
    const GmraTree tree = gmra_build(pts, 2, 2, 13);
    const ScalarField lin = [](const Eigen::VectorXd& x) { return 2.0 * x[0] - x[3] + 0.25; };
    ManifoldTrainConfig cfg = small_cfg(192);
    cfg.u_range = URange::Omega; // keeps most features alive at this n
    cfg.neighborhood_scale = 1.0; // members only: the interpolation regime
    const auto model =
        train_manifold(lin, tree, pts, 2, cfg, TrainMode::Lsq, Activation::sech(), 5);
    // each cell's chart interpolates its own members: planar data means
    // P x = x, so the chart value at V^T x is the label
    const int j = 2;
    for (int k = 0; k < tree.cells_at(j); ++k) {
        const auto& cell = tree.cell(j, k);
        const auto& chart = model.charts[static_cast<std::size_t>(k)];
        REQUIRE(chart.net.has_value());
        for (std::size_t mi = 0; mi < cell.members.size(); mi += 5) {
            const auto& x = pts[static_cast<std::size_t>(cell.members[mi])];
            const auto p = project(tree, j, k, x);
            CHECK(chart.net->evaluate(p.z) == doctest::Approx(lin(x)).epsilon(1e-6));
        }
    }
}

TEST_CASE("dispatch agrees with an exhaustive scan and is deterministic") {
    const EmbeddedSphere sphere(14, 4);
    const auto pts = sphere.sample(900, 8);
    const GmraTree tree = gmra_build(pts, 2, 4, 3);
    const auto model = train_manifold(exp_sum, tree, pts, 4, small_cfg(24), TrainMode::Lsq,
                                      Activation::sech(), 19);
    const auto queries = sphere.sample(200, 44);
    for (const auto& q : queries) {
        int best = -1;
        double best_d = 1e300;
        for (int k = 0; k < tree.cells_at(4); ++k) {
            const double d = (q - tree.cell(4, k).center).norm();
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        const auto& cell = tree.cell(4, best);
        const double direct =
            model.charts[static_cast<std::size_t>(best)].net->evaluate(cell.basis.transpose() * q);
        CHECK(predict(model, q) == direct);
        CHECK(predict(model, q) == predict(model, q));
    }
}

TEST_CASE("chart parameters live in d dimensions") {
    const EmbeddedSphere sphere(20, 7);
    const auto pts = sphere.sample(500, 9);
    const GmraTree tree = gmra_build(pts, 2, 3, 8);
    const auto model = train_manifold(exp_sum, tree, pts, 3, small_cfg(16), TrainMode::Lsq,
                                      Activation::sech(), 23);
    for (const auto& chart : model.charts) {
        REQUIRE(chart.net.has_value());
        CHECK(chart.net->dim() == 2);
        CHECK(chart.domain->dim() == 2);
    }
}

TEST_CASE("relative error report") {
    const EmbeddedSphere sphere(9, 1);
    const auto pts = sphere.sample(400, 3);
    const GmraTree tree = gmra_build(pts, 2, 3, 2);

    SUBCASE("model equal to the target has zero error") {
        const ScalarField one = [](const Eigen::VectorXd&) { return 1.0; };
        // constant-fallback charts reproduce f = 1 exactly
        const GmraTree stripped = gmra_from_json(gmra_to_json(tree));
        const auto model = train_manifold(one, stripped, pts, 2, small_cfg(16), TrainMode::Lsq,
                                          Activation::sech(), 7);
        const auto rep = relative_error_suite(model, one, sphere.sample(80, 10));
        CHECK(rep.mean == 0.0);
    }
    SUBCASE("zero model against f = 1 has error 1") {
        const ScalarField zero = [](const Eigen::VectorXd&) { return 0.0; };
        const ScalarField one = [](const Eigen::VectorXd&) { return 1.0; };
        const auto model = train_manifold(zero, tree, pts, 2, small_cfg(16), TrainMode::Lsq,
                                          Activation::sech(), 7);
        const auto rep = relative_error_suite(model, one, sphere.sample(80, 10));
        CHECK(rep.mean == doctest::Approx(1.0));
        CHECK(rep.per_point.size() == 80);
    }
}

TEST_CASE("deserialized trees have no members: charts fall back to constants") {
    const EmbeddedSphere sphere(10, 2);
    const auto pts = sphere.sample(300, 5);
    const GmraTree tree = gmra_build(pts, 2, 2, 6);
    const GmraTree stripped = gmra_from_json(gmra_to_json(tree)); // members not serialized
    const auto model = train_manifold(exp_sum, stripped, pts, 2, small_cfg(16), TrainMode::Lsq,
                                      Activation::sech(), 9);
    for (const auto& chart : model.charts) {
        CHECK(chart.fallback);
        const auto& cell = stripped.cell(2, chart.cell);
        CHECK(chart.constant == doctest::Approx(exp_sum(cell.center)));
    }
}

TEST_CASE("manifold model serialization round trip") {
    const EmbeddedSphere sphere(11, 6);
    const auto pts = sphere.sample(500, 7);
    const GmraTree tree = gmra_build(pts, 2, 3, 10);
    const auto model = train_manifold(exp_sum, tree, pts, 3, small_cfg(20), TrainMode::Lsq,
                                      Activation::sech(), 29);
    const ManifoldModel back = manifold_from_json(manifold_to_json(model));
    for (const auto& q : sphere.sample(60, 77)) CHECK(predict(back, q) == predict(model, q));
}
