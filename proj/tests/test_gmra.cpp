#include "rvfl/gmra.hpp"

#include "rvfl/domain.hpp"
#include "rvfl/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rvfl;

namespace {

// points on a d-dim affine subspace of R^n, plus optional noise
std::vector<Eigen::VectorXd> planar_cloud(int count, int n_dim, int d, std::uint64_t seed) {
    Substream rng(seed, 0);
    Eigen::MatrixXd basis(n_dim, d);
    for (int i = 0; i < n_dim; ++i)
        for (int j = 0; j < d; ++j) basis(i, j) = rng.normal();
    Eigen::VectorXd offset(n_dim);
    for (int i = 0; i < n_dim; ++i) offset[i] = rng.normal();
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd z(d);
        for (int j = 0; j < d; ++j) z[j] = rng.uniform(-1.0, 1.0);
        pts.push_back(offset + basis * z);
    }
    return pts;
}

} // namespace

TEST_CASE("build preconditions") {
    const auto pts = planar_cloud(50, 5, 2, 1);
    CHECK_THROWS_AS((void)gmra_build(pts, 5, 3, 1), std::invalid_argument); // d >= N
    CHECK_THROWS_AS((void)gmra_build({pts[0], pts[1]}, 2, 3, 1), std::invalid_argument);
}

TEST_CASE("single-cell tree is the global PCA") {
    const auto pts = planar_cloud(200, 6, 2, 3);
    const GmraTree tree = gmra_build(pts, 2, 0, 9);
    REQUIRE(tree.depth() == 1);
    REQUIRE(tree.cells_at(0) == 1);
    const GmraCell& root = tree.cell(0, 0);

    // oracle: mean and projector computed directly
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(6);
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    CHECK((root.center - mean).norm() < 1e-12);

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(6, 6);
    for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
    cov /= static_cast<double>(pts.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    Eigen::MatrixXd top = eig.eigenvectors().rightCols(2);
    const Eigen::MatrixXd proj_oracle = top * top.transpose();
    const Eigen::MatrixXd proj = root.basis * root.basis.transpose();
    CHECK((proj - proj_oracle).norm() < 1e-10);
}

TEST_CASE("planar data projects exactly at every level") {
    const auto pts = planar_cloud(600, 8, 2, 5);
    const GmraTree tree = gmra_build(pts, 2, 5, 11);
    const auto rows = accuracy_profile(tree, pts);
    for (const auto& r : rows) CHECK(r.max_residual < 1e-10);
}

TEST_CASE("projector structure invariants") {
    const EmbeddedSphere sphere(12, 3);
    const auto pts = sphere.sample(1500, 8);
    const GmraTree tree = gmra_build(pts, 2, 6, 21);
    for (int j = 0; j < tree.depth(); ++j) {
        for (int k = 0; k < tree.cells_at(j); ++k) {
            const auto& cell = tree.cell(j, k);
            CHECK((cell.basis.transpose() * cell.basis - Eigen::MatrixXd::Identity(2, 2)).norm() <
                  1e-10);
            const Eigen::MatrixXd phi = cell.basis * cell.basis.transpose();
            CHECK((phi * phi - phi).norm() < 1e-10);
            CHECK((phi - phi.transpose()).norm() < 1e-12);
        }
    }
}

TEST_CASE("children partition the parent members") {
    const EmbeddedSphere sphere(10, 5);
    const auto pts = sphere.sample(800, 4);
    const GmraTree tree = gmra_build(pts, 2, 5, 33);
    for (int j = 0; j + 1 < tree.depth(); ++j) {
        for (int k = 0; k < tree.cells_at(j); ++k) {
            const auto& cell = tree.cell(j, k);
            std::vector<int> collected;
            for (int c : cell.children) {
                const auto& child = tree.cell(j + 1, c);
                collected.insert(collected.end(), child.members.begin(), child.members.end());
            }
            auto expected = cell.members;
            std::sort(expected.begin(), expected.end());
            std::sort(collected.begin(), collected.end());
            CHECK(collected == expected);
        }
    }
    // each level partitions the full cloud
    for (int j = 0; j < tree.depth(); ++j) {
        std::size_t total = 0;
        for (int k = 0; k < tree.cells_at(j); ++k)
            total += tree.cell(j, k).members.size();
        CHECK(total == pts.size());
    }
}

TEST_CASE("sphere residuals shrink with depth") {
    const EmbeddedSphere sphere(20, 7);
    const auto pts = sphere.sample(5000, 15);
    const GmraTree tree = gmra_build(pts, 2, 8, 44);
    const auto rows = accuracy_profile(tree, pts);
    for (std::size_t j = 1; j < rows.size(); ++j)
        CHECK(rows[j].mean_residual <= rows[j - 1].mean_residual * 1.05);
    CHECK(rows.back().max_residual < rows.front().max_residual);
}

TEST_CASE("nearest_center") {
    const EmbeddedSphere sphere(8, 2);
    const auto pts = sphere.sample(600, 5);
    const GmraTree tree = gmra_build(pts, 2, 4, 5);

    SUBCASE("single-cell level") {
        Eigen::VectorXd x = pts[0];
        CHECK(nearest_center(tree, 0, x) == 0);
    }
    SUBCASE("query at a center returns that cell") {
        const int j = 3;
        for (int k = 0; k < tree.cells_at(j); k += 3)
            CHECK(nearest_center(tree, j, tree.cell(j, k).center) == k);
    }
    SUBCASE("agrees with an exhaustive scan") {
        const int j = tree.depth() - 1;
        const auto queries = sphere.sample(1000, 91);
        for (const auto& q : queries) {
            int best = -1;
            double best_d = 1e300;
            for (int k = 0; k < tree.cells_at(j); ++k) {
                const double d = (q - tree.cell(j, k).center).norm();
                if (d < best_d) {
                    best_d = d;
                    best = k;
                }
            }
            CHECK(nearest_center(tree, j, q) == best);
        }
    }
}

TEST_CASE("project") {
    const auto pts = planar_cloud(300, 7, 3, 9);
    const GmraTree tree = gmra_build(pts, 3, 3, 6);
    const auto& cell = tree.cell(2, 0);
    Substream rng(17, 0);
    Eigen::VectorXd x(7);
    for (int i = 0; i < 7; ++i) x[i] = rng.normal();

    const auto p = project(tree, 2, 0, x);
    SUBCASE("matches the dense-matrix formula") {
        const Eigen::MatrixXd phi = cell.basis * cell.basis.transpose();
        const Eigen::VectorXd px_oracle = cell.center + phi * (x - cell.center);
        CHECK((p.px - px_oracle).norm() < 1e-12);
        CHECK((p.z - cell.basis.transpose() * x).norm() < 1e-14);
    }
    SUBCASE("idempotent") {
        const auto pp = project(tree, 2, 0, p.px);
        CHECK((pp.px - p.px).norm() < 1e-10);
    }
    SUBCASE("fixes points in the affine span") {
        const Eigen::VectorXd in_span = cell.center + cell.basis * Eigen::Vector3d(0.3, -1.0, 2.0);
        CHECK((project(tree, 2, 0, in_span).px - in_span).norm() < 1e-10);
    }
}

TEST_CASE("determinism: same points and seed give the same tree") {
    const EmbeddedSphere sphere(9, 4);
    const auto pts = sphere.sample(700, 6);
    const GmraTree a = gmra_build(pts, 2, 5, 77);
    const GmraTree b = gmra_build(pts, 2, 5, 77, 2);
    CHECK(gmra_to_json(a) == gmra_to_json(b));
}

TEST_CASE("degenerate cells inherit the parent chart") {
    // 10 points: splits stop quickly; any child smaller than d+1 must carry
    // its parent's center/basis
    const auto pts = planar_cloud(12, 4, 2, 31);
    const GmraTree tree = gmra_build(pts, 2, 3, 3);
    for (int j = 1; j < tree.depth(); ++j) {
        for (int k = 0; k < tree.cells_at(j); ++k) {
            const auto& cell = tree.cell(j, k);
            if (cell.members.size() < 3) {
                const auto& parent = tree.cell(j - 1, cell.parent);
                CHECK((cell.center - parent.center).norm() == 0.0);
                CHECK((cell.basis - parent.basis).norm() == 0.0);
            }
        }
    }
}

TEST_CASE("tree serialization round trip") {
    const EmbeddedSphere sphere(10, 8);
    const auto pts = sphere.sample(400, 2);
    const GmraTree tree = gmra_build(pts, 2, 4, 9);
    const GmraTree back = gmra_from_json(gmra_to_json(tree));
    CHECK(back.ambient_dim == tree.ambient_dim);
    CHECK(back.depth() == tree.depth());
    for (int j = 0; j < tree.depth(); ++j) {
        REQUIRE(back.cells_at(j) == tree.cells_at(j));
        for (int k = 0; k < tree.cells_at(j); ++k) {
            CHECK((back.cell(j, k).center - tree.cell(j, k).center).norm() == 0.0);
            CHECK((back.cell(j, k).basis - tree.cell(j, k).basis).norm() == 0.0);
            CHECK(back.cell(j, k).children == tree.cell(j, k).children);
        }
    }
}
