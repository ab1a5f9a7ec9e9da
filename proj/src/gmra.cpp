#include "rvfl/gmra.hpp"

#include "rvfl/parallel.hpp"
#include "rvfl/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rvfl {

using nlohmann::json;

namespace {

// mean + top-d principal directions of the member set, with a sign
// convention that makes the basis deterministic
void fit_cell(const std::vector<Eigen::VectorXd>& points, GmraCell& cell, int d) {
    const auto m = static_cast<long>(cell.members.size());
    const int n_dim = static_cast<int>(points.front().size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n_dim);
    for (int idx : cell.members) mean += points[static_cast<std::size_t>(idx)];
    mean /= static_cast<double>(m);
    cell.center = mean;

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n_dim, n_dim);
    for (int idx : cell.members) {
        const Eigen::VectorXd c = points[static_cast<std::size_t>(idx)] - mean;
        cov.noalias() += c * c.transpose();
    }
    cov /= static_cast<double>(m);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    Eigen::MatrixXd basis(n_dim, d);
    for (int c = 0; c < d; ++c) {
        Eigen::VectorXd col = eig.eigenvectors().col(n_dim - 1 - c);
        int imax = 0;
        col.cwiseAbs().maxCoeff(&imax);
        if (col[imax] < 0.0) col = -col;
        basis.col(c) = col;
    }
    cell.basis = std::move(basis);
}

struct SplitResult {
    bool split = false;
    std::vector<int> left, right;
};

// seeded 2-means on the cell's members (k-means++ init, Lloyd to a fixed
// point); returns no-split when the members cannot be separated
SplitResult two_means(const std::vector<Eigen::VectorXd>& points, const std::vector<int>& members,
                      Substream& rng) {
    SplitResult res;
    const auto m = members.size();
    auto pt = [&](std::size_t i) -> const Eigen::VectorXd& {
        return points[static_cast<std::size_t>(members[i])];
    };

    const std::size_t first = static_cast<std::size_t>(rng.next_u64() % m);
    Eigen::VectorXd c0 = pt(first);
    std::vector<double> d2(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        d2[i] = (pt(i) - c0).squaredNorm();
        total += d2[i];
    }
    if (total <= 0.0) return res; // all members identical
    double target = rng.next_double() * total;
    std::size_t second = m - 1;
    for (std::size_t i = 0; i < m; ++i) {
        target -= d2[i];
        if (target <= 0.0) {
            second = i;
            break;
        }
    }
    Eigen::VectorXd c1 = pt(second);

    std::vector<char> side(m, 0);
    for (int iter = 0; iter < 50; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < m; ++i) {
            const double a = (pt(i) - c0).squaredNorm();
            const double b = (pt(i) - c1).squaredNorm();
            const char s = b < a ? 1 : 0; // ties go to cluster 0
            if (s != side[i]) {
                side[i] = s;
                changed = true;
            }
        }
        Eigen::VectorXd s0 = Eigen::VectorXd::Zero(c0.size());
        Eigen::VectorXd s1 = Eigen::VectorXd::Zero(c0.size());
        long m0 = 0, m1 = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (side[i]) {
                s1 += pt(i);
                ++m1;
            } else {
                s0 += pt(i);
                ++m0;
            }
        }
        if (m0 == 0 || m1 == 0) return res;
        c0 = s0 / static_cast<double>(m0);
        c1 = s1 / static_cast<double>(m1);
        if (!changed) break;
    }
    for (std::size_t i = 0; i < m; ++i)
        (side[i] ? res.right : res.left).push_back(members[i]);
    if (res.left.empty() || res.right.empty()) return SplitResult{};
    res.split = true;
    return res;
}

} // namespace

GmraTree gmra_build(const std::vector<Eigen::VectorXd>& points, int d, int j_max,
                    std::uint64_t seed, unsigned threads) {
    if (points.empty()) throw std::invalid_argument("gmra_build: empty point cloud");
    const int n_dim = static_cast<int>(points.front().size());
    if (d < 1 || d >= n_dim)
        throw std::invalid_argument("gmra_build: need 1 <= d < ambient dimension");
    if (static_cast<long>(points.size()) < d + 1)
        throw std::invalid_argument("gmra_build: need at least d+1 points");
    if (j_max < 0) throw std::invalid_argument("gmra_build: j_max must be >= 0");
    const std::size_t min_split = static_cast<std::size_t>(std::max(2 * d + 2, 10));

    GmraTree tree;
    tree.ambient_dim = n_dim;
    tree.intrinsic_dim = d;
    tree.levels.resize(static_cast<std::size_t>(j_max) + 1);

    GmraCell root;
    root.members.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) root.members[i] = static_cast<int>(i);
    fit_cell(points, root, d);
    tree.levels[0].cells.push_back(std::move(root));

    for (int j = 0; j < j_max; ++j) {
        auto& level = tree.levels[static_cast<std::size_t>(j)];
        const std::size_t n_cells = level.cells.size();
        std::vector<SplitResult> splits(n_cells);
        parallel_for(
            n_cells,
            [&](std::size_t k) {
                const GmraCell& cell = level.cells[k];
                if (cell.members.size() < min_split) return; // carried down
                Substream rng(seed, (static_cast<std::uint64_t>(j) << 32) ^
                                        static_cast<std::uint64_t>(k));
                splits[k] = two_means(points, cell.members, rng);
            },
            threads);

        auto& next = tree.levels[static_cast<std::size_t>(j) + 1];
        for (std::size_t k = 0; k < n_cells; ++k) {
            GmraCell& cell = level.cells[k];
            if (!splits[k].split) {
                // carry the cell down unchanged so the level still partitions
                GmraCell copy;
                copy.members = cell.members;
                copy.center = cell.center;
                copy.basis = cell.basis;
                copy.parent = static_cast<int>(k);
                cell.children.push_back(static_cast<int>(next.cells.size()));
                next.cells.push_back(std::move(copy));
                continue;
            }
            for (auto* part : {&splits[k].left, &splits[k].right}) {
                GmraCell child;
                child.members = std::move(*part);
                child.parent = static_cast<int>(k);
                if (child.members.size() < static_cast<std::size_t>(d + 1)) {
                    // degenerate cell: inherit the parent chart
                    child.center = cell.center;
                    child.basis = cell.basis;
                } else {
                    fit_cell(points, child, d);
                }
                cell.children.push_back(static_cast<int>(next.cells.size()));
                next.cells.push_back(std::move(child));
            }
        }
    }
    return tree;
}

int nearest_center(const GmraTree& tree, int j, const Eigen::VectorXd& x) {
    if (j < 0 || j >= tree.depth()) throw std::invalid_argument("nearest_center: bad level");
    const auto& cells = tree.levels[static_cast<std::size_t>(j)].cells;
    int best = 0;
    double best_d = (x - cells[0].center).squaredNorm();
    for (std::size_t k = 1; k < cells.size(); ++k) {
        const double dd = (x - cells[k].center).squaredNorm();
        if (dd < best_d) {
            best_d = dd;
            best = static_cast<int>(k);
        }
    }
    return best;
}

GmraProjection project(const GmraTree& tree, int j, int k, const Eigen::VectorXd& x) {
    const GmraCell& cell = tree.cell(j, k);
    GmraProjection p;
    p.z = cell.basis.transpose() * x;
    p.px = cell.center + cell.basis * (cell.basis.transpose() * (x - cell.center));
    return p;
}

std::vector<AccuracyRow> accuracy_profile(const GmraTree& tree,
                                          const std::vector<Eigen::VectorXd>& test_points) {
    std::vector<AccuracyRow> rows;
    rows.reserve(static_cast<std::size_t>(tree.depth()));
    for (int j = 0; j < tree.depth(); ++j) {
        AccuracyRow row;
        row.level = j;
        double sum = 0.0;
        for (const auto& x : test_points) {
            const int k = nearest_center(tree, j, x);
            const double r = (x - project(tree, j, k, x).px).norm();
            row.max_residual = std::max(row.max_residual, r);
            sum += r;
        }
        row.mean_residual = test_points.empty() ? 0.0 : sum / static_cast<double>(test_points.size());
        rows.push_back(row);
    }
    return rows;
}

std::string gmra_to_json(const GmraTree& tree) {
    json j;
    j["format"] = "gmra-tree";
    j["version"] = 1;
    j["ambient_dim"] = tree.ambient_dim;
    j["intrinsic_dim"] = tree.intrinsic_dim;
    json levels = json::array();
    for (const auto& level : tree.levels) {
        json cells = json::array();
        for (const auto& cell : level.cells) {
            json c;
            c["center"] = std::vector<double>(cell.center.begin(), cell.center.end());
            json basis = json::array();
            for (int col = 0; col < cell.basis.cols(); ++col)
                basis.push_back(
                    std::vector<double>(cell.basis.col(col).begin(), cell.basis.col(col).end()));
            c["basis"] = std::move(basis);
            c["children"] = cell.children;
            c["parent"] = cell.parent;
            cells.push_back(std::move(c));
        }
        levels.push_back(std::move(cells));
    }
    j["levels"] = std::move(levels);
    return j.dump();
}

GmraTree gmra_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format") != "gmra-tree" || j.at("version") != 1)
        throw std::invalid_argument("gmra_from_json: unsupported format or version");
    GmraTree tree;
    tree.ambient_dim = j.at("ambient_dim").get<int>();
    tree.intrinsic_dim = j.at("intrinsic_dim").get<int>();
    for (const auto& level : j.at("levels")) {
        GmraLevel lv;
        for (const auto& c : level) {
            GmraCell cell;
            const auto center = c.at("center").get<std::vector<double>>();
            cell.center = Eigen::Map<const Eigen::VectorXd>(center.data(),
                                                            static_cast<long>(center.size()));
            const auto& basis = c.at("basis");
            cell.basis.resize(tree.ambient_dim, static_cast<long>(basis.size()));
            for (std::size_t col = 0; col < basis.size(); ++col) {
                const auto column = basis[col].get<std::vector<double>>();
                cell.basis.col(static_cast<long>(col)) = Eigen::Map<const Eigen::VectorXd>(
                    column.data(), static_cast<long>(column.size()));
            }
            cell.children = c.at("children").get<std::vector<int>>();
            cell.parent = c.at("parent").get<int>();
            lv.cells.push_back(std::move(cell));
        }
        tree.levels.push_back(std::move(lv));
    }
    return tree;
}

void save_gmra(const GmraTree& tree, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_gmra: cannot open " + path);
    out << gmra_to_json(tree) << '\n';
}

GmraTree load_gmra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_gmra: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return gmra_from_json(ss.str());
}

} // namespace rvfl
