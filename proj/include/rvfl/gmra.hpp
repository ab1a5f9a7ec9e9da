#ifndef RVFL_GMRA_HPP
#define RVFL_GMRA_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace rvfl {

// One cell of the multiscale partition: center, rank-d orthonormal basis of
// the local principal subspace, tree links, and (for trees built in-process)
// the indices of the member points.
struct GmraCell {
    Eigen::VectorXd center; // c_{j,k}
    Eigen::MatrixXd basis;  // N x d, orthonormal columns
    std::vector<int> children;
    std::vector<int> members;
    int parent = -1;
};

struct GmraLevel {
    std::vector<GmraCell> cells;
};

class GmraTree {
  public:
    int ambient_dim = 0;
    int intrinsic_dim = 0;
    std::vector<GmraLevel> levels; // levels[j] partitions the build cloud

    int depth() const { return static_cast<int>(levels.size()); }
    const GmraCell& cell(int j, int k) const {
        return levels[static_cast<std::size_t>(j)].cells[static_cast<std::size_t>(k)];
    }
    int cells_at(int j) const {
        return static_cast<int>(levels[static_cast<std::size_t>(j)].cells.size());
    }
};

// Binary 2-means hierarchy with per-cell mean/top-d PCA fits; cells smaller
// than max(2d+2, 10) points are carried down unchanged so every level
// partitions the full cloud.
GmraTree gmra_build(const std::vector<Eigen::VectorXd>& points, int d, int j_max,
                    std::uint64_t seed, unsigned threads = 0);

// Index of the level-j cell whose center is closest to x; ties go to the
// lowest index.
int nearest_center(const GmraTree& tree, int j, const Eigen::VectorXd& x);

struct GmraProjection {
    Eigen::VectorXd px; // c + V V^T (x - c)
    Eigen::VectorXd z;  // V^T x
};

GmraProjection project(const GmraTree& tree, int j, int k, const Eigen::VectorXd& x);

struct AccuracyRow {
    int level = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
};

// Per-level nearest-cell projection residuals ||x - P x||.
std::vector<AccuracyRow> accuracy_profile(const GmraTree& tree,
                                          const std::vector<Eigen::VectorXd>& test_points);

std::string gmra_to_json(const GmraTree& tree);
GmraTree gmra_from_json(const std::string& text);
void save_gmra(const GmraTree& tree, const std::string& path);
GmraTree load_gmra(const std::string& path);

} // namespace rvfl

#endif
