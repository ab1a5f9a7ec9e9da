#ifndef RVFL_DOMAIN_HPP
#define RVFL_DOMAIN_HPP

#include "rvfl/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rvfl {

// Compact set K that supports uniform sampling and carries the volume and
// radius (sup ||x||_2) metadata the error formulas need. Boxes and balls
// cover every domain the constructions use.
class CompactDomain {
  public:
    enum class Shape { Box, Ball };

    static CompactDomain box(std::vector<std::pair<double, double>> bounds);
    static CompactDomain interval(double lo, double hi) { return box({{lo, hi}}); }
    static CompactDomain unit_box(int dim); // [0,1]^dim
    static CompactDomain ball(Eigen::VectorXd center, double radius);

    Shape shape() const { return shape_; }
    int dim() const { return dim_; }
    double volume() const { return volume_; }
    double radius() const { return radius_; }
    const std::vector<std::pair<double, double>>& bounds() const { return bounds_; }
    const Eigen::VectorXd& center() const { return center_; }
    double ball_radius() const { return ball_radius_; }

    bool contains(const Eigen::VectorXd& x, double tol = 1e-12) const;
    Eigen::VectorXd sample(Substream& rng) const;

  private:
    CompactDomain() = default;
    Shape shape_ = Shape::Box;
    int dim_ = 0;
    double volume_ = 0.0;
    double radius_ = 0.0;
    std::vector<std::pair<double, double>> bounds_; // box
    Eigen::VectorXd center_;                        // ball
    double ball_radius_ = 0.0;
};

// i.i.d. uniform points; point i is drawn from substream (seed, i), so the
// result is the same under any parallel partition of the index range.
std::vector<Eigen::VectorXd> sample_uniform(const CompactDomain& domain, int count,
                                            std::uint64_t seed);

// Upper bound on the delta-covering number via an axis-aligned grid of
// spacing 2*delta/sqrt(dim) per axis (one ball when delta reaches the
// radius). Balls use their bounding box.
long covering_number_bound(const CompactDomain& domain, double delta);

// Grid of cell centers realizing covering_number_bound's cover.
std::vector<Eigen::VectorXd> covering_grid(const CompactDomain& domain, double delta,
                                           long max_points);

// S^2 isometrically embedded in R^N by a column-orthonormal N x 3 matrix Q
// built from a seeded Gaussian draw.
class EmbeddedSphere {
  public:
    EmbeddedSphere(int ambient_dim, std::uint64_t seed);

    int ambient_dim() const { return static_cast<int>(q_.rows()); }
    static constexpr int intrinsic_dim() { return 2; }
    const Eigen::MatrixXd& embedding() const { return q_; }
    std::uint64_t seed() const { return seed_; }

    std::vector<Eigen::VectorXd> sample(int count, std::uint64_t seed) const;

  private:
    Eigen::MatrixXd q_; // N x 3
    std::uint64_t seed_;
};

// f(x) = exp(sum_k x(k))
double test_function_exp_sum(const Eigen::VectorXd& x);

} // namespace rvfl

#endif
