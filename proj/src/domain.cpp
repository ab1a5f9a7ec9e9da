#include "rvfl/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace rvfl {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

double unit_ball_volume(int dim) {
    // pi^(d/2) / Gamma(d/2 + 1)
    return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}
} // namespace

CompactDomain CompactDomain::box(std::vector<std::pair<double, double>> bounds) {
    if (bounds.empty()) throw std::invalid_argument("box: need at least one axis");
    CompactDomain d;
    d.shape_ = Shape::Box;
    d.dim_ = static_cast<int>(bounds.size());
    d.volume_ = 1.0;
    double r2 = 0.0;
    for (const auto& [lo, hi] : bounds) {
        if (!(hi >= lo)) throw std::invalid_argument("box: hi < lo on some axis");
        d.volume_ *= hi - lo;
        const double m = std::max(std::abs(lo), std::abs(hi));
        r2 += m * m;
    }
    d.radius_ = std::sqrt(r2);
    d.bounds_ = std::move(bounds);
    return d;
}

CompactDomain CompactDomain::unit_box(int dim) {
    std::vector<std::pair<double, double>> b(static_cast<std::size_t>(dim), {0.0, 1.0});
    return box(std::move(b));
}

CompactDomain CompactDomain::ball(Eigen::VectorXd center, double radius) {
    if (center.size() == 0) throw std::invalid_argument("ball: empty center");
    if (!(radius >= 0.0)) throw std::invalid_argument("ball: negative radius");
    CompactDomain d;
    d.shape_ = Shape::Ball;
    d.dim_ = static_cast<int>(center.size());
    d.volume_ = unit_ball_volume(d.dim_) * std::pow(radius, d.dim_);
    d.radius_ = center.norm() + radius;
    d.center_ = std::move(center);
    d.ball_radius_ = radius;
    return d;
}

bool CompactDomain::contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != dim_) return false;
    if (shape_ == Shape::Box) {
        for (int i = 0; i < dim_; ++i)
            if (x[i] < bounds_[static_cast<std::size_t>(i)].first - tol ||
                x[i] > bounds_[static_cast<std::size_t>(i)].second + tol)
                return false;
        return true;
    }
    return (x - center_).norm() <= ball_radius_ + tol;
}

Eigen::VectorXd CompactDomain::sample(Substream& rng) const {
    Eigen::VectorXd x(dim_);
    if (shape_ == Shape::Box) {
        for (int i = 0; i < dim_; ++i) {
            const auto& [lo, hi] = bounds_[static_cast<std::size_t>(i)];
            x[i] = rng.uniform(lo, hi);
        }
        return x;
    }
    // direct ball sampling: radial factor r * U^(1/d) on a random direction
    for (int i = 0; i < dim_; ++i) x[i] = rng.normal();
    double nrm = x.norm();
    if (nrm == 0.0) nrm = 1.0;
    const double r = ball_radius_ * std::pow(rng.next_double(), 1.0 / dim_);
    return center_ + (r / nrm) * x;
}

std::vector<Eigen::VectorXd> sample_uniform(const CompactDomain& domain, int count,
                                            std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_uniform: count must be >= 1");
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Substream rng(seed, static_cast<std::uint64_t>(i));
        pts[static_cast<std::size_t>(i)] = domain.sample(rng);
    }
    return pts;
}

namespace {

std::vector<std::pair<double, double>> bounding_box(const CompactDomain& domain) {
    if (domain.shape() == CompactDomain::Shape::Box) return domain.bounds();
    std::vector<std::pair<double, double>> b;
    b.reserve(static_cast<std::size_t>(domain.dim()));
    for (int i = 0; i < domain.dim(); ++i)
        b.emplace_back(domain.center()[i] - domain.ball_radius(),
                       domain.center()[i] + domain.ball_radius());
    return b;
}

} // namespace

long covering_number_bound(const CompactDomain& domain, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("covering_number_bound: delta must be > 0");
    if (delta >= domain.radius()) return 1;
    const auto box = bounding_box(domain);
    const double spacing = 2.0 * delta / std::sqrt(static_cast<double>(domain.dim()));
    long total = 1;
    for (const auto& [lo, hi] : box) {
        const double cells = std::ceil((hi - lo) / spacing);
        long c = cells < 1.0 ? 1L : static_cast<long>(cells);
        if (total > (1L << 62) / std::max(c, 1L))
            throw std::overflow_error("covering_number_bound: overflow");
        total *= std::max(c, 1L);
    }
    return total < 1 ? 1 : total;
}

std::vector<Eigen::VectorXd> covering_grid(const CompactDomain& domain, double delta,
                                           long max_points) {
    const long n = covering_number_bound(domain, delta);
    if (n > max_points)
        throw std::invalid_argument("covering_grid: grid would exceed max_points");
    const auto box = bounding_box(domain);
    const int dim = domain.dim();
    const double spacing = 2.0 * delta / std::sqrt(static_cast<double>(dim));
    std::vector<long> counts(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        const auto& [lo, hi] = box[static_cast<std::size_t>(i)];
        const double cells = std::ceil((hi - lo) / spacing);
        counts[static_cast<std::size_t>(i)] = cells < 1.0 ? 1L : static_cast<long>(cells);
    }
    std::vector<Eigen::VectorXd> grid;
    grid.reserve(static_cast<std::size_t>(n));
    std::vector<long> idx(static_cast<std::size_t>(dim), 0);
    while (true) {
        Eigen::VectorXd p(dim);
        for (int i = 0; i < dim; ++i) {
            const auto& [lo, hi] = box[static_cast<std::size_t>(i)];
            const long c = counts[static_cast<std::size_t>(i)];
            const double cell = (hi - lo) / static_cast<double>(c);
            p[i] = lo + (static_cast<double>(idx[static_cast<std::size_t>(i)]) + 0.5) * cell;
        }
        grid.push_back(std::move(p));
        int axis = 0;
        while (axis < dim) {
            if (++idx[static_cast<std::size_t>(axis)] < counts[static_cast<std::size_t>(axis)]) break;
            idx[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == dim) break;
    }
    return grid;
}

EmbeddedSphere::EmbeddedSphere(int ambient_dim, std::uint64_t seed) : seed_(seed) {
    if (ambient_dim < 3)
        throw std::invalid_argument("EmbeddedSphere: ambient dimension must be >= 3");
    Eigen::MatrixXd g(ambient_dim, 3);
    Substream rng(seed, 0);
    for (int i = 0; i < ambient_dim; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    q_ = qr.householderQ() * Eigen::MatrixXd::Identity(ambient_dim, 3);
}

std::vector<Eigen::VectorXd> EmbeddedSphere::sample(int count, std::uint64_t seed) const {
    if (count < 1) throw std::invalid_argument("EmbeddedSphere::sample: count must be >= 1");
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Substream rng(seed, static_cast<std::uint64_t>(i));
        Eigen::Vector3d g;
        do {
            g << rng.normal(), rng.normal(), rng.normal();
        } while (g.norm() == 0.0);
        g.normalize();
        pts[static_cast<std::size_t>(i)] = q_ * g;
    }
    return pts;
}

double test_function_exp_sum(const Eigen::VectorXd& x) { return std::exp(x.sum()); }

} // namespace rvfl
