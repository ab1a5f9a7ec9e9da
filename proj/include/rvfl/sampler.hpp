#ifndef RVFL_SAMPLER_HPP
#define RVFL_SAMPLER_HPP

#include "rvfl/domain.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rvfl {

// Which interval u_k is drawn from: the full truncation window
// [-pi(2L+1)/2, pi(2L+1)/2], or the smaller [-Omega, Omega] practical
// variant.
enum class URange { Full, Omega };

// The scalar knobs of one RVFL construction. L is always derived from
// (dim, rad(K), omega), never stored.
struct ParamConfig {
    double alpha = 1.0;
    double omega = 1.0;
    int n_nodes = 1;
    int dim = 1;
    URange u_range = URange::Full;

    void validate() const;
};

// L = ceil((2*dim/pi) * rad(K) * omega - 1/2), floored at 0
int derive_L(int dim, double domain_radius, double omega);
int derive_L(const ParamConfig& cfg, const CompactDomain& domain);

double u_halfwidth(const ParamConfig& cfg, const CompactDomain& domain);

// One hidden node's random parameters. w is stored on the network scale
// [-alpha*omega, alpha*omega]^dim and b = -<w,y> - alpha*u exactly.
struct NodeSample {
    Eigen::VectorXd w;
    Eigen::VectorXd y;
    double u = 0.0;
    double b = 0.0;
};

double node_bias(const Eigen::VectorXd& w, const Eigen::VectorXd& y, double alpha, double u);

// n independent draws; node k comes from substream (seed, k), so results are
// bitwise identical under any partition of the node range across workers.
std::vector<NodeSample> sample_nodes(const ParamConfig& cfg, const CompactDomain& domain,
                                     std::uint64_t seed);

} // namespace rvfl

#endif
