#include "rvfl/sampler.hpp"

#include "rvfl/activation.hpp"

#include <cmath>
#include <stdexcept>

namespace rvfl {

void ParamConfig::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("ParamConfig: alpha must be positive");
    if (!(omega > 0.0)) throw std::invalid_argument("ParamConfig: omega must be positive");
    if (n_nodes < 1) throw std::invalid_argument("ParamConfig: n_nodes must be >= 1");
    if (dim < 1) throw std::invalid_argument("ParamConfig: dim must be >= 1");
}

int derive_L(int dim, double domain_radius, double omega) {
    if (dim < 1) throw std::invalid_argument("derive_L: dim must be >= 1");
    if (domain_radius < 0.0) throw std::invalid_argument("derive_L: negative radius");
    if (!(omega > 0.0)) throw std::invalid_argument("derive_L: omega must be positive");
    const double raw =
        std::ceil((2.0 * dim / 3.14159265358979323846264338328) * domain_radius * omega - 0.5);
    return raw < 0.0 ? 0 : static_cast<int>(raw);
}

int derive_L(const ParamConfig& cfg, const CompactDomain& domain) {
    return derive_L(cfg.dim, domain.radius(), cfg.omega);
}

double u_halfwidth(const ParamConfig& cfg, const CompactDomain& domain) {
    if (cfg.u_range == URange::Omega) return cfg.omega;
    return trunc_halfwidth(derive_L(cfg, domain));
}

double node_bias(const Eigen::VectorXd& w, const Eigen::VectorXd& y, double alpha, double u) {
    return -w.dot(y) - alpha * u;
}

std::vector<NodeSample> sample_nodes(const ParamConfig& cfg, const CompactDomain& domain,
                                     std::uint64_t seed) {
    cfg.validate();
    if (domain.dim() != cfg.dim)
        throw std::invalid_argument("sample_nodes: domain dimension does not match config");
    const double w_half = cfg.alpha * cfg.omega;
    const double u_half = u_halfwidth(cfg, domain);
    std::vector<NodeSample> nodes(static_cast<std::size_t>(cfg.n_nodes));
    for (int k = 0; k < cfg.n_nodes; ++k) {
        Substream rng(seed, static_cast<std::uint64_t>(k));
        NodeSample& s = nodes[static_cast<std::size_t>(k)];
        s.w.resize(cfg.dim);
        for (int j = 0; j < cfg.dim; ++j) s.w[j] = rng.uniform(-w_half, w_half);
        s.y = domain.sample(rng);
        s.u = rng.uniform(-u_half, u_half);
        s.b = node_bias(s.w, s.y, cfg.alpha, s.u);
    }
    return nodes;
}

} // namespace rvfl
