#ifndef RVFL_NETWORK_HPP
#define RVFL_NETWORK_HPP

#include "rvfl/activation.hpp"
#include "rvfl/domain.hpp"
#include "rvfl/montecarlo.hpp"
#include "rvfl/sampler.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rvfl {

// Construction provenance kept for serialization and diagnostics.
struct BuildParams {
    double alpha = 0.0;
    double omega = 0.0;
    int L = 0;
};

// Frozen single-hidden-layer network f(x) = sum_k v_k rho(<w_k,x> + b_k).
// Node sums always reduce pairwise in index order, so evaluation is bitwise
// reproducible regardless of threading.
class RVFLNetwork {
  public:
    RVFLNetwork(Eigen::MatrixXd weights, Eigen::VectorXd biases, Eigen::VectorXd coeffs,
                Activation rho);

    int dim() const { return static_cast<int>(weights_.cols()); }
    long size() const { return static_cast<long>(weights_.rows()); }
    const Eigen::MatrixXd& weights() const { return weights_; }
    const Eigen::VectorXd& biases() const { return biases_; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    const Activation& activation() const { return rho_; }

    double evaluate(const Eigen::VectorXd& x) const;
    std::vector<double> evaluate_many(const std::vector<Eigen::VectorXd>& xs,
                                      unsigned threads = 0) const;

    std::optional<BuildParams> build_params;

  private:
    Eigen::MatrixXd weights_; // n x dim
    Eigen::VectorXd biases_;  // n
    Eigen::VectorXd coeffs_;  // n
    Activation rho_;
};

// Which integral representation the output weights come from.
enum class WeightRegime { Integrable, DerivativeIntegrable };

struct WeightRecipe {
    WeightRegime regime = WeightRegime::Integrable;
    double m_sup = 0.0;       // sup_K |f| estimate
    double vol_k_omega = 0.0; // (2 omega)^dim * pi (2L+1) * vol(K)

    static WeightRecipe make(WeightRegime regime, const ParamConfig& cfg,
                             const CompactDomain& domain, double m_sup);
};

double vol_k_omega(const ParamConfig& cfg, const CompactDomain& domain);

// Output weights computed in closed form from the Monte-Carlo discretization
// of the integral representation; requires unit-integral rho (of rho' in the
// derivative regime) and samples drawn with the same config.
RVFLNetwork analytic_weights(const ScalarField& f, const ParamConfig& cfg,
                             const CompactDomain& domain, const std::vector<NodeSample>& samples,
                             WeightRegime regime, const Activation& rho);

// The raw cubature sum I_n(x) the network is algebraically equal to.
double cubature_sum(const ScalarField& f, const ParamConfig& cfg, const CompactDomain& domain,
                    const std::vector<NodeSample>& samples, WeightRegime regime,
                    const Activation& rho, const Eigen::VectorXd& x);

struct LsqResult {
    RVFLNetwork net;
    long rank = 0;
    bool ill_conditioned = false;
    double relative_residual = 0.0;
};

// Least-squares output weights: minimum-norm pseudoinverse solution when
// ridge == 0, Tikhonov-regularized otherwise. Rank-deficient feature
// matrices are flagged, never fatal.
LsqResult lsq_train(const std::vector<Eigen::VectorXd>& points, const std::vector<double>& labels,
                    const std::vector<NodeSample>& nodes, const Activation& rho,
                    double ridge = 0.0);

struct L2ErrorEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Monte-Carlo estimate of int_K |f - net|^2.
L2ErrorEstimate l2_error(const ScalarField& f, const RVFLNetwork& net, const CompactDomain& K,
                         long n_mc, std::uint64_t seed, unsigned threads = 0);

double estimate_sup_norm(const ScalarField& f, const CompactDomain& K, long n_probe,
                         std::uint64_t seed);

struct ComplexityConstants {
    double c_emp = 0.0;
    double sigma_emp = 0.0;
};

// Empirical stand-ins for the sup-based complexity constants: max over a
// delta-net (axis grid plus random probes) of the per-point empirical bound
// and plug-in variance.
ComplexityConstants estimate_complexity_constants(const ScalarField& f, const ParamConfig& cfg,
                                                  const CompactDomain& K, const Activation& rho,
                                                  double delta, long n_probe, std::uint64_t seed,
                                                  unsigned threads = 0);

struct IntegralMoments {
    double i1 = 0.0; // I(z;1)
    double i2 = 0.0; // I(z;2)
};

// Monte-Carlo estimates of I(z;p) for p = 1,2.
IntegralMoments integral_moments(const ScalarField& f, const ParamConfig& cfg,
                                 const CompactDomain& K, const Activation& rho,
                                 const Eigen::VectorXd& z, long n_probe, std::uint64_t seed);

struct NodeBound {
    long n = 0;
    double delta_max = 0.0;
    long covering_number = 0;
    double c = 1.0; // the normalized numerical constant
};

// Non-asymptotic node-count lower bound, evaluated verbatim with the
// numerical constant c; a diagnostic, not a gate.
NodeBound node_bound(const ParamConfig& cfg, const CompactDomain& K, const Activation& rho,
                     double epsilon, double eta, double delta, double c_emp, double sigma_emp,
                     double m_sup, double c = 1.0);

// Versioned JSON serialization (built-in activations only).
std::string network_to_json(const RVFLNetwork& net);
RVFLNetwork network_from_json(const std::string& text);
void save_network(const RVFLNetwork& net, const std::string& path);
RVFLNetwork load_network(const std::string& path);

} // namespace rvfl

#endif
