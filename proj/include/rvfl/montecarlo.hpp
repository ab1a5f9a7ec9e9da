#ifndef RVFL_MONTECARLO_HPP
#define RVFL_MONTECARLO_HPP

#include "rvfl/domain.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rvfl {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

// Equal-weight cubature estimate vol(S)/n * sum f(x_j) with its plug-in
// estimator variance vol^2 sigma^2 / n.
struct MCEstimate {
    double value = 0.0;
    long n = 0;
    double variance_est = 0.0;
    std::uint64_t seed = 0;

    double std_error() const;
};

MCEstimate mc_integrate(const ScalarField& f, const CompactDomain& S, long n, std::uint64_t seed,
                        unsigned threads = 0);

// Plug-in estimate of the normalized integrand variance
// sigma^2(f,S) = I(f^2)/vol - I(f)^2/vol^2, clipped at 0.
double mc_variance(const ScalarField& f, const CompactDomain& S, long n_probe,
                   std::uint64_t seed);

struct MseRow {
    long n = 0;
    double mse_emp = 0.0;
    double mse_pred = 0.0;
    double ratio = 0.0;
};

// Empirical mean-square error over independent trials per n, next to the
// vol^2 sigma^2 / n prediction. Exact integral/variance may be supplied on
// analytic testbeds; otherwise plug-in estimates are used.
std::vector<MseRow> verify_mse_law(const ScalarField& f, const CompactDomain& S,
                                   const std::vector<long>& n_grid, int trials,
                                   std::uint64_t seed,
                                   std::optional<double> exact_integral = std::nullopt,
                                   std::optional<double> exact_sigma_sq = std::nullopt,
                                   unsigned threads = 0);

// Ordinary least squares slope of log(y) on log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct BennettBound {
    double raw = 0.0;     // 3 exp(-(n t / (c K)) log(1 + K t / vol^2 sigma^2))
    double clipped = 0.0; // min(raw, 1)
};

BennettBound bennett_bound(long n, double t, double k_bound, double vol_sq_sigma_sq,
                           double c = 1.0);

// sup over probe samples of |vol(S) f(x) - I|, the almost-sure bound the
// concentration lemma assumes given.
double estimate_k_bound(const ScalarField& f, const CompactDomain& S, double integral_value,
                        long n_probe, std::uint64_t seed);

} // namespace rvfl

#endif
