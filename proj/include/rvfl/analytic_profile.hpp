#ifndef RVFL_ANALYTIC_PROFILE_HPP
#define RVFL_ANALYTIC_PROFILE_HPP

#include "rvfl/activation.hpp"
#include "rvfl/network.hpp"
#include "rvfl/quadrature.hpp"
#include "rvfl/sampler.hpp"

#include <functional>

namespace rvfl {

// Dense-quadrature evaluation of the representation integral I(x;1) in one
// dimension. The triple integral factors through
//   H(s) = alpha * int ker(u) rho(alpha (s - u)) du
//   G(z) = int |w| H(w z) dw over [-omega, omega]
//   I(x) = 1/(2 omega) * int_K f(y) G(x - y) dy,
// with H and G tabulated once on fine grids.
struct ProfileResolution {
    int s_points = 8001;
    int t_intervals = 2000;
    int z_points = 4001;
    int w_intervals = 2000;
    int y_intervals = 2000;
};

class AnalyticProfile1D {
  public:
    AnalyticProfile1D(std::function<double(double)> f, const ParamConfig& cfg,
                      const CompactDomain& domain, const Activation& rho,
                      ProfileResolution res = ProfileResolution{});

    double operator()(double x) const; // I(x;1)

    // int_K |I(.;1) - net|^2 by composite Simpson
    double l2_error_vs(const RVFLNetwork& net, int x_intervals = 800) const;
    double l2_error_vs(const std::function<double(double)>& g, int x_intervals = 800) const;

  private:
    std::function<double(double)> f_;
    double omega_;
    double k_lo_, k_hi_;
    int y_intervals_;
    CubicTable g_table_;
};

} // namespace rvfl

#endif
