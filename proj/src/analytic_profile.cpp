#include "rvfl/analytic_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace rvfl {

AnalyticProfile1D::AnalyticProfile1D(std::function<double(double)> f, const ParamConfig& cfg,
                                     const CompactDomain& domain, const Activation& rho,
                                     ProfileResolution res)
    : f_(std::move(f)), omega_(cfg.omega), y_intervals_(res.y_intervals) {
    cfg.validate();
    if (cfg.dim != 1 || domain.dim() != 1)
        throw std::invalid_argument("AnalyticProfile1D: one-dimensional domains only");
    if (!rho.unit_integral())
        throw std::invalid_argument("AnalyticProfile1D: rho must have unit integral");

    k_lo_ = domain.bounds().front().first;
    k_hi_ = domain.bounds().front().second;
    const double diam = k_hi_ - k_lo_;
    const int L = derive_L(cfg, domain);
    const double u_half = u_halfwidth(cfg, domain);
    const double alpha = cfg.alpha;
    const bool integrable = rho.kind() == Activation::Kind::Integrable;
    const double tail = rho.tail_halfwidth();

    // kernel of the representation: cos window, or -sin for the derivative
    // regime
    auto kernel = [&, L](double u) {
        return integrable ? trunc_cos(L, u) : -trunc_sin(L, u);
    };

    // H(s) = alpha int_{-U}^{U} ker(u) rho(alpha(s-u)) du, computed through
    // the substitution t = alpha (s - u) so the rho factor is sampled where
    // it actually lives
    auto h_exact = [&](double s) {
        double t_lo = alpha * (s - u_half);
        double t_hi = alpha * (s + u_half);
        if (integrable) {
            t_lo = std::max(t_lo, -tail);
            t_hi = std::min(t_hi, tail);
        }
        if (!(t_hi > t_lo)) return 0.0;
        return composite_simpson(
            [&](double t) { return kernel(s - t / alpha) * rho(t); }, t_lo, t_hi,
            res.t_intervals);
    };

    const double s_max = omega_ * diam * 1.0000001 + 1e-12;
    const CubicTable h_table =
        CubicTable::tabulate(h_exact, -s_max, s_max, res.s_points);

    auto g_exact = [&](double z) {
        return composite_simpson(
            [&](double w) { return w * (h_table(w * z) + h_table(-w * z)); }, 0.0, omega_,
            res.w_intervals);
    };
    const double z_max = diam * 1.0000001 + 1e-12;
    g_table_ = CubicTable::tabulate(g_exact, -z_max, z_max, res.z_points);
}

double AnalyticProfile1D::operator()(double x) const {
    return composite_simpson([&](double y) { return f_(y) * g_table_(x - y); }, k_lo_, k_hi_,
                             y_intervals_) /
           (2.0 * omega_);
}

double AnalyticProfile1D::l2_error_vs(const std::function<double(double)>& g,
                                      int x_intervals) const {
    return composite_simpson(
        [&](double x) {
            const double d = (*this)(x)-g(x);
            return d * d;
        },
        k_lo_, k_hi_, x_intervals);
}

double AnalyticProfile1D::l2_error_vs(const RVFLNetwork& net, int x_intervals) const {
    if (net.dim() != 1) throw std::invalid_argument("l2_error_vs: network must be 1-D");
    return l2_error_vs(
        [&](double x) {
            Eigen::VectorXd v(1);
            v[0] = x;
            return net.evaluate(v);
        },
        x_intervals);
}

} // namespace rvfl
