#include "rvfl/activation.hpp"

#include "rvfl/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rvfl {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

double trunc_halfwidth(int L) {
    if (L < 0) throw std::invalid_argument("trunc kernels: L must be >= 0");
    return 0.5 * kPi * (2.0 * L + 1.0);
}

// cos(|x|) keeps evenness exact under x -> -x
double trunc_cos(int L, double x) {
    const double ax = std::abs(x);
    if (ax > trunc_halfwidth(L)) return 0.0;
    return std::cos(ax);
}

double trunc_sin(int L, double x) {
    const double ax = std::abs(x);
    if (ax > trunc_halfwidth(L)) return 0.0;
    const double s = std::sin(ax);
    return x < 0.0 ? -s : s;
}

Activation::Activation(std::string name, std::function<double(double)> eval, Kind kind,
                       double integral, double l1_norm, double l2_norm_sq,
                       std::optional<double> lipschitz, double tail_halfwidth)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      kind_(kind),
      integral_(integral),
      l1_norm_(l1_norm),
      l2_norm_sq_(l2_norm_sq),
      lipschitz_(lipschitz),
      tail_halfwidth_(tail_halfwidth) {
    if (l1_norm_ < 0.0 || l2_norm_sq_ < 0.0)
        throw std::invalid_argument("Activation: norms must be nonnegative");
    if (lipschitz_ && *lipschitz_ < 0.0)
        throw std::invalid_argument("Activation: Lipschitz constant must be nonnegative");
}

bool Activation::unit_integral() const { return std::abs(integral_ - 1.0) <= 1e-9; }

Activation Activation::sech() {
    // int sech = pi, int sech^2 = 2
    return Activation("sech", [](double z) { return 1.0 / std::cosh(z); }, Kind::Integrable,
                      kPi, kPi, 2.0, 1.0, 50.0);
}

Activation Activation::gaussian() {
    // int exp(-z^2) = sqrt(pi), int exp(-2 z^2) = sqrt(pi/2),
    // max |d/dz exp(-z^2)| = sqrt(2/e)
    return Activation("gaussian", [](double z) { return std::exp(-z * z); }, Kind::Integrable,
                      std::sqrt(kPi), std::sqrt(kPi), std::sqrt(0.5 * kPi),
                      std::sqrt(2.0 / std::exp(1.0)), 10.0);
}

namespace {
double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logistic_deriv(double z) {
    const double s = logistic(z);
    return s * (1.0 - s);
}
} // namespace

Activation Activation::sigmoid_derivative() {
    // int s' = 1, int s'^2 = 1/6, max |s''| = sqrt(3)/18
    return Activation("sigmoid_derivative", logistic_deriv, Kind::Integrable, 1.0, 1.0,
                      1.0 / 6.0, std::sqrt(3.0) / 18.0, 60.0);
}

Activation Activation::sigmoid() {
    // metadata describes rho' = s(1-s); kappa is the Lipschitz constant of
    // the sigmoid itself (max s' = 1/4)
    return Activation("sigmoid", logistic, Kind::DerivativeIntegrable, 1.0, 1.0, 1.0 / 6.0,
                      0.25, 60.0);
}

Activation Activation::by_name(const std::string& name) {
    if (name == "sech") return sech();
    if (name == "gaussian") return gaussian();
    if (name == "sigmoid_derivative") return sigmoid_derivative();
    if (name == "sigmoid") return sigmoid();
    throw std::invalid_argument("unknown activation: " + name);
}

Activation Activation::from_function(std::string name, std::function<double(double)> eval,
                                     Kind kind, double tail_halfwidth,
                                     std::optional<double> lipschitz) {
    if (!(tail_halfwidth > 0.0))
        throw std::invalid_argument("from_function: tail_halfwidth must be positive");
    const double T = tail_halfwidth;
    const double integral = adaptive_simpson(eval, -T, T, 1e-12);
    const double l1 = adaptive_simpson([&](double z) { return std::abs(eval(z)); }, -T, T, 1e-12);
    const double l2 =
        adaptive_simpson([&](double z) { double v = eval(z); return v * v; }, -T, T, 1e-12);
    return Activation(std::move(name), std::move(eval), kind, integral, l1, l2, lipschitz, T);
}

Activation normalize_to_unit_integral(const Activation& a) {
    const double I = a.integral();
    if (!std::isfinite(I)) throw std::invalid_argument("normalize: integral is not finite");
    if (std::abs(I) < 1e-12)
        throw std::invalid_argument("normalize: integral is zero; cannot rescale " + a.name());
    if (a.unit_integral()) return a;
    const double s = 1.0 / I;
    auto base = a;
    std::optional<double> lip;
    if (a.lipschitz()) lip = *a.lipschitz() * std::abs(s);
    return Activation(a.name() + "/integral",
                      [base, s](double z) { return s * base(z); }, a.kind(), 1.0,
                      a.l1_norm() * std::abs(s), a.l2_norm_sq() * s * s, lip,
                      a.tail_halfwidth());
}

} // namespace rvfl
