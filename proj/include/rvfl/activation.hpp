#ifndef RVFL_ACTIVATION_HPP
#define RVFL_ACTIVATION_HPP

#include <functional>
#include <optional>
#include <string>

namespace rvfl {

// Truncated trigonometric kernels: the trig function inside the window
// [-pi(2L+1)/2, pi(2L+1)/2], zero outside.
double trunc_cos(int L, double x);
double trunc_sin(int L, double x);
double trunc_halfwidth(int L);

struct TruncatedTrig {
    enum class Mode { Cosine, Sine };
    int L = 0;
    Mode mode = Mode::Cosine;

    double halfwidth() const { return trunc_halfwidth(L); }
    double operator()(double x) const {
        return mode == Mode::Cosine ? trunc_cos(L, x) : trunc_sin(L, x);
    }
};

// Scalar activation with the integrability metadata the constructions need.
// For Kind::Integrable the integral/l1/l2 fields describe rho itself; for
// Kind::DerivativeIntegrable they describe rho', which is the function the
// integral representation actually works with.
class Activation {
  public:
    enum class Kind { Integrable, DerivativeIntegrable };

    Activation(std::string name, std::function<double(double)> eval, Kind kind,
               double integral, double l1_norm, double l2_norm_sq,
               std::optional<double> lipschitz, double tail_halfwidth);

    double operator()(double z) const { return eval_(z); }

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }
    double integral() const { return integral_; }
    double l1_norm() const { return l1_norm_; }
    double l2_norm_sq() const { return l2_norm_sq_; }
    std::optional<double> lipschitz() const { return lipschitz_; }
    // half-width of the window outside which |rho| (resp. |rho'|) < 1e-10
    double tail_halfwidth() const { return tail_halfwidth_; }
    bool unit_integral() const;

    // Built-ins; metadata stored in closed form.
    static Activation sech();
    static Activation gaussian();
    static Activation sigmoid_derivative();
    static Activation sigmoid(); // derivative-integrable path
    static Activation by_name(const std::string& name);

    // User-supplied activation: integral/l1/l2 metadata computed by adaptive
    // quadrature over [-tail_halfwidth, tail_halfwidth]. The caller is
    // responsible for choosing the window so that tails beyond it are < 1e-10.
    static Activation from_function(std::string name, std::function<double(double)> eval,
                                    Kind kind, double tail_halfwidth,
                                    std::optional<double> lipschitz = std::nullopt);

  private:
    std::string name_;
    std::function<double(double)> eval_;
    Kind kind_;
    double integral_;
    double l1_norm_;
    double l2_norm_sq_;
    std::optional<double> lipschitz_;
    double tail_halfwidth_;
};

// Rescale so the stored integral (of rho, or rho' for the derivative kind)
// equals 1; rejects zero or non-finite integrals.
Activation normalize_to_unit_integral(const Activation& a);

} // namespace rvfl

#endif
