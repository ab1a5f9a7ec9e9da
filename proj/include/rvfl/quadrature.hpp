#ifndef RVFL_QUADRATURE_HPP
#define RVFL_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace rvfl {

// Composite Simpson rule with n subintervals (rounded up to even).
double composite_simpson(const std::function<double(double)>& f, double a, double b, int n);

// Adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40);

// Uniform-grid cubic (Catmull-Rom) interpolation table.
class CubicTable {
  public:
    CubicTable() = default;
    CubicTable(double lo, double hi, std::vector<double> values);

    static CubicTable tabulate(const std::function<double(double)>& f, double lo, double hi,
                               int points);

    double operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

  private:
    double lo_ = 0.0, hi_ = 1.0, step_ = 1.0;
    std::vector<double> v_;
};

} // namespace rvfl

#endif
