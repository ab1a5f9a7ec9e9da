#include "rvfl/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rvfl {

double composite_simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

namespace {

double simpson_slice(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_slice(a, fa, m, fm, flm);
    const double right = simpson_slice(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (!(a < b)) return a == b ? 0.0 : -adaptive_simpson(f, b, a, tol, max_depth);
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_slice(a, fa, b, fb, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

CubicTable::CubicTable(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), v_(std::move(values)) {
    if (v_.size() < 4 || !(hi_ > lo_)) throw std::invalid_argument("CubicTable: need >=4 points and hi > lo");
    step_ = (hi_ - lo_) / static_cast<double>(v_.size() - 1);
}

CubicTable CubicTable::tabulate(const std::function<double(double)>& f, double lo, double hi,
                                int points) {
    std::vector<double> vals(static_cast<std::size_t>(points));
    const double h = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) vals[static_cast<std::size_t>(i)] = f(lo + i * h);
    return CubicTable(lo, hi, std::move(vals));
}

double CubicTable::operator()(double x) const {
    if (x <= lo_) return v_.front();
    if (x >= hi_) return v_.back();
    const double t = (x - lo_) / step_;
    auto i = static_cast<std::ptrdiff_t>(t);
    const auto last = static_cast<std::ptrdiff_t>(v_.size()) - 1;
    if (i >= last) i = last - 1;
    const double u = t - static_cast<double>(i);
    // Catmull-Rom with clamped end neighbors
    const double p1 = v_[static_cast<std::size_t>(i)];
    const double p2 = v_[static_cast<std::size_t>(i + 1)];
    const double p0 = i > 0 ? v_[static_cast<std::size_t>(i - 1)] : 2.0 * p1 - p2;
    const double p3 = i + 2 <= last ? v_[static_cast<std::size_t>(i + 2)] : 2.0 * p2 - p1;
    const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
    const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
    const double c = 0.5 * (p2 - p0);
    return ((a * u + b) * u + c) * u + p1;
}

} // namespace rvfl
