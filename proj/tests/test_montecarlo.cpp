#include "rvfl/montecarlo.hpp"

#include <doctest.h>

#include <cmath>

using namespace rvfl;

namespace {
const auto unit = CompactDomain::unit_box(1);
const ScalarField ident = [](const Eigen::VectorXd& x) { return x[0]; };
const ScalarField three = [](const Eigen::VectorXd&) { return 3.0; };
} // namespace

TEST_CASE("mc_integrate constant integrand is exact") {
    for (long n : {1L, 7L, 100L}) {
        const auto est = mc_integrate(three, unit, n, 42);
        CHECK(est.value == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(est.variance_est == doctest::Approx(0.0));
    }
}

TEST_CASE("mc_integrate linear integrand near 1/2") {
    const auto est = mc_integrate(ident, unit, 100000, 4242);
    const double three_sigma = 3.0 * std::sqrt(1.0 / 12.0 / 100000.0);
    CHECK(std::abs(est.value - 0.5) < three_sigma);
    CHECK(est.std_error() == doctest::Approx(std::sqrt(1.0 / 12.0 / 100000.0)).epsilon(0.05));
}

TEST_CASE("mc_integrate is deterministic and thread-count independent") {
    const auto a = mc_integrate(ident, unit, 10000, 9);
    const auto b = mc_integrate(ident, unit, 10000, 9);
    const auto c = mc_integrate(ident, unit, 10000, 9, 3);
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
}

TEST_CASE("mc_variance") {
    CHECK(mc_variance(three, unit, 1000, 5) == 0.0);
    CHECK(mc_variance(ident, unit, 200000, 5) == doctest::Approx(1.0 / 12.0).epsilon(0.05));
    // shift invariance
    const ScalarField shifted = [](const Eigen::VectorXd& x) { return x[0] + 7.0; };
    const double v1 = mc_variance(ident, unit, 50000, 5);
    const double v2 = mc_variance(shifted, unit, 50000, 5);
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-9));
}

TEST_CASE("verify_mse_law on the linear testbed") {
    SUBCASE("constant integrand has zero MSE at every n") {
        const auto rows = verify_mse_law(three, unit, {10, 100}, 50, 3, 3.0, 0.0);
        for (const auto& r : rows) CHECK(r.mse_emp == doctest::Approx(0.0));
    }
    SUBCASE("ratio near 1 and slope near -1") {
        const auto rows =
            verify_mse_law(ident, unit, {100, 1000, 10000}, 2000, 11, 0.5, 1.0 / 12.0);
        std::vector<double> xs, ys;
        for (const auto& r : rows) {
            CHECK(r.ratio > 0.8);
            CHECK(r.ratio < 1.2);
            xs.push_back(static_cast<double>(r.n));
            ys.push_back(r.mse_emp);
        }
        const double slope = loglog_slope(xs, ys);
        CHECK(slope > -1.15);
        CHECK(slope < -0.85);
    }
}

TEST_CASE("unbiasedness across seeds") {
    // mean of I_n over many independent seeds vs the analytic integral
    const int seeds = 1000;
    const long n = 100;
    double mean = 0.0;
    for (int s = 0; s < seeds; ++s)
        mean += mc_integrate(ident, unit, n, mix64(1000 + static_cast<std::uint64_t>(s))).value;
    mean /= seeds;
    const double se_of_mean = std::sqrt(1.0 / 12.0 / n) / std::sqrt(static_cast<double>(seeds));
    CHECK(std::abs(mean - 0.5) < 4.0 * se_of_mean);
}

TEST_CASE("bennett_bound") {
    SUBCASE("vacuous limit at t -> 0 clips to 1") {
        const auto b = bennett_bound(1000, 1e-14, 1.0, 1.0, 1.0);
        CHECK(b.raw == doctest::Approx(3.0).epsilon(1e-6));
        CHECK(b.clipped == 1.0);
    }
    SUBCASE("strictly decreasing in n for fixed t") {
        double prev = 4.0; // raw bound never exceeds 3
        for (long n : {10L, 100L, 1000L, 10000L}) {
            const auto b = bennett_bound(n, 0.1, 1.0, 1.0, 1.0);
            CHECK(b.raw < prev);
            prev = b.raw;
        }
    }
    SUBCASE("concrete instance matches an independent evaluation") {
        const auto b = bennett_bound(1000, 0.1, 1.0, 1.0, 1.0);
        // separately coded: 3 exp(-(n t / (c K)) ln(1 + K t / V))
        const double expected = 3.0 * std::exp(-(1000.0 * 0.1 / 1.0) * std::log(1.0 + 0.1));
        CHECK(b.raw == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("estimate_k_bound on the linear testbed") {
    // sup |x - 1/2| over [0,1] is 1/2
    const double k = estimate_k_bound(ident, unit, 0.5, 20000, 77);
    CHECK(k <= 0.5);
    CHECK(k > 0.49);
}
