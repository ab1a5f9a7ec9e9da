#include "rvfl/sampler.hpp"

#include "rvfl/activation.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rvfl;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

TEST_CASE("derive_L hand evaluations") {
    CHECK(derive_L(2, 1.0, kPi) == 4); // ceil(4 - 1/2)
    CHECK(derive_L(1, 1.0, kPi) == 2); // ceil(2 - 1/2)
    CHECK(derive_L(1, 1.0, 1e-12) == 0);
}

TEST_CASE("node_bias hand arithmetic") {
    Eigen::VectorXd w(2), y(2);
    w << 1.0, 2.0;
    y << 0.5, -1.0;
    CHECK(node_bias(w, y, 2.0, 0.25) == doctest::Approx(1.0));
}

TEST_CASE("config validation") {
    ParamConfig bad;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.alpha = 1.0;
    bad.omega = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    const auto dom = CompactDomain::unit_box(2);
    ParamConfig mismatched;
    mismatched.dim = 3;
    CHECK_THROWS_AS((void)sample_nodes(mismatched, dom, 1), std::invalid_argument);
}

TEST_CASE("sample_nodes ranges and exact bias identity") {
    const auto dom = CompactDomain::box({{-1.0, 1.0}, {-1.0, 1.0}});
    ParamConfig cfg;
    cfg.alpha = 2.0;
    cfg.omega = kPi;
    cfg.n_nodes = 400;
    cfg.dim = 2;
    const int L = derive_L(cfg, dom);
    const double u_half = trunc_halfwidth(L);
    const auto nodes = sample_nodes(cfg, dom, 77);
    REQUIRE(nodes.size() == 400);
    for (const auto& s : nodes) {
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(s.w[j]) <= cfg.alpha * cfg.omega);
        }
        CHECK(dom.contains(s.y));
        CHECK(std::abs(s.u) <= u_half);
        CHECK(s.b == node_bias(s.w, s.y, cfg.alpha, s.u)); // bitwise
    }
}

TEST_CASE("u_range omega variant narrows the interval") {
    const auto dom = CompactDomain::interval(-1.0, 1.0);
    ParamConfig cfg;
    cfg.alpha = 1.0;
    cfg.omega = 2.0;
    cfg.n_nodes = 200;
    cfg.dim = 1;
    cfg.u_range = URange::Omega;
    for (const auto& s : sample_nodes(cfg, dom, 5)) CHECK(std::abs(s.u) <= 2.0);
    CHECK(u_halfwidth(cfg, dom) == 2.0);
}

TEST_CASE("determinism and worker-partition invariance") {
    const auto dom = CompactDomain::unit_box(3);
    ParamConfig cfg;
    cfg.alpha = 1.5;
    cfg.omega = 2.0;
    cfg.n_nodes = 64;
    cfg.dim = 3;

    const auto serial = sample_nodes(cfg, dom, 123);
    const auto repeat = sample_nodes(cfg, dom, 123);
    REQUIRE(serial.size() == repeat.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
        CHECK(serial[k].w == repeat[k].w);
        CHECK(serial[k].b == repeat[k].b);
    }

    // node k depends only on (seed, k): a worker that generates any prefix
    // or slice of the range reproduces exactly the same nodes
    ParamConfig prefix = cfg;
    prefix.n_nodes = 20;
    const auto head = sample_nodes(prefix, dom, 123);
    for (std::size_t k = 0; k < head.size(); ++k) {
        CHECK(head[k].w == serial[k].w);
        CHECK(head[k].y == serial[k].y);
        CHECK(head[k].u == serial[k].u);
        CHECK(head[k].b == serial[k].b);
    }
}

TEST_CASE("w marginal uniformity chi-square") {
    const auto dom = CompactDomain::interval(0.0, 1.0);
    ParamConfig cfg;
    cfg.alpha = 2.0;
    cfg.omega = 1.5;
    cfg.n_nodes = 50000;
    cfg.dim = 1;
    const auto nodes = sample_nodes(cfg, dom, 321);
    const double half = cfg.alpha * cfg.omega;
    int bins[20] = {};
    for (const auto& s : nodes) {
        int b = static_cast<int>((s.w[0] + half) / (2.0 * half) * 20.0);
        if (b == 20) b = 19;
        ++bins[b];
    }
    const double expected = 50000.0 / 20.0;
    double chi2 = 0.0;
    for (const int b : bins) chi2 += (b - expected) * (b - expected) / expected;
    CHECK(chi2 < 36.19);
}
