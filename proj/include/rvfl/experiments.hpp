#ifndef RVFL_EXPERIMENTS_HPP
#define RVFL_EXPERIMENTS_HPP

#include "rvfl/config.hpp"
#include "rvfl/manifold.hpp"
#include "rvfl/montecarlo.hpp"
#include "rvfl/network.hpp"

#include <string>
#include <vector>

namespace rvfl {

// Named target functions reachable from the CLI/config.
//   exp-sum  exp(sum_k x(k))
//   bump     exp(-1/(1-x^2)) on (-1,1), zero outside (first coordinate)
//   coord    x(1)
//   one      constant 1
ScalarField target_by_name(const std::string& name);

// ---- sphere experiment (error vs nodes over GMRA levels) ----

struct Figure1Config {
    std::uint64_t seed = 42;
    int ambient_dim = 20;
    std::uint64_t sphere_seed = 7;
    int d = 2;
    int j_max = 10;
    int training_count = 5000;
    std::vector<long> levels = {6, 8, 10};
    std::vector<long> n_grid = {16, 32, 64, 128, 256, 512, 1024, 2048};
    double alpha = 2.0;
    std::vector<double> omegas = {10.0, 15.0};
    std::string activation = "sech";
    std::string mode = "lsq"; // lsq | analytic
    double ridge = 0.0;
    double neighborhood_scale = 2.0;
    int test_count = 200;

    static Figure1Config from(const Config& cfg);
};

struct Figure1Row {
    int level = 0;
    double omega = 0.0;
    long n = 0;
    double mean_rel_error = 0.0;
};

std::vector<Figure1Row> run_figure1_core(const Figure1Config& fc, unsigned threads = 0);
void run_figure1(const Config& cfg, const std::string& out_dir, unsigned threads = 0);

// ---- Monte-Carlo mean-square-error law ----

void run_mc_verify(const Config& cfg, const std::string& out_dir, unsigned threads = 0);

// ---- 1-D analytic construction error vs nodes ----

struct Rvfl1dConfig {
    std::uint64_t seed = 42;
    std::vector<long> n_grid = {100, 1000, 10000};
    int seeds = 10;
    double alpha = 1.0;
    double omega = 3.14159265358979323846;
    std::string activation = "sech";
    std::string target = "bump";
    double k_lo = -1.0;
    double k_hi = 1.0;

    static Rvfl1dConfig from(const Config& cfg);
};

struct Rvfl1dRow {
    long n = 0;
    std::uint64_t seed = 0;
    double l2_error = 0.0;
};

std::vector<Rvfl1dRow> run_rvfl_1d_core(const Rvfl1dConfig& rc, unsigned threads = 0);
void run_rvfl_1d(const Config& cfg, const std::string& out_dir, unsigned threads = 0);

double median(std::vector<double> values);

} // namespace rvfl

#endif
