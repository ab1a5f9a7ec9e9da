#include "rvfl/montecarlo.hpp"

#include "rvfl/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace rvfl {

double MCEstimate::std_error() const { return std::sqrt(variance_est); }

namespace {

// Chunked accumulation: chunk boundaries are fixed by n alone, so the
// reduction is bitwise identical for any thread count.
constexpr long kChunk = 4096;

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

Moments accumulate(const ScalarField& f, const CompactDomain& S, long n, std::uint64_t seed,
                   unsigned threads) {
    const long chunks = (n + kChunk - 1) / kChunk;
    std::vector<Moments> partial(static_cast<std::size_t>(chunks));
    parallel_for(
        static_cast<std::size_t>(chunks),
        [&](std::size_t c) {
            const long lo = static_cast<long>(c) * kChunk;
            const long hi = std::min(lo + kChunk, n);
            std::vector<double> vals(static_cast<std::size_t>(hi - lo));
            for (long i = lo; i < hi; ++i) {
                Substream rng(seed, static_cast<std::uint64_t>(i));
                vals[static_cast<std::size_t>(i - lo)] = f(S.sample(rng));
            }
            Moments m;
            m.sum = pairwise_sum(0, vals.size(), [&](std::size_t i) { return vals[i]; });
            m.sum_sq =
                pairwise_sum(0, vals.size(), [&](std::size_t i) { return vals[i] * vals[i]; });
            partial[c] = m;
        },
        threads);
    Moments total;
    total.sum = pairwise_sum(0, partial.size(), [&](std::size_t i) { return partial[i].sum; });
    total.sum_sq =
        pairwise_sum(0, partial.size(), [&](std::size_t i) { return partial[i].sum_sq; });
    return total;
}

} // namespace

MCEstimate mc_integrate(const ScalarField& f, const CompactDomain& S, long n, std::uint64_t seed,
                        unsigned threads) {
    if (n < 1) throw std::invalid_argument("mc_integrate: n must be >= 1");
    const Moments m = accumulate(f, S, n, seed, threads);
    const double mean = m.sum / static_cast<double>(n);
    double var = m.sum_sq / static_cast<double>(n) - mean * mean;
    if (var < 0.0) var = 0.0;
    MCEstimate est;
    est.value = S.volume() * mean;
    est.n = n;
    est.variance_est = S.volume() * S.volume() * var / static_cast<double>(n);
    est.seed = seed;
    return est;
}

double mc_variance(const ScalarField& f, const CompactDomain& S, long n_probe,
                   std::uint64_t seed) {
    if (n_probe < 2) throw std::invalid_argument("mc_variance: n_probe must be >= 2");
    const Moments m = accumulate(f, S, n_probe, seed, 0);
    const double mean = m.sum / static_cast<double>(n_probe);
    double var = m.sum_sq / static_cast<double>(n_probe) - mean * mean;
    return var < 0.0 ? 0.0 : var;
}

std::vector<MseRow> verify_mse_law(const ScalarField& f, const CompactDomain& S,
                                   const std::vector<long>& n_grid, int trials,
                                   std::uint64_t seed, std::optional<double> exact_integral,
                                   std::optional<double> exact_sigma_sq, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("verify_mse_law: trials must be >= 1");
    const double vol = S.volume();
    const double truth =
        exact_integral ? *exact_integral : mc_integrate(f, S, 1L << 21, mix64(seed) ^ 1).value;
    const double sigma_sq =
        exact_sigma_sq ? *exact_sigma_sq : mc_variance(f, S, 1L << 21, mix64(seed) ^ 2);

    std::vector<MseRow> rows;
    rows.reserve(n_grid.size());
    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        const long n = n_grid[gi];
        std::vector<double> sq_err(static_cast<std::size_t>(trials));
        parallel_for(
            static_cast<std::size_t>(trials),
            [&](std::size_t t) {
                // one substream family per (grid cell, trial)
                const std::uint64_t trial_seed =
                    mix64(seed ^ mix64((static_cast<std::uint64_t>(gi) << 32) + t + 3));
                const double v = mc_integrate(f, S, n, trial_seed, 1).value;
                sq_err[t] = (v - truth) * (v - truth);
            },
            threads);
        MseRow row;
        row.n = n;
        row.mse_emp = pairwise_sum(0, sq_err.size(), [&](std::size_t i) { return sq_err[i]; }) /
                      static_cast<double>(trials);
        row.mse_pred = vol * vol * sigma_sq / static_cast<double>(n);
        row.ratio = row.mse_pred > 0.0 ? row.mse_emp / row.mse_pred : 0.0;
        rows.push_back(row);
    }
    return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need matching arrays of size >= 2");
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BennettBound bennett_bound(long n, double t, double k_bound, double vol_sq_sigma_sq, double c) {
    if (n < 1) throw std::invalid_argument("bennett_bound: n must be >= 1");
    if (!(t >= 0.0)) throw std::invalid_argument("bennett_bound: t must be >= 0");
    if (!(k_bound > 0.0) || !(vol_sq_sigma_sq > 0.0) || !(c > 0.0))
        throw std::invalid_argument("bennett_bound: K, vol^2 sigma^2, c must be positive");
    BennettBound b;
    const double expo =
        (static_cast<double>(n) * t / (c * k_bound)) * std::log1p(k_bound * t / vol_sq_sigma_sq);
    b.raw = 3.0 * std::exp(-expo);
    b.clipped = std::min(b.raw, 1.0);
    return b;
}

double estimate_k_bound(const ScalarField& f, const CompactDomain& S, double integral_value,
                        long n_probe, std::uint64_t seed) {
    if (n_probe < 1) throw std::invalid_argument("estimate_k_bound: n_probe must be >= 1");
    double k = 0.0;
    for (long i = 0; i < n_probe; ++i) {
        Substream rng(seed, static_cast<std::uint64_t>(i));
        k = std::max(k, std::abs(S.volume() * f(S.sample(rng)) - integral_value));
    }
    return k;
}

} // namespace rvfl
