#include "rvfl/network.hpp"

#include "rvfl/parallel.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rvfl {

using nlohmann::json;

RVFLNetwork::RVFLNetwork(Eigen::MatrixXd weights, Eigen::VectorXd biases, Eigen::VectorXd coeffs,
                         Activation rho)
    : weights_(std::move(weights)),
      biases_(std::move(biases)),
      coeffs_(std::move(coeffs)),
      rho_(std::move(rho)) {
    if (weights_.rows() != biases_.size() || weights_.rows() != coeffs_.size())
        throw std::invalid_argument("RVFLNetwork: node count mismatch among w, b, v");
    if (weights_.rows() == 0) throw std::invalid_argument("RVFLNetwork: need at least one node");
}

double RVFLNetwork::evaluate(const Eigen::VectorXd& x) const {
    if (x.size() != weights_.cols())
        throw std::invalid_argument("RVFLNetwork::evaluate: dimension mismatch");
    Eigen::VectorXd t = weights_ * x + biases_;
    const auto n = static_cast<std::size_t>(t.size());
    return pairwise_sum(0, n, [&](std::size_t k) {
        const auto i = static_cast<Eigen::Index>(k);
        return coeffs_[i] * rho_(t[i]);
    });
}

std::vector<double> RVFLNetwork::evaluate_many(const std::vector<Eigen::VectorXd>& xs,
                                               unsigned threads) const {
    std::vector<double> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = evaluate(xs[i]); }, threads);
    return out;
}

double vol_k_omega(const ParamConfig& cfg, const CompactDomain& domain) {
    const int L = derive_L(cfg, domain);
    return std::pow(2.0 * cfg.omega, cfg.dim) * 2.0 * trunc_halfwidth(L) * domain.volume();
}

WeightRecipe WeightRecipe::make(WeightRegime regime, const ParamConfig& cfg,
                                const CompactDomain& domain, double m_sup) {
    WeightRecipe r;
    r.regime = regime;
    r.m_sup = m_sup;
    r.vol_k_omega = rvfl::vol_k_omega(cfg, domain);
    return r;
}

namespace {

void check_regime(const Activation& rho, WeightRegime regime) {
    if (regime == WeightRegime::Integrable && rho.kind() != Activation::Kind::Integrable)
        throw std::invalid_argument("analytic weights: integrable regime needs an integrable rho");
    if (regime == WeightRegime::DerivativeIntegrable &&
        rho.kind() != Activation::Kind::DerivativeIntegrable)
        throw std::invalid_argument(
            "analytic weights: derivative regime needs a derivative-integrable rho");
    if (!rho.unit_integral())
        throw std::invalid_argument("analytic weights: rho must be normalized to unit integral "
                                    "(see normalize_to_unit_integral)");
}

// Volume of the domain the samples were actually drawn from; equals
// vol(K(Omega)) under the full u range.
double cubature_volume(const ParamConfig& cfg, const CompactDomain& domain) {
    const double u_len = 2.0 * u_halfwidth(cfg, domain);
    return std::pow(2.0 * cfg.omega, cfg.dim) * u_len * domain.volume();
}

// F_{alpha,omega}(y, w/alpha^dim, u) with the w-product folded in; the sign
// flip and sine kernel realize the derivative-regime variant.
double f_weight_factor(const ParamConfig& cfg, int L, const Eigen::VectorXd& w_scaled, double u,
                       double fy, WeightRegime regime) {
    double prod = 1.0;
    for (int j = 0; j < w_scaled.size(); ++j) prod *= w_scaled[j] / cfg.alpha;
    const double scale = cfg.alpha / std::pow(2.0 * cfg.omega, cfg.dim);
    if (regime == WeightRegime::Integrable)
        return scale * std::abs(prod) * fy * trunc_cos(L, u);
    return -scale * std::abs(prod) * fy * trunc_sin(L, u);
}

} // namespace

RVFLNetwork analytic_weights(const ScalarField& f, const ParamConfig& cfg,
                             const CompactDomain& domain, const std::vector<NodeSample>& samples,
                             WeightRegime regime, const Activation& rho) {
    cfg.validate();
    check_regime(rho, regime);
    if (samples.empty()) throw std::invalid_argument("analytic_weights: no samples");
    const int L = derive_L(cfg, domain);
    const double vol = cubature_volume(cfg, domain);
    const auto n = static_cast<long>(samples.size());

    Eigen::MatrixXd w(n, cfg.dim);
    Eigen::VectorXd b(n), v(n);
    for (long k = 0; k < n; ++k) {
        const NodeSample& s = samples[static_cast<std::size_t>(k)];
        if (s.w.size() != cfg.dim)
            throw std::invalid_argument("analytic_weights: sample dimension mismatch");
        w.row(k) = s.w.transpose();
        b[k] = s.b;
        v[k] = (vol / static_cast<double>(n)) *
               f_weight_factor(cfg, L, s.w, s.u, f(s.y), regime);
    }
    RVFLNetwork net(std::move(w), std::move(b), std::move(v), rho);
    net.build_params = BuildParams{cfg.alpha, cfg.omega, L};
    return net;
}

double cubature_sum(const ScalarField& f, const ParamConfig& cfg, const CompactDomain& domain,
                    const std::vector<NodeSample>& samples, WeightRegime regime,
                    const Activation& rho, const Eigen::VectorXd& x) {
    const int L = derive_L(cfg, domain);
    const double vol = cubature_volume(cfg, domain);
    const auto n = static_cast<std::size_t>(samples.size());
    return pairwise_sum(0, n, [&](std::size_t k) {
        const NodeSample& s = samples[k];
        // the Monte-Carlo integrand uses the unscaled variable w/alpha
        const Eigen::VectorXd w_raw = s.w / cfg.alpha;
        const double b_raw = -cfg.alpha * (w_raw.dot(s.y) + s.u);
        const double factor = f_weight_factor(cfg, L, s.w, s.u, f(s.y), regime);
        return (vol / static_cast<double>(n)) * factor *
               rho(cfg.alpha * w_raw.dot(x) + b_raw);
    });
}

LsqResult lsq_train(const std::vector<Eigen::VectorXd>& points, const std::vector<double>& labels,
                    const std::vector<NodeSample>& nodes, const Activation& rho, double ridge) {
    if (points.empty() || points.size() != labels.size())
        throw std::invalid_argument("lsq_train: need matching nonempty points and labels");
    if (nodes.empty()) throw std::invalid_argument("lsq_train: need at least one node");
    if (ridge < 0.0) throw std::invalid_argument("lsq_train: ridge must be >= 0");
    const auto m = static_cast<long>(points.size());
    const auto n = static_cast<long>(nodes.size());
    const auto dim = static_cast<int>(points.front().size());

    Eigen::MatrixXd w(n, dim);
    Eigen::VectorXd b(n);
    for (long k = 0; k < n; ++k) {
        w.row(k) = nodes[static_cast<std::size_t>(k)].w.transpose();
        b[k] = nodes[static_cast<std::size_t>(k)].b;
    }

    Eigen::MatrixXd h(m, n); // h(j,k) = rho(<w_k, x_j> + b_k)
    for (long j = 0; j < m; ++j) {
        if (points[static_cast<std::size_t>(j)].size() != dim)
            throw std::invalid_argument("lsq_train: inconsistent point dimensions");
        Eigen::VectorXd t = w * points[static_cast<std::size_t>(j)] + b;
        for (long k = 0; k < n; ++k) h(j, k) = rho(t[k]);
    }
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(labels.data(), m);

    Eigen::VectorXd v;
    long rank = 0;
    if (ridge == 0.0) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(h);
        v = cod.solve(y);
        // one correction pass tightens the residual in the interpolation
        // regime (m <= n), where the system is consistent
        if (m <= n) v += cod.solve(y - h * v);
        rank = cod.rank();
    } else {
        Eigen::MatrixXd gram = h.transpose() * h;
        gram.diagonal().array() += ridge;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        v = ldlt.solve(h.transpose() * y);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(h);
        rank = cod.rank();
    }

    const double ynorm = y.norm();
    const double resid = (h * v - y).norm();
    LsqResult out{RVFLNetwork(std::move(w), std::move(b), std::move(v), rho), rank,
                  rank < std::min(m, n), ynorm > 0.0 ? resid / ynorm : resid};
    return out;
}

L2ErrorEstimate l2_error(const ScalarField& f, const RVFLNetwork& net, const CompactDomain& K,
                         long n_mc, std::uint64_t seed, unsigned threads) {
    const MCEstimate est = mc_integrate(
        [&](const Eigen::VectorXd& x) {
            const double d = f(x) - net.evaluate(x);
            return d * d;
        },
        K, n_mc, seed, threads);
    return {est.value, est.std_error()};
}

double estimate_sup_norm(const ScalarField& f, const CompactDomain& K, long n_probe,
                         std::uint64_t seed) {
    if (n_probe < 1) throw std::invalid_argument("estimate_sup_norm: n_probe must be >= 1");
    double m = 0.0;
    for (long i = 0; i < n_probe; ++i) {
        Substream rng(seed, static_cast<std::uint64_t>(i));
        m = std::max(m, std::abs(f(K.sample(rng))));
    }
    return m;
}

namespace {

WeightRegime regime_of(const Activation& rho) {
    return rho.kind() == Activation::Kind::Integrable ? WeightRegime::Integrable
                                                      : WeightRegime::DerivativeIntegrable;
}

// terms vol(K(Omega)) * F * rho(...) evaluated at z over shared samples
struct TermSet {
    std::vector<Eigen::VectorXd> w_raw; // in [-Omega, Omega]^dim
    std::vector<Eigen::VectorXd> y;
    std::vector<double> u;
    std::vector<double> f_factor; // F with the f(y) and kernel folded in
    double vol = 0.0;
};

TermSet draw_terms(const ScalarField& f, const ParamConfig& cfg, const CompactDomain& K,
                   WeightRegime regime, long n_probe, std::uint64_t seed) {
    TermSet ts;
    const int L = derive_L(cfg, K);
    const double u_half = u_halfwidth(cfg, K);
    ts.vol = std::pow(2.0 * cfg.omega, cfg.dim) * 2.0 * u_half * K.volume();
    ts.w_raw.resize(static_cast<std::size_t>(n_probe));
    ts.y.resize(static_cast<std::size_t>(n_probe));
    ts.u.resize(static_cast<std::size_t>(n_probe));
    ts.f_factor.resize(static_cast<std::size_t>(n_probe));
    const double scale = cfg.alpha / std::pow(2.0 * cfg.omega, cfg.dim);
    for (long i = 0; i < n_probe; ++i) {
        Substream rng(seed, static_cast<std::uint64_t>(i));
        Eigen::VectorXd wr(cfg.dim);
        for (int j = 0; j < cfg.dim; ++j) wr[j] = rng.uniform(-cfg.omega, cfg.omega);
        Eigen::VectorXd yy = K.sample(rng);
        const double uu = rng.uniform(-u_half, u_half);
        double prod = 1.0;
        for (int j = 0; j < cfg.dim; ++j) prod *= wr[j];
        const double kernel = regime == WeightRegime::Integrable ? trunc_cos(L, uu)
                                                                 : -trunc_sin(L, uu);
        const auto idx = static_cast<std::size_t>(i);
        ts.f_factor[idx] = scale * std::abs(prod) * f(yy) * kernel;
        ts.w_raw[idx] = std::move(wr);
        ts.y[idx] = std::move(yy);
        ts.u[idx] = uu;
    }
    return ts;
}

double term_at(const TermSet& ts, const ParamConfig& cfg, const Activation& rho,
               const Eigen::VectorXd& z, std::size_t i) {
    const double arg = cfg.alpha * (ts.w_raw[i].dot(z) - ts.w_raw[i].dot(ts.y[i]) - ts.u[i]);
    return ts.vol * ts.f_factor[i] * rho(arg);
}

} // namespace

IntegralMoments integral_moments(const ScalarField& f, const ParamConfig& cfg,
                                 const CompactDomain& K, const Activation& rho,
                                 const Eigen::VectorXd& z, long n_probe, std::uint64_t seed) {
    cfg.validate();
    if (n_probe < 2) throw std::invalid_argument("integral_moments: n_probe must be >= 2");
    const TermSet ts = draw_terms(f, cfg, K, regime_of(rho), n_probe, seed);
    const auto n = static_cast<std::size_t>(n_probe);
    const double mean =
        pairwise_sum(0, n, [&](std::size_t i) { return term_at(ts, cfg, rho, z, i); }) /
        static_cast<double>(n_probe);
    const double mean_sq = pairwise_sum(0, n, [&](std::size_t i) {
                               const double t = term_at(ts, cfg, rho, z, i);
                               return t * t;
                           }) /
                           static_cast<double>(n_probe);
    // I(z;1) = E[term], I(z;2) = E[term^2] / vol
    return {mean, mean_sq / ts.vol};
}

ComplexityConstants estimate_complexity_constants(const ScalarField& f, const ParamConfig& cfg,
                                                  const CompactDomain& K, const Activation& rho,
                                                  double delta, long n_probe, std::uint64_t seed,
                                                  unsigned threads) {
    cfg.validate();
    check_regime(rho, regime_of(rho));
    if (n_probe < 2)
        throw std::invalid_argument("estimate_complexity_constants: n_probe must be >= 2");

    std::vector<Eigen::VectorXd> net_points = covering_grid(K, delta, 100000);
    const auto probes = sample_uniform(K, 1000, mix64(seed) ^ 0x5eedUL);
    net_points.insert(net_points.end(), probes.begin(), probes.end());

    const TermSet ts = draw_terms(f, cfg, K, regime_of(rho), n_probe, seed);
    const auto n = static_cast<std::size_t>(n_probe);

    std::vector<double> c_z(net_points.size()), s_z(net_points.size());
    parallel_for(
        net_points.size(),
        [&](std::size_t zi) {
            const Eigen::VectorXd& z = net_points[zi];
            std::vector<double> terms(n);
            for (std::size_t i = 0; i < n; ++i) terms[i] = term_at(ts, cfg, rho, z, i);
            const double i1 =
                pairwise_sum(0, n, [&](std::size_t i) { return terms[i]; }) /
                static_cast<double>(n_probe);
            double cmax = 0.0;
            for (std::size_t i = 0; i < n; ++i) cmax = std::max(cmax, std::abs(terms[i] - i1));
            const double var = pairwise_sum(0, n, [&](std::size_t i) {
                                   const double d = terms[i] - i1;
                                   return d * d;
                               }) /
                               static_cast<double>(n_probe);
            c_z[zi] = cmax;
            s_z[zi] = std::max(0.0, var / (ts.vol * ts.vol));
        },
        threads);

    ComplexityConstants out;
    for (std::size_t zi = 0; zi < net_points.size(); ++zi) {
        out.c_emp = std::max(out.c_emp, c_z[zi]);
        out.sigma_emp = std::max(out.sigma_emp, s_z[zi]);
    }
    return out;
}

NodeBound node_bound(const ParamConfig& cfg, const CompactDomain& K, const Activation& rho,
                     double epsilon, double eta, double delta, double c_emp, double sigma_emp,
                     double m_sup, double c) {
    cfg.validate();
    if (!(epsilon > 0.0) || !(eta > 0.0) || eta >= 1.0)
        throw std::invalid_argument("node_bound: need epsilon > 0 and eta in (0,1)");
    if (!rho.lipschitz())
        throw std::invalid_argument("node_bound: unsupported without a Lipschitz constant");
    const double kappa = *rho.lipschitz();
    const double n_dim = cfg.dim;
    const double vol = K.volume();
    const double rad = K.radius();

    const double delta_max =
        std::sqrt(epsilon) /
        (4.0 * std::sqrt(n_dim) * kappa * cfg.alpha * cfg.alpha * m_sup *
         std::pow(cfg.omega, n_dim + 2.0) * std::pow(vol, 1.5) * (1.0 + 2.0 * n_dim * rad));
    if (!(delta > 0.0) || delta >= delta_max)
        throw std::domain_error("node_bound: delta outside the admissible range (max " +
                                std::to_string(delta_max) + ")");

    NodeBound out;
    out.delta_max = delta_max;
    out.covering_number = covering_number_bound(K, delta);
    out.c = c;
    if (c_emp <= 0.0) {
        out.n = 1;
        return out;
    }
    const double num = 2.0 * std::sqrt(2.0 * vol) * c_emp * c *
                       std::log(3.0 * static_cast<double>(out.covering_number) / eta);
    const double log_arg =
        sigma_emp > 0.0
            ? c_emp * std::sqrt(epsilon) /
                  (4.0 * std::sqrt(2.0) * n_dim * std::pow(2.0 * cfg.omega, n_dim + 1.0) * rad *
                   std::pow(vol, 2.5) * sigma_emp)
            : std::numeric_limits<double>::infinity();
    const double den = std::sqrt(epsilon) * std::log1p(log_arg);
    const double value = num / den;
    out.n = value < 1.0 ? 1 : static_cast<long>(std::ceil(value));
    return out;
}

namespace {

Activation activation_by_stored_name(const std::string& name) {
    const std::string suffix = "/integral";
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return normalize_to_unit_integral(
            Activation::by_name(name.substr(0, name.size() - suffix.size())));
    return Activation::by_name(name);
}

} // namespace

std::string network_to_json(const RVFLNetwork& net) {
    json j;
    j["format"] = "rvfl-network";
    j["version"] = 1;
    j["dim"] = net.dim();
    j["activation"] = net.activation().name();
    if (net.build_params) {
        j["alpha"] = net.build_params->alpha;
        j["omega"] = net.build_params->omega;
        j["L"] = net.build_params->L;
    } else {
        j["alpha"] = nullptr;
        j["omega"] = nullptr;
        j["L"] = nullptr;
    }
    json nodes = json::array();
    for (long k = 0; k < net.size(); ++k) {
        json node;
        node["w"] = std::vector<double>(net.weights().row(k).begin(), net.weights().row(k).end());
        node["b"] = net.biases()[k];
        node["v"] = net.coeffs()[k];
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    return j.dump(2);
}

RVFLNetwork network_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format") != "rvfl-network" || j.at("version") != 1)
        throw std::invalid_argument("network_from_json: unsupported format or version");
    const int dim = j.at("dim").get<int>();
    const auto& nodes = j.at("nodes");
    const auto n = static_cast<long>(nodes.size());
    Eigen::MatrixXd w(n, dim);
    Eigen::VectorXd b(n), v(n);
    for (long k = 0; k < n; ++k) {
        const auto& node = nodes[static_cast<std::size_t>(k)];
        const auto wk = node.at("w").get<std::vector<double>>();
        if (static_cast<int>(wk.size()) != dim)
            throw std::invalid_argument("network_from_json: node weight dimension mismatch");
        for (int i = 0; i < dim; ++i) w(k, i) = wk[static_cast<std::size_t>(i)];
        b[k] = node.at("b").get<double>();
        v[k] = node.at("v").get<double>();
    }
    RVFLNetwork net(std::move(w), std::move(b), std::move(v),
                    activation_by_stored_name(j.at("activation").get<std::string>()));
    if (!j.at("alpha").is_null())
        net.build_params =
            BuildParams{j.at("alpha").get<double>(), j.at("omega").get<double>(),
                        j.at("L").get<int>()};
    return net;
}

void save_network(const RVFLNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_network: cannot open " + path);
    out << network_to_json(net) << '\n';
}

RVFLNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_network: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return network_from_json(ss.str());
}

} // namespace rvfl
