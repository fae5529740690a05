#include "ttmcmc/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ttmcmc {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double log_gamma_density(double x, double shape, double rate) {
    return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double component_log_prior(double nu, double tau_star, double omega, const MixtureHyperparams& h) {
    const double tau = std::exp(tau_star);
    double lp = log_gamma_density(tau, h.s / 2.0, h.S / 2.0) + tau_star;
    const double var_nu = h.psi / tau;
    const double d = nu - h.nu0;
    lp += -0.5 * (kLog2Pi + std::log(var_nu)) - 0.5 * d * d / var_nu;
    if (h.omega.kind == OmegaPrior::Kind::normal) {
        const double e = omega - h.omega.mean;
        lp += -0.5 * (kLog2Pi + std::log(h.omega.variance)) - 0.5 * e * e / h.omega.variance;
    } else {
        lp += log_gamma_density(std::exp(omega), h.omega.alpha, 1.0) + omega;
    }
    return lp;
}

// Unnormalized log pmf of the k-prior.
double k_prior_kernel(std::size_t k, const KPrior& p) {
    const double kk = static_cast<double>(k);
    switch (p.kind) {
    case KPrior::Kind::uniform: return 0.0;
    case KPrior::Kind::truncated_poisson: return kk * std::log(p.lambda) - p.lambda - std::lgamma(kk + 1.0);
    case KPrior::Kind::discretized_normal: return -0.5 * (kk - p.mean) * (kk - p.mean) / p.variance;
    }
    return 0.0;
}

double k_prior_log_norm(const MixtureHyperparams& h) {
    double m = neg_inf;
    for (std::size_t k = 1; k <= h.k_max; ++k) m = std::max(m, k_prior_kernel(k, h.k_prior));
    double s = 0.0;
    for (std::size_t k = 1; k <= h.k_max; ++k) s += std::exp(k_prior_kernel(k, h.k_prior) - m);
    return m + std::log(s);
}

}  // namespace

void MixtureParams::validate() const {
    if (nu.empty() || tau_star.size() != nu.size() || omega.size() != nu.size())
        throw BlockMismatch("mixture blocks must share a length k >= 1");
    for (const auto* b : {&nu, &tau_star, &omega})
        for (double v : *b)
            if (!std::isfinite(v)) throw std::invalid_argument("mixture parameters must be finite");
}

MixtureParams MixtureParams::from_state(const ParamState& x) {
    if (x.num_blocks() != 3) throw BlockMismatch("mixture state needs 3 blocks (nu, tau*, omega)");
    x.check_blocks();
    return {x.blocks[0], x.blocks[1], x.blocks[2]};
}

void MixtureHyperparams::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    pos(s, "s");
    pos(S, "S");
    pos(psi, "psi");
    if (!std::isfinite(nu0)) throw std::invalid_argument("nu0 must be finite");
    if (omega.kind == OmegaPrior::Kind::normal) pos(omega.variance, "omega variance");
    else pos(omega.alpha, "omega alpha");
    if (k_prior.kind == KPrior::Kind::truncated_poisson) pos(k_prior.lambda, "k-prior lambda");
    if (k_prior.kind == KPrior::Kind::discretized_normal) pos(k_prior.variance, "k-prior variance");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
}

MixtureHyperparams MixtureHyperparams::enzyme() {
    MixtureHyperparams h;
    h.s = 4.0;
    h.S = 0.3278689;
    h.nu0 = 1.45;
    h.psi = 33.3;
    h.omega = {OmegaPrior::Kind::normal, 0.0, 0.25, 1.0};
    h.k_prior = {KPrior::Kind::uniform, 1.0, 15.0, 50.0};
    return h;
}

MixtureHyperparams MixtureHyperparams::acidity() {
    MixtureHyperparams h = enzyme();
    h.S = 0.6980803;
    h.nu0 = 5.02;
    return h;
}

MixtureHyperparams MixtureHyperparams::galaxy() {
    MixtureHyperparams h;
    h.s = 4.0;
    h.S = 2.0;
    h.nu0 = 20.0;
    h.psi = 0.0005;
    h.omega = {OmegaPrior::Kind::log_gamma, 0.0, 0.25, 5.0};
    h.k_prior = {KPrior::Kind::discretized_normal, 1.0, 15.0, 50.0};
    return h;
}

MixtureHyperparams MixtureHyperparams::for_dataset(const std::string& name) {
    if (name == "enzyme") return enzyme();
    if (name == "acidity") return acidity();
    if (name == "galaxy") return galaxy();
    throw std::invalid_argument("no default hyperparameters for dataset '" + name + "'");
}

std::vector<double> weights_from_omega(std::span<const double> omega) {
    if (omega.empty()) return {};
    const double m = *std::max_element(omega.begin(), omega.end());
    std::vector<double> w(omega.size());
    double s = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j) s += (w[j] = std::exp(omega[j] - m));
    for (double& v : w) v /= s;
    return w;
}

double log_likelihood(std::span<const double> data, const MixtureParams& params, kernels::Exec exec) {
    if (data.empty()) throw std::domain_error("log likelihood of empty data");
    return kernels::log_likelihood(data, kernels::make_components(params.nu, params.tau_star, params.omega), exec);
}

double log_k_prior(std::size_t k, const MixtureHyperparams& hyper) {
    if (k < 1 || k > hyper.k_max) return neg_inf;
    if (hyper.k_prior.kind == KPrior::Kind::uniform) return -std::log(static_cast<double>(hyper.k_max));
    return k_prior_kernel(k, hyper.k_prior) - k_prior_log_norm(hyper);
}

double log_prior(const MixtureParams& params, const MixtureHyperparams& hyper) {
    double lp = log_k_prior(params.k(), hyper);
    if (!std::isfinite(lp)) return lp;
    for (std::size_t j = 0; j < params.k(); ++j)
        lp += component_log_prior(params.nu[j], params.tau_star[j], params.omega[j], hyper);
    return lp;
}

std::size_t sample_k_prior(const MixtureHyperparams& hyper, Rng& rng) {
    std::vector<double> w(hyper.k_max);
    for (std::size_t k = 1; k <= hyper.k_max; ++k) w[k - 1] = std::exp(log_k_prior(k, hyper));
    std::discrete_distribution<std::size_t> d(w.begin(), w.end());
    return d(rng.engine()) + 1;
}

MixtureTarget::MixtureTarget(std::vector<double> data, MixtureHyperparams hyper)
    : data_(std::move(data)), hyper_(std::move(hyper)) {
    if (data_.empty()) throw std::domain_error("mixture target needs data");
    hyper_.validate();
    for (std::size_t k = 1; k <= hyper_.k_max; ++k) log_k_pmf_.push_back(log_k_prior(k, hyper_));
}

double MixtureTarget::log_density(const ParamState& x) const {
    if (x.num_blocks() != 3) throw BlockMismatch("mixture state needs 3 blocks (nu, tau*, omega)");
    const std::size_t k = x.dim();
    if (x.blocks[1].size() != k || x.blocks[2].size() != k) throw BlockMismatch("blocks of unequal dimension");
    if (k < 1 || k > hyper_.k_max) return neg_inf;
    double lp = log_k_pmf_[k - 1];
    for (std::size_t j = 0; j < k; ++j) lp += component_log_prior(x.blocks[0][j], x.blocks[1][j], x.blocks[2][j], hyper_);
    if (!std::isfinite(lp)) return lp;
    return kernels::log_likelihood(data_, kernels::make_components(x.blocks[0], x.blocks[1], x.blocks[2]),
                                   kernels::Exec::parallel) +
           lp;
}

MixtureTarget as_target(std::vector<double> data, MixtureHyperparams hyper) {
    return MixtureTarget(std::move(data), std::move(hyper));
}

MixtureParams initial_params(std::span<const double> data, const MixtureHyperparams& hyper, Rng& rng) {
    if (data.empty()) throw std::domain_error("initialization needs data");
    const std::size_t k = sample_k_prior(hyper, rng);
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    double mean = 0.0;
    for (double v : data) mean += v;
    mean /= static_cast<double>(data.size());
    double var = 0.0;
    for (double v : data) var += (v - mean) * (v - mean);
    var = data.size() > 1 ? var / static_cast<double>(data.size() - 1) : 1.0;
    if (!(var > 0.0)) var = 1.0;

    MixtureParams p;
    for (std::size_t j = 0; j < k; ++j) {
        const double h = (static_cast<double>(j) + 0.5) / static_cast<double>(k) * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        p.nu.push_back(sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]));
        p.tau_star.push_back(-std::log(var));
        p.omega.push_back(0.0);
    }
    return p;
}

}  // namespace ttmcmc
