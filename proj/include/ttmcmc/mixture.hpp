#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ttmcmc/parallel.hpp"
#include "ttmcmc/rng.hpp"
#include "ttmcmc/state.hpp"

namespace ttmcmc {

// Normal mixture with k components: means nu, log-precisions tau*, weight logits omega.
struct MixtureParams {
    std::vector<double> nu;
    std::vector<double> tau_star;
    std::vector<double> omega;

    std::size_t k() const { return nu.size(); }
    void validate() const;

    ParamState to_state() const { return ParamState({nu, tau_star, omega}); }
    static MixtureParams from_state(const ParamState& x);
    bool operator==(const MixtureParams&) const = default;
};

struct OmegaPrior {
    enum class Kind { normal, log_gamma };
    Kind kind = Kind::normal;
    double mean = 0.0;
    double variance = 0.25;
    double alpha = 1.0;  // log-gamma shape; induces Dirichlet(alpha, ..., alpha) on the weights
};

struct KPrior {
    enum class Kind { uniform, truncated_poisson, discretized_normal };
    Kind kind = Kind::uniform;
    double lambda = 1.0;
    double mean = 15.0;
    double variance = 50.0;
};

struct MixtureHyperparams {
    double s = 4.0;
    double S = 2.0;  // tau ~ Gamma(shape s/2, rate S/2)
    double nu0 = 0.0;
    double psi = 1.0;  // nu | tau ~ N(nu0, psi / tau)
    OmegaPrior omega;
    KPrior k_prior;
    std::size_t k_max = 30;

    void validate() const;

    static MixtureHyperparams enzyme();
    static MixtureHyperparams acidity();
    static MixtureHyperparams galaxy();
    static MixtureHyperparams for_dataset(const std::string& name);
};

std::vector<double> weights_from_omega(std::span<const double> omega);

double log_likelihood(std::span<const double> data, const MixtureParams& params,
                      kernels::Exec exec = kernels::Exec::parallel);

// Component priors summed over j plus the log k-prior.
double log_prior(const MixtureParams& params, const MixtureHyperparams& hyper);

// -inf outside {1, ..., k_max}.
double log_k_prior(std::size_t k, const MixtureHyperparams& hyper);

std::size_t sample_k_prior(const MixtureHyperparams& hyper, Rng& rng);

class MixtureTarget : public TargetModel {
public:
    MixtureTarget(std::vector<double> data, MixtureHyperparams hyper);

    double log_density(const ParamState& x) const override;
    std::size_t num_blocks() const override { return 3; }
    std::size_t k_max() const override { return hyper_.k_max; }

    const std::vector<double>& data() const { return data_; }
    const MixtureHyperparams& hyper() const { return hyper_; }

private:
    std::vector<double> data_;
    MixtureHyperparams hyper_;
    std::vector<double> log_k_pmf_;
};

MixtureTarget as_target(std::vector<double> data, MixtureHyperparams hyper);

// k from the k-prior, nu at data quantiles, tau* = -log var(data), omega = 0.
MixtureParams initial_params(std::span<const double> data, const MixtureHyperparams& hyper, Rng& rng);

}  // namespace ttmcmc
