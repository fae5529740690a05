#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ttmcmc/io.hpp"

namespace {

const std::vector<std::string> kKeys = {
    "dataset",     "sampler",     "s",           "S",          "nu0",        "psi",       "omega_prior",
    "omega_mean",  "omega_variance", "omega_alpha", "k_prior", "k_lambda",   "k_mean",    "k_variance",
    "k_max",       "scale",       "scale_nu",    "scale_tau",  "scale_omega", "iterations", "burn_in",
    "thin",        "seed",        "stream",      "w_birth",     "w_death",    "w_no_change", "parts",     "target_prob",
    "zeta",        "grid_size",   "hpd_member_cap", "acf_max_lag", "summary_stride", "trials"};

std::string flag_name(const std::string& key) {
    std::string f = key;
    for (char& c : f)
        if (c == '_') c = '-';
    return "--" + f;
}

struct RunOptions {
    std::string config_file;
    std::string out_dir;
    std::map<std::string, std::string> values;
};

void add_run_options(CLI::App* app, RunOptions& o) {
    app->add_option("--config", o.config_file, "key=value config file; flags override it")->check(CLI::ExistingFile);
    app->add_option("--out", o.out_dir, "output directory (default $TTMCMC_OUTPUT_DIR or ./ttmcmc_out)");
    for (const auto& k : kKeys) app->add_option(flag_name(k), o.values[k], k);
}

ttmcmc::RunConfig resolve(const RunOptions& o, const CLI::App* app) {
    std::vector<std::pair<std::string, std::string>> settings;
    if (!o.config_file.empty()) {
        std::ifstream f(o.config_file);
        std::stringstream ss;
        ss << f.rdbuf();
        settings = ttmcmc::parse_settings(ss.str());
    }
    for (const auto& k : kKeys)
        if (app->count(flag_name(k)) > 0) settings.emplace_back(k, o.values.at(k));
    ttmcmc::RunConfig c;
    c.apply(settings);
    return c;
}

std::filesystem::path out_dir(const RunOptions& o) {
    return o.out_dir.empty() ? ttmcmc::default_output_dir() : std::filesystem::path(o.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trans-dimensional TMCMC for normal mixtures"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "run one chain and write its artifacts");
    add_run_options(run_cmd, run_opts);

    RunOptions sweep_opts;
    auto* sweep_cmd = app.add_subcommand("sweep", "one run per trial scale; pick the smallest max(eta1, eta2)");
    add_run_options(sweep_cmd, sweep_opts);

    std::string sum_dir;
    auto* sum_cmd = app.add_subcommand("summarize", "recompute summary.json from an existing run directory");
    sum_cmd->add_option("dir", sum_dir, "run directory")->required()->check(CLI::ExistingDirectory);

    std::string diag_dir;
    auto* diag_cmd = app.add_subcommand("diagnose", "print the eta1/eta2 convergence diagnostic of a run directory");
    diag_cmd->add_option("dir", diag_dir, "run directory")->required()->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const auto cfg = resolve(run_opts, run_cmd);
            const auto art = ttmcmc::run(cfg, out_dir(run_opts));
            const auto& acc = art.summary["acceptance"]["overall"];
            std::printf("wrote %s (acceptance %.6f, %.1f s)\n", art.dir.string().c_str(), acc["rate"].get<double>(),
                        art.wall_clock_seconds);
        } else if (*sweep_cmd) {
            const auto cfg = resolve(sweep_opts, sweep_cmd);
            const auto res = ttmcmc::scale_sweep(cfg, out_dir(sweep_opts));
            std::printf("%-10s %-14s %-14s %-10s\n", "scale", "eta1", "eta2", "acceptance");
            for (std::size_t i = 0; i < res.rows.size(); ++i) {
                const auto& r = res.rows[i];
                std::printf("%-10g %-14.6g %-14.6g %-10.6f%s\n", r.scale, r.eta1, r.eta2, r.acceptance,
                            i == res.selected ? "  <- selected" : "");
            }
        } else if (*sum_cmd) {
            ttmcmc::summarize_dir(sum_dir);
            std::printf("wrote %s\n", (std::filesystem::path(sum_dir) / "summary.json").string().c_str());
        } else if (*diag_cmd) {
            std::cout << ttmcmc::diagnose_dir(diag_dir).dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
