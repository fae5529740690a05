#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ttmcmc/chain.hpp"
#include "ttmcmc/mixture.hpp"

namespace ttmcmc {

struct DatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

bool is_builtin_dataset(const std::string& name);

// TTMCMC_DATA_DIR if set, otherwise the data directory of the source tree.
std::filesystem::path data_dir();

// Builtin name (enzyme, acidity, galaxy) or a file path. One number per line; '#' lines and blank lines skipped.
std::vector<double> load_dataset(const std::string& source);
std::vector<double> parse_dataset(const std::string& text, const std::string& origin = "<text>");

struct DiagnosticOptions {
    std::size_t parts = 2;
    double target_prob = 0.95;
    double zeta = 1e-5;
    std::size_t grid_size = 512;
    std::size_t hpd_member_cap = 50;
    std::size_t acf_max_lag = 50;
    std::size_t stride = 1;  // summarize every stride-th stored sample
};

struct RunConfig {
    std::string dataset = "galaxy";
    MixtureHyperparams hyper = MixtureHyperparams::galaxy();
    double scale_nu = 1.0;
    double scale_tau = 1.0;
    double scale_omega = 1.0;
    ChainConfig chain;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t stream = 0;
    MoveTriple interior{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    DiagnosticOptions diag;
    std::vector<double> trials;

    void validate() const;

    // Applies one key=value setting. `dataset` also resets hyperparameters to that dataset's defaults.
    void set(const std::string& key, const std::string& value);
    // Settings applied with `dataset` first, then in order.
    void apply(const std::vector<std::pair<std::string, std::string>>& settings);

    // Every resolved setting, one key=value per line; reading it back reproduces this config.
    std::string to_text() const;
};

std::vector<std::pair<std::string, std::string>> parse_settings(const std::string& text);
RunConfig read_config(const std::filesystem::path& path);

// TTMCMC_OUTPUT_DIR if set, otherwise ./ttmcmc_out.
std::filesystem::path default_output_dir();

// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

struct SampleRecord {
    std::size_t iteration = 0;
    MixtureParams params;
};

struct RunArtifacts {
    std::filesystem::path dir;
    nlohmann::ordered_json summary;
    double wall_clock_seconds = 0.0;
};

// Summary of stored samples; deterministic in its inputs.
nlohmann::ordered_json summarize(const std::vector<SampleRecord>& samples, const RunStats& stats,
                                 const RunConfig& config, const std::vector<double>& data,
                                 const std::filesystem::path& grid_csv = {});

// Runs the chain and writes trace.csv, samples.jsonl, summary.json, density_grid.csv, config.txt, run_info.json.
RunArtifacts run(const RunConfig& config, const std::filesystem::path& out_dir);

std::vector<SampleRecord> read_samples(const std::filesystem::path& path);
RunStats read_trace_stats(const std::filesystem::path& path);

// Recomputes summary.json and density_grid.csv from the files `run` left in dir.
nlohmann::ordered_json summarize_dir(const std::filesystem::path& dir);

// Convergence diagnostic only, from samples.jsonl and config.txt in dir.
nlohmann::ordered_json diagnose_dir(const std::filesystem::path& dir);

struct SweepRow {
    double scale = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double acceptance = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t selected = 0;
};

// One run per trial scale (all three scales set to it) in out_dir/trial_<i>, stream i.
// Selects the trial with the smallest max(eta1, eta2); writes sweep.csv.
SweepResult scale_sweep(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace ttmcmc
