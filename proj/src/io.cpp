#include "ttmcmc/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ttmcmc/summary.hpp"

#ifndef TTMCMC_DATA_DIR_DEFAULT
#define TTMCMC_DATA_DIR_DEFAULT "data"
#endif

namespace ttmcmc {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || !std::isfinite(v)) throw ConfigError(what + ": not a finite number: '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError(what + ": not a non-negative integer: '" + s + "'");
    return v;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
    return static_cast<std::size_t>(parse_uint(s, what));
}

std::string omega_kind_name(OmegaPrior::Kind k) {
    return k == OmegaPrior::Kind::normal ? "normal" : "log_gamma";
}

std::string k_prior_name(KPrior::Kind k) {
    switch (k) {
    case KPrior::Kind::uniform: return "uniform";
    case KPrior::Kind::truncated_poisson: return "truncated_poisson";
    case KPrior::Kind::discretized_normal: return "discretized_normal";
    }
    return "?";
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::size_t expected_size(const std::string& name) {
    if (name == "enzyme") return 245;
    if (name == "acidity") return 155;
    return 82;
}

json counts_json(const MoveCounts& c) {
    return json{{"proposed", c.proposed}, {"accepted", c.accepted}, {"rate", c.rate()}};
}

MoveType parse_move(const std::string& s) {
    if (s == "birth") return MoveType::birth;
    if (s == "death") return MoveType::death;
    if (s == "no_change") return MoveType::no_change;
    throw std::runtime_error("unknown move type '" + s + "'");
}

void check_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

}  // namespace

bool is_builtin_dataset(const std::string& name) {
    return name == "enzyme" || name == "acidity" || name == "galaxy";
}

fs::path data_dir() {
    if (const char* e = std::getenv("TTMCMC_DATA_DIR"); e != nullptr && *e != '\0') return fs::path(e);
    return fs::path(TTMCMC_DATA_DIR_DEFAULT);
}

std::vector<double> parse_dataset(const std::string& text, const std::string& origin) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const char* first = t.data();
        if (t.front() == '+') ++first;
        double v = 0.0;
        auto [p, ec] = std::from_chars(first, t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
            throw DatasetError(origin + ":" + std::to_string(no) + ": cannot parse '" + t + "' as a number");
        out.push_back(v);
    }
    if (out.empty()) throw DatasetError(origin + ": no observations");
    return out;
}

std::vector<double> load_dataset(const std::string& source) {
    if (is_builtin_dataset(source)) {
        const fs::path p = data_dir() / (source + ".txt");
        if (!fs::exists(p))
            throw DatasetError("builtin dataset '" + source + "' not found at " + p.string() +
                               " (see data/PROVENANCE.md)");
        auto v = parse_dataset(read_file(p), p.string());
        if (v.size() != expected_size(source))
            throw DatasetError(p.string() + ": expected " + std::to_string(expected_size(source)) + " observations, got " +
                               std::to_string(v.size()));
        return v;
    }
    if (!fs::exists(source)) throw DatasetError("dataset file not found: " + source);
    return parse_dataset(read_file(source), source);
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

void RunConfig::validate() const {
    hyper.validate();
    chain.validate();
    for (double a : {scale_nu, scale_tau, scale_omega})
        if (!(a > 0.0)) throw ConfigError("scales must be positive");
    if (!seed_set) throw ConfigError("a seed is required");
    MoveWeights::with_interior(hyper.k_max, interior);
    if (diag.parts < 2) throw ConfigError("parts must be >= 2");
    if (!(diag.target_prob > 0.0 && diag.target_prob <= 1.0)) throw ConfigError("target_prob must lie in (0, 1]");
    if (!(diag.zeta > 0.0)) throw ConfigError("zeta must be positive");
    if (diag.grid_size < 2) throw ConfigError("grid_size must be >= 2");
    if (diag.stride < 1) throw ConfigError("summary_stride must be >= 1");
    for (double t : trials)
        if (!(t > 0.0)) throw ConfigError("trial scales must be positive");
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const std::string& v = value;
    if (key == "dataset") {
        dataset = v;
        if (is_builtin_dataset(v)) hyper = MixtureHyperparams::for_dataset(v);
    } else if (key == "sampler") {
        try {
            chain.sampler = parse_sampler(v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "s") hyper.s = parse_double(v, key);
    else if (key == "S") hyper.S = parse_double(v, key);
    else if (key == "nu0") hyper.nu0 = parse_double(v, key);
    else if (key == "psi") hyper.psi = parse_double(v, key);
    else if (key == "omega_prior") {
        if (v == "normal") hyper.omega.kind = OmegaPrior::Kind::normal;
        else if (v == "log_gamma") hyper.omega.kind = OmegaPrior::Kind::log_gamma;
        else throw ConfigError("omega_prior must be normal or log_gamma");
    } else if (key == "omega_mean") hyper.omega.mean = parse_double(v, key);
    else if (key == "omega_variance") hyper.omega.variance = parse_double(v, key);
    else if (key == "omega_alpha") hyper.omega.alpha = parse_double(v, key);
    else if (key == "k_prior") {
        if (v == "uniform") hyper.k_prior.kind = KPrior::Kind::uniform;
        else if (v == "truncated_poisson") hyper.k_prior.kind = KPrior::Kind::truncated_poisson;
        else if (v == "discretized_normal") hyper.k_prior.kind = KPrior::Kind::discretized_normal;
        else throw ConfigError("k_prior must be uniform, truncated_poisson or discretized_normal");
    } else if (key == "k_lambda") hyper.k_prior.lambda = parse_double(v, key);
    else if (key == "k_mean") hyper.k_prior.mean = parse_double(v, key);
    else if (key == "k_variance") hyper.k_prior.variance = parse_double(v, key);
    else if (key == "k_max") hyper.k_max = parse_size(v, key);
    else if (key == "scale") scale_nu = scale_tau = scale_omega = parse_double(v, key);
    else if (key == "scale_nu") scale_nu = parse_double(v, key);
    else if (key == "scale_tau") scale_tau = parse_double(v, key);
    else if (key == "scale_omega") scale_omega = parse_double(v, key);
    else if (key == "iterations") chain.iterations = parse_size(v, key);
    else if (key == "burn_in") chain.burn_in = parse_size(v, key);
    else if (key == "thin") chain.thin = parse_size(v, key);
    else if (key == "seed") {
        seed = parse_uint(v, key);
        seed_set = true;
    } else if (key == "stream") stream = parse_uint(v, key);
    else if (key == "w_birth") interior.birth = parse_double(v, key);
    else if (key == "w_death") interior.death = parse_double(v, key);
    else if (key == "w_no_change") interior.no_change = parse_double(v, key);
    else if (key == "parts") diag.parts = parse_size(v, key);
    else if (key == "target_prob") diag.target_prob = parse_double(v, key);
    else if (key == "zeta") diag.zeta = parse_double(v, key);
    else if (key == "grid_size") diag.grid_size = parse_size(v, key);
    else if (key == "hpd_member_cap") diag.hpd_member_cap = parse_size(v, key);
    else if (key == "acf_max_lag") diag.acf_max_lag = parse_size(v, key);
    else if (key == "summary_stride") diag.stride = parse_size(v, key);
    else if (key == "trials") {
        trials.clear();
        std::istringstream in(v);
        std::string item;
        while (std::getline(in, item, ','))
            if (auto t = trim(item); !t.empty()) trials.push_back(parse_double(t, key));
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

void RunConfig::apply(const std::vector<std::pair<std::string, std::string>>& settings) {
    for (const auto& [k, v] : settings)
        if (k == "dataset") set(k, v);
    for (const auto& [k, v] : settings)
        if (k != "dataset") set(k, v);
}

std::string RunConfig::to_text() const {
    std::ostringstream o;
    auto put = [&](const char* k, const std::string& v) { o << k << '=' << v << '\n'; };
    auto num = [&](const char* k, double v) { put(k, format_double(v)); };
    put("dataset", dataset);
    put("sampler", to_string(chain.sampler));
    num("s", hyper.s);
    num("S", hyper.S);
    num("nu0", hyper.nu0);
    num("psi", hyper.psi);
    put("omega_prior", omega_kind_name(hyper.omega.kind));
    num("omega_mean", hyper.omega.mean);
    num("omega_variance", hyper.omega.variance);
    num("omega_alpha", hyper.omega.alpha);
    put("k_prior", k_prior_name(hyper.k_prior.kind));
    num("k_lambda", hyper.k_prior.lambda);
    num("k_mean", hyper.k_prior.mean);
    num("k_variance", hyper.k_prior.variance);
    put("k_max", std::to_string(hyper.k_max));
    num("scale_nu", scale_nu);
    num("scale_tau", scale_tau);
    num("scale_omega", scale_omega);
    put("iterations", std::to_string(chain.iterations));
    put("burn_in", std::to_string(chain.burn_in));
    put("thin", std::to_string(chain.thin));
    if (seed_set) put("seed", std::to_string(seed));
    put("stream", std::to_string(stream));
    num("w_birth", interior.birth);
    num("w_death", interior.death);
    num("w_no_change", interior.no_change);
    put("parts", std::to_string(diag.parts));
    num("target_prob", diag.target_prob);
    num("zeta", diag.zeta);
    put("grid_size", std::to_string(diag.grid_size));
    put("hpd_member_cap", std::to_string(diag.hpd_member_cap));
    put("acf_max_lag", std::to_string(diag.acf_max_lag));
    put("summary_stride", std::to_string(diag.stride));
    if (!trials.empty()) {
        std::string t;
        for (std::size_t i = 0; i < trials.size(); ++i) t += (i ? "," : "") + format_double(trials[i]);
        put("trials", t);
    }
    return o.str();
}

std::vector<std::pair<std::string, std::string>> parse_settings(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected key=value");
        out.emplace_back(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
    }
    return out;
}

RunConfig read_config(const fs::path& path) {
    RunConfig c;
    c.apply(parse_settings(read_file(path)));
    return c;
}

fs::path default_output_dir() {
    if (const char* e = std::getenv("TTMCMC_OUTPUT_DIR"); e != nullptr && *e != '\0') return fs::path(e);
    return fs::path("ttmcmc_out");
}

json summarize(const std::vector<SampleRecord>& all, const RunStats& stats, const RunConfig& config,
               const std::vector<double>& data, const fs::path& grid_csv) {
    std::vector<SampleRecord> strided;
    if (config.diag.stride > 1)
        for (std::size_t i = 0; i < all.size(); i += config.diag.stride) strided.push_back(all[i]);
    const auto& samples = config.diag.stride > 1 ? strided : all;
    const std::size_t n = samples.size();
    if (n < 2) throw DomainError("summary needs at least 2 stored samples");
    const auto& dg = config.diag;
    json s;
    s["dataset"] = config.dataset;
    s["sampler"] = to_string(config.chain.sampler);
    s["n_samples"] = all.size();
    s["summary_stride"] = config.diag.stride;

    json acc;
    acc["birth"] = counts_json(stats.of(MoveType::birth));
    acc["death"] = counts_json(stats.of(MoveType::death));
    acc["no_change"] = counts_json(stats.of(MoveType::no_change));
    acc["overall"] = counts_json(stats.overall);
    s["acceptance"] = acc;

    std::vector<std::size_t> kcount(config.hyper.k_max + 1, 0);
    std::vector<double> kseries(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = samples[i].params.k();
        if (k >= kcount.size()) kcount.resize(k + 1, 0);
        ++kcount[k];
        kseries[i] = static_cast<double>(k);
    }
    json pmf = json::array();
    for (std::size_t k = 1; k < kcount.size(); ++k)
        pmf.push_back({{"k", k}, {"probability", static_cast<double>(kcount[k]) / static_cast<double>(n)}});
    s["k_pmf"] = pmf;

    const DensityGrid grid = DensityGrid::for_data(data, dg.grid_size);
    std::vector<DensitySample> dens;
    dens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        dens.push_back(evaluate_on_grid(samples[i].params, grid));
        dens.back().source = i;
    }
    const DistanceMatrix d = DistanceMatrix::compute(dens);

    const double eps = default_epsilon(d);
    const std::size_t c = central_density(d, eps);
    const CredibleRegion cr = credible_region(d, c, dg.target_prob, dg.zeta);
    s["central_density"] = {{"index", c},
                            {"iteration", samples[c].iteration},
                            {"k", samples[c].params.k()},
                            {"epsilon", eps}};
    s["credible_region"] = {{"radius", cr.radius}, {"probability", cr.probability}, {"size", cr.members.size()}};

    const auto modes = find_local_modes(d, std::max(cr.radius, dg.zeta));
    const auto hpd = hpd_region(d, modes, dg.target_prob, dg.zeta);
    json balls = json::array();
    std::set<std::size_t> hpd_members;
    for (const auto& b : hpd) {
        balls.push_back({{"center", b.center},
                         {"iteration", samples[b.center].iteration},
                         {"k", samples[b.center].params.k()},
                         {"radius", b.radius},
                         {"probability", b.probability},
                         {"size", b.members.size()}});
        hpd_members.insert(b.members.begin(), b.members.end());
    }
    s["hpd"] = {{"balls", balls}, {"union_probability", union_probability(d, hpd)}};

    if (n / dg.parts >= 2) {
        const auto rep = convergence_diagnostic(d, dg.parts, dg.target_prob, dg.zeta);
        s["convergence"] = {{"parts", dg.parts},       {"part_size", rep.part_size}, {"centers", rep.centers},
                            {"epsilons", rep.epsilons}, {"radii", rep.radii},         {"eta1", rep.eta1},
                            {"eta2", rep.eta2}};
    } else {
        s["convergence"] = nullptr;
    }

    const std::size_t lag = std::min(dg.acf_max_lag, n - 2);
    const auto ac = k_autocorrelation(kseries, lag);
    s["k_autocorrelation"] = {{"degenerate", ac.degenerate}, {"max_lag", lag}, {"acf", ac.acf}};

    if (!grid_csv.empty()) {
        std::vector<std::size_t> cols;
        for (auto m : hpd_members) {
            if (cols.size() >= dg.hpd_member_cap) break;
            cols.push_back(m);
        }
        auto f = open_out(grid_csv);
        f << "x,modal";
        for (auto m : cols) f << ",member_" << m;
        f << '\n';
        for (std::size_t g = 0; g < grid.size(); ++g) {
            f << format_double(grid.points()[g]) << ',' << format_double(dens[c].values[g]);
            for (auto m : cols) f << ',' << format_double(dens[m].values[g]);
            f << '\n';
        }
        if (!f) throw std::runtime_error("failed writing " + grid_csv.string());
    }
    return s;
}

namespace {

Kernel make_kernel(const RunConfig& config, const TargetModel& target) {
    Kernel k;
    k.target = &target;
    k.families = {TransformFamily::additive(config.scale_nu), TransformFamily::additive(config.scale_tau),
                  TransformFamily::additive(config.scale_omega)};
    k.weights = MoveWeights::with_interior(config.hyper.k_max, config.interior);
    return k;
}

void write_sample(std::ostream& f, std::size_t iteration, const ParamState& x) {
    json j;
    j["iter"] = iteration;
    j["k"] = x.dim();
    j["nu"] = x.blocks[0];
    j["tau_star"] = x.blocks[1];
    j["omega"] = x.blocks[2];
    f << j.dump() << '\n';
}

}  // namespace

RunArtifacts run(const RunConfig& config, const fs::path& out_dir) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> data = load_dataset(config.dataset);
    check_writable(out_dir);

    const MixtureTarget target(data, config.hyper);
    const Kernel kernel = make_kernel(config, target);
    Rng rng(config.seed, config.stream);
    const MixtureParams init = initial_params(data, config.hyper, rng);

    auto cfg_file = open_out(out_dir / "config.txt");
    cfg_file << config.to_text();
    cfg_file.close();

    auto trace = open_out(out_dir / "trace.csv");
    trace << "iteration,k,move_type,accepted,log_posterior\n";
    std::string line;
    auto sink = [&](const TraceRow& r) {
        line.clear();
        line += std::to_string(r.iteration);
        line += ',';
        line += std::to_string(r.k);
        line += ',';
        line += to_string(r.move);
        line += r.accepted ? ",1," : ",0,";
        line += format_double(r.log_target);
        line += '\n';
        trace << line;
    };
    ChainOutput out = run_chain(make_point(init.to_state(), target), kernel, config.chain, rng, sink);
    trace.close();
    if (!trace) throw std::runtime_error("failed writing trace.csv");

    auto sf = open_out(out_dir / "samples.jsonl");
    std::vector<SampleRecord> records;
    records.reserve(out.samples.size());
    for (const auto& s : out.samples) {
        write_sample(sf, s.iteration, s.x);
        records.push_back({s.iteration, MixtureParams::from_state(s.x)});
    }
    sf.close();
    if (!sf) throw std::runtime_error("failed writing samples.jsonl");

    RunArtifacts art;
    art.dir = out_dir;
    art.summary = summarize(records, out.stats, config, data, out_dir / "density_grid.csv");
    auto sum = open_out(out_dir / "summary.json");
    sum << art.summary.dump(2) << '\n';
    sum.close();

    art.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json info{{"wall_clock_seconds", art.wall_clock_seconds},
              {"seed", config.seed},
              {"stream", config.stream},
              {"stored_samples", records.size()}};
    auto inf = open_out(out_dir / "run_info.json");
    inf << info.dump(2) << '\n';
    return art;
}

std::vector<SampleRecord> read_samples(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path.string());
    std::vector<SampleRecord> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(f, line)) {
        ++no;
        if (trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            SampleRecord r;
            r.iteration = j.at("iter").get<std::size_t>();
            r.params.nu = j.at("nu").get<std::vector<double>>();
            r.params.tau_star = j.at("tau_star").get<std::vector<double>>();
            r.params.omega = j.at("omega").get<std::vector<double>>();
            r.params.validate();
            if (j.at("k").get<std::size_t>() != r.params.k()) throw std::runtime_error("k does not match block length");
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(no) + ": " + e.what());
        }
    }
    return out;
}

RunStats read_trace_stats(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(f, line) || trim(line) != "iteration,k,move_type,accepted,log_posterior")
        throw std::runtime_error(path.string() + ": unexpected header");
    RunStats st;
    std::size_t no = 1;
    while (std::getline(f, line)) {
        ++no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::istringstream in(line);
        std::string cell;
        while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
        if (cells.size() != 5 || (cells[3] != "0" && cells[3] != "1"))
            throw std::runtime_error(path.string() + ":" + std::to_string(no) + ": malformed row");
        st.record(parse_move(cells[2]), cells[3] == "1");
    }
    return st;
}

json summarize_dir(const fs::path& dir) {
    const RunConfig config = read_config(dir / "config.txt");
    const auto samples = read_samples(dir / "samples.jsonl");
    const auto stats = read_trace_stats(dir / "trace.csv");
    const auto data = load_dataset(config.dataset);
    json s = summarize(samples, stats, config, data, dir / "density_grid.csv");
    auto f = open_out(dir / "summary.json");
    f << s.dump(2) << '\n';
    return s;
}

json diagnose_dir(const fs::path& dir) {
    const RunConfig config = read_config(dir / "config.txt");
    const auto samples = read_samples(dir / "samples.jsonl");
    const auto data = load_dataset(config.dataset);
    const DensityGrid grid = DensityGrid::for_data(data, config.diag.grid_size);
    std::vector<DensitySample> dens;
    dens.reserve(samples.size());
    for (const auto& r : samples) dens.push_back(evaluate_on_grid(r.params, grid));
    const auto d = DistanceMatrix::compute(dens);
    const auto rep = convergence_diagnostic(d, config.diag.parts, config.diag.target_prob, config.diag.zeta);
    return json{{"parts", config.diag.parts}, {"part_size", rep.part_size}, {"centers", rep.centers},
                {"epsilons", rep.epsilons},   {"radii", rep.radii},         {"eta1", rep.eta1},
                {"eta2", rep.eta2}};
}

SweepResult scale_sweep(const RunConfig& config, const fs::path& out_dir) {
    if (config.trials.empty()) throw ConfigError("sweep needs at least one trial scale");
    check_writable(out_dir);
    SweepResult res;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < config.trials.size(); ++i) {
        RunConfig c = config;
        c.scale_nu = c.scale_tau = c.scale_omega = config.trials[i];
        c.stream = i;
        c.trials.clear();
        const auto art = run(c, out_dir / ("trial_" + std::to_string(i)));
        SweepRow row;
        row.scale = config.trials[i];
        const auto& conv = art.summary["convergence"];
        row.eta1 = conv.is_null() ? std::numeric_limits<double>::infinity() : conv["eta1"].get<double>();
        row.eta2 = conv.is_null() ? std::numeric_limits<double>::infinity() : conv["eta2"].get<double>();
        row.acceptance = art.summary["acceptance"]["overall"]["rate"].get<double>();
        const double score = std::max(row.eta1, row.eta2);
        if (i == 0 || score < best) {
            best = score;
            res.selected = i;
        }
        res.rows.push_back(row);
    }
    auto f = open_out(out_dir / "sweep.csv");
    f << "trial,scale,eta1,eta2,acceptance,selected\n";
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& r = res.rows[i];
        f << i << ',' << format_double(r.scale) << ',' << format_double(r.eta1) << ',' << format_double(r.eta2) << ','
          << format_double(r.acceptance) << ',' << (i == res.selected ? 1 : 0) << '\n';
    }
    return res;
}

}  // namespace ttmcmc
