// Command-line interface for the streaming memory benchmark.
//
// Subcommands:
//   run              run an experiment and write CSV outputs + manifest
//   validate-config  check a config file and print the resolved spec
//   oracle-dump      emit one trial's event log, codebook, and final memory
//                    snapshots for cross-implementation checks
//
// Precedence: preset defaults < config file < CLI flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srmu/bench.hpp"

namespace {

struct CommonOpts {
    std::string experiment = "custom";
    std::string config_file;
    int trials = -1;
    int steps = -1;
    int dim = -1;
    int workers = 0;
    std::string gamma_list;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = "out";
};

std::vector<double> parse_gamma_list(const std::string& text) {
    std::vector<double> gammas;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) gammas.push_back(std::stod(item));
    return gammas;
}

srmu::ExperimentSpec resolve_spec(const CommonOpts& opts) {
    srmu::ExperimentSpec spec = srmu::preset(opts.experiment);
    if (!opts.config_file.empty()) {
        std::ifstream in(opts.config_file);
        if (!in) throw std::runtime_error("cannot open config file: " + opts.config_file);
        nlohmann::json j;
        in >> j;
        spec.apply_overrides(j);
    }
    if (opts.trials >= 0) spec.trials = opts.trials;
    if (opts.steps >= 0) spec.env.steps = opts.steps;
    if (opts.dim >= 0) spec.dim = static_cast<std::size_t>(opts.dim);
    if (opts.seed_set) spec.master_seed = opts.seed;
    if (!opts.gamma_list.empty()) {
        spec.models = {{srmu::MemoryKind::Naive, 1.0}, {srmu::MemoryKind::Srmu, 1.0}};
        for (double g : parse_gamma_list(opts.gamma_list)) {
            spec.models.push_back({srmu::MemoryKind::Temporal, g});
            spec.models.push_back({srmu::MemoryKind::Srmu, g});
        }
    }
    spec.validate();
    return spec;
}

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--experiment", opts.experiment,
                    "Preset name: exp1, exp2, exp3, custom")
        ->check(CLI::IsMember({"exp1", "exp2", "exp3", "custom"}));
    cmd->add_option("--config", opts.config_file, "JSON config file (overrides preset)");
    cmd->add_option("--trials", opts.trials, "Number of trials");
    cmd->add_option("--steps", opts.steps, "Steps per trial");
    cmd->add_option("--dim", opts.dim, "Hypervector dimensionality");
    cmd->add_option("--gamma-list", opts.gamma_list,
                    "Comma-separated gammas; roster becomes naive, srmu(1.0), "
                    "then temporal+srmu per gamma");
    cmd->add_option("--seed", opts.seed, "Master seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--workers", opts.workers, "Worker threads (0 = hardware)");
    cmd->add_option("--out-dir", opts.out_dir, "Output directory");
}

int run_command(const CommonOpts& opts) {
    srmu::ExperimentSpec spec = resolve_spec(opts);
    const int workers = opts.workers > 0
                            ? opts.workers
                            : static_cast<int>(std::thread::hardware_concurrency());
    const srmu::AggregateResult result =
        srmu::run_experiment_to_dir(spec, workers, opts.out_dir);

    std::printf("%-16s %14s %14s %16s %18s\n", "model", "final_cosine",
                "cosine_se", "final_magnitude", "magnitude_se");
    for (const auto& m : result.models) {
        std::string label = m.model;
        if (m.model != "naive") {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%s(%g)", m.model.c_str(), m.gamma);
            label = buf;
        }
        std::printf("%-16s %14.4f %14.5f %16.2f %18.3f\n", label.c_str(),
                    m.final_cosine, m.final_cosine_se, m.final_magnitude,
                    m.final_magnitude_se);
    }
    std::printf("wrote curves_%s.csv, summary_%s.csv, run_manifest.json to %s\n",
                spec.name.c_str(), spec.name.c_str(), opts.out_dir.c_str());
    return 0;
}

int validate_config_command(const CommonOpts& opts) {
    const srmu::ExperimentSpec spec = resolve_spec(opts);
    std::cout << spec.to_json().dump(2) << '\n';
    std::cout << "config ok\n";
    return 0;
}

int oracle_dump_command(const CommonOpts& opts, int trial_index) {
    srmu::ExperimentSpec spec = resolve_spec(opts);
    std::filesystem::create_directories(opts.out_dir);
    std::vector<srmu::EventRecord> events;
    const srmu::TrialTrace trace = srmu::run_single_trial(spec, trial_index, &events);

    char name[64];
    std::snprintf(name, sizeof(name), "eventlog_%s_%d.csv", spec.name.c_str(),
                  trial_index);
    srmu::write_event_log_csv(events, std::filesystem::path(opts.out_dir) / name);

    const std::uint64_t seed = srmu::trial_seed(
        spec.master_seed, static_cast<std::uint64_t>(trial_index));
    const srmu::Codebook cb = srmu::build_codebook(
        static_cast<std::size_t>(spec.env.device_count),
        static_cast<std::size_t>(spec.env.state_count), spec.dim,
        spec.shared_codebook ? spec.master_seed : seed);
    srmu::dump_codebook_json(
        cb, std::filesystem::path(opts.out_dir) /
                ("codebook_" + spec.name + "_" + std::to_string(trial_index) + ".json"));

    // Replay the trial to capture final memory snapshots.
    std::vector<srmu::MemoryModel> models;
    for (const auto& ms : spec.models)
        models.emplace_back(ms.kind, ms.gamma, spec.dim);
    {
        srmu::Rng dynamics(srmu::substream_seed(seed, "dynamics"));
        srmu::Rng sampling(srmu::substream_seed(seed, "sampling"));
        srmu::Rng noise(srmu::substream_seed(seed, "noise"));
        srmu::EnvState env = srmu::init_env(spec.env, dynamics);
        const std::vector<int> schedule = srmu::build_sampler(spec.env, sampling);
        for (int t = 0; t < spec.env.steps; ++t) {
            srmu::step_dynamics(env, spec.env, dynamics);
            const srmu::Observation obs =
                srmu::observe(env, schedule[static_cast<std::size_t>(t)], spec.env, noise);
            const auto& key = cb.device_keys[static_cast<std::size_t>(obs.device)];
            const auto& value =
                cb.state_values[static_cast<std::size_t>(obs.observed_state)];
            for (auto& m : models) m.update(key, value);
        }
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
        std::snprintf(name, sizeof(name), "memory_%s_%d_%s.json", spec.name.c_str(),
                      trial_index, spec.models[i].label().c_str());
        models[i].save_snapshot(std::filesystem::path(opts.out_dir) / name);
    }
    std::printf("dumped trial %d of %s to %s\n", trial_index, spec.name.c_str(),
                opts.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming hyperdimensional memory benchmark"};
    app.require_subcommand(1);

    CommonOpts opts;
    int trial_index = 0;

    CLI::App* run = app.add_subcommand("run", "Run an experiment");
    add_common_flags(run, opts);

    CLI::App* validate = app.add_subcommand("validate-config", "Validate a config file");
    add_common_flags(validate, opts);

    CLI::App* dump = app.add_subcommand(
        "oracle-dump", "Dump one trial's event log and memory snapshots");
    add_common_flags(dump, opts);
    dump->add_option("--trial", trial_index, "Trial index to dump");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(opts);
        if (validate->parsed()) return validate_config_command(opts);
        if (dump->parsed()) return oracle_dump_command(opts, trial_index);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
