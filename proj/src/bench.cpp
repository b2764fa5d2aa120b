#include "srmu/bench.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace srmu {

namespace {

constexpr const char* kVersion = "1.0.0";

std::vector<ModelSpec> models_from_json(const nlohmann::json& arr) {
    std::vector<ModelSpec> models;
    for (const auto& m : arr) {
        ModelSpec spec;
        spec.kind = memory_kind_from_string(m.at("kind").get<std::string>());
        spec.gamma = m.value("gamma", 1.0);
        models.push_back(spec);
    }
    return models;
}

}  // namespace

void ExperimentSpec::validate() const {
    env.validate();
    if (models.empty()) throw std::invalid_argument("ExperimentSpec: empty model roster");
    if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
    if (dim < 1) throw std::invalid_argument("ExperimentSpec: dim must be >= 1");
    if (final_window < 1 || final_window > env.steps)
        throw std::invalid_argument("ExperimentSpec: final_window out of range");
    for (const auto& m : models)
        if (m.kind != MemoryKind::Naive && (m.gamma <= 0.0 || m.gamma > 1.0))
            throw std::invalid_argument("ExperimentSpec: gamma must be in (0, 1]");
}

nlohmann::json ExperimentSpec::to_json() const {
    nlohmann::json roster = nlohmann::json::array();
    for (const auto& m : models)
        roster.push_back({{"kind", to_string(m.kind)}, {"gamma", m.gamma}});
    return {
        {"name", name},
        {"env", env.to_json()},
        {"models", roster},
        {"trials", trials},
        {"dim", dim},
        {"master_seed", master_seed},
        {"shared_codebook", shared_codebook},
        {"final_window", final_window},
    };
}

void ExperimentSpec::apply_overrides(const nlohmann::json& j) {
    if (j.contains("name")) name = j["name"].get<std::string>();
    if (j.contains("env")) env.apply_overrides(j["env"]);
    if (j.contains("models")) models = models_from_json(j["models"]);
    if (j.contains("trials")) trials = j["trials"].get<int>();
    if (j.contains("dim")) dim = j["dim"].get<std::size_t>();
    if (j.contains("master_seed")) master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("shared_codebook")) shared_codebook = j["shared_codebook"].get<bool>();
    if (j.contains("final_window")) final_window = j["final_window"].get<int>();
}

ExperimentSpec preset(const std::string& name) {
    ExperimentSpec spec;
    spec.name = name;
    spec.env.device_count = 5;
    spec.env.state_count = 5;
    spec.env.noise_prob = 0.05;
    spec.env.steps = 500;
    if (name == "exp1") {
        spec.env.sampling = Sampling::Partitioned;
        spec.env.p_drift = 0.0;
        spec.env.p_jump = 0.0;
    } else if (name == "exp2") {
        spec.env.sampling = Sampling::Uniform;
        spec.env.p_drift = 0.01;
        spec.env.p_jump = 0.0;
    } else if (name == "exp3") {
        spec.env.sampling = Sampling::Partitioned;
        spec.env.p_drift = 0.01;
        spec.env.p_jump = 0.001;
    } else if (name == "custom") {
        spec.env.sampling = Sampling::Uniform;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return spec;
}

TrialTrace run_single_trial(const ExperimentSpec& spec, int trial_index,
                            std::vector<EventRecord>* event_log) {
    spec.validate();
    if (trial_index < 0 || trial_index >= spec.trials)
        throw std::out_of_range("run_single_trial: trial index out of range");
    const std::uint64_t seed =
        trial_seed(spec.master_seed, static_cast<std::uint64_t>(trial_index));
    const std::uint64_t cb_seed = spec.shared_codebook ? spec.master_seed : seed;
    const Codebook cb =
        build_codebook(static_cast<std::size_t>(spec.env.device_count),
                       static_cast<std::size_t>(spec.env.state_count),
                       spec.dim, cb_seed);
    return run_trial(spec.env, spec.models, cb, seed, event_log);
}

AggregateResult run_experiment(const ExperimentSpec& spec, int workers) {
    spec.validate();
    if (workers < 1) workers = 1;
    workers = std::min(workers, spec.trials);

    std::vector<TrialTrace> traces(static_cast<std::size_t>(spec.trials));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker_fn = [&] {
        try {
            // Shared codebook built once per worker; identical across
            // workers by seed determinism.
            Codebook shared;
            if (spec.shared_codebook)
                shared = build_codebook(
                    static_cast<std::size_t>(spec.env.device_count),
                    static_cast<std::size_t>(spec.env.state_count), spec.dim,
                    spec.master_seed);
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= spec.trials) break;
                const std::uint64_t seed =
                    trial_seed(spec.master_seed, static_cast<std::uint64_t>(i));
                Codebook per_trial;
                if (!spec.shared_codebook)
                    per_trial = build_codebook(
                        static_cast<std::size_t>(spec.env.device_count),
                        static_cast<std::size_t>(spec.env.state_count),
                        spec.dim, seed);
                const Codebook& cb = spec.shared_codebook ? shared : per_trial;
                traces[static_cast<std::size_t>(i)] =
                    run_trial(spec.env, spec.models, cb, seed);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    if (workers == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    // Sequential reduction in trial order: the aggregate is independent of
    // how trials were distributed across workers.
    return aggregate(traces, spec.final_window);
}

AggregateResult run_experiment_to_dir(const ExperimentSpec& spec, int workers,
                                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const AggregateResult result = run_experiment(spec, workers);
    write_curves_csv(result, spec.name, out_dir / ("curves_" + spec.name + ".csv"));
    write_summary_csv(result, spec.name, out_dir / ("summary_" + spec.name + ".csv"));

    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["spec"] = spec.to_json();
    manifest["workers"] = workers;
    manifest["seed_derivation"] =
        "trial_seed(master_seed, trial_index); substreams: dynamics, sampling, "
        "noise, codebook";
    std::ofstream out(out_dir / "run_manifest.json");
    if (!out) throw std::runtime_error("run_experiment_to_dir: cannot write manifest");
    out << manifest.dump(2) << '\n';
    return result;
}

}  // namespace srmu
