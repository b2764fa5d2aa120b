#include "srmu/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace srmu {

std::string to_string(Sampling s) {
    return s == Sampling::Uniform ? "uniform" : "partitioned";
}

Sampling sampling_from_string(const std::string& name) {
    if (name == "uniform") return Sampling::Uniform;
    if (name == "partitioned") return Sampling::Partitioned;
    throw std::invalid_argument("unknown sampling mode: " + name);
}

std::string ModelSpec::label() const {
    if (kind == MemoryKind::Naive) return "naive";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s(%g)", to_string(kind).c_str(), gamma);
    return buf;
}

void EnvConfig::validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (device_count < 1) throw std::invalid_argument("EnvConfig: device_count must be >= 1");
    if (state_count < 2) throw std::invalid_argument("EnvConfig: state_count must be >= 2");
    if (!in_unit(p_drift) || !in_unit(p_jump) || !in_unit(noise_prob))
        throw std::invalid_argument("EnvConfig: probabilities must be in [0, 1]");
    if (p_drift + p_jump > 1.0)
        throw std::invalid_argument("EnvConfig: p_drift + p_jump must be <= 1");
    if (sampling == Sampling::Partitioned) {
        const int total = group_sizes[0] + group_sizes[1] + group_sizes[2];
        if (total != device_count)
            throw std::invalid_argument("EnvConfig: group_sizes must sum to device_count");
        for (double w : partition_weights)
            if (w < 0.0) throw std::invalid_argument("EnvConfig: negative partition weight");
        if (partition_weights[0] + partition_weights[1] + partition_weights[2] <= 0.0)
            throw std::invalid_argument("EnvConfig: partition weights are all zero");
    }
    if (steps < device_count)
        throw std::invalid_argument("EnvConfig: steps must be >= device_count");
}

nlohmann::json EnvConfig::to_json() const {
    return {
        {"device_count", device_count},
        {"state_count", state_count},
        {"p_drift", p_drift},
        {"p_jump", p_jump},
        {"noise_prob", noise_prob},
        {"sampling", to_string(sampling)},
        {"partition_weights", partition_weights},
        {"group_sizes", group_sizes},
        {"steps", steps},
        {"jump_excludes_current", jump_excludes_current},
    };
}

EnvConfig EnvConfig::from_json(const nlohmann::json& j) {
    EnvConfig cfg;
    cfg.apply_overrides(j);
    return cfg;
}

void EnvConfig::apply_overrides(const nlohmann::json& j) {
    if (j.contains("device_count")) device_count = j["device_count"].get<int>();
    if (j.contains("state_count")) state_count = j["state_count"].get<int>();
    if (j.contains("p_drift")) p_drift = j["p_drift"].get<double>();
    if (j.contains("p_jump")) p_jump = j["p_jump"].get<double>();
    if (j.contains("noise_prob")) noise_prob = j["noise_prob"].get<double>();
    if (j.contains("sampling"))
        sampling = sampling_from_string(j["sampling"].get<std::string>());
    if (j.contains("partition_weights"))
        partition_weights = j["partition_weights"].get<std::array<double, 3>>();
    if (j.contains("group_sizes"))
        group_sizes = j["group_sizes"].get<std::array<int, 3>>();
    if (j.contains("steps")) steps = j["steps"].get<int>();
    if (j.contains("jump_excludes_current"))
        jump_excludes_current = j["jump_excludes_current"].get<bool>();
}

EnvState init_env(const EnvConfig& cfg, Rng& dynamics_rng) {
    EnvState env;
    env.states.resize(static_cast<std::size_t>(cfg.device_count));
    for (auto& s : env.states)
        s = static_cast<int>(
            dynamics_rng.uniform_index(static_cast<std::uint64_t>(cfg.state_count)));
    return env;
}

void step_dynamics(EnvState& env, const EnvConfig& cfg, Rng& dynamics_rng) {
    const int max_state = cfg.state_count - 1;
    for (auto& state : env.states) {
        const double u = dynamics_rng.uniform01();
        if (u < cfg.p_jump) {
            int target = static_cast<int>(
                dynamics_rng.uniform_index(static_cast<std::uint64_t>(cfg.state_count)));
            if (cfg.jump_excludes_current) {
                // Draw from the S-1 other states.
                target = static_cast<int>(dynamics_rng.uniform_index(
                    static_cast<std::uint64_t>(cfg.state_count - 1)));
                if (target >= state) ++target;
            }
            state = target;
        } else if (u < cfg.p_jump + cfg.p_drift) {
            state = std::clamp(state + dynamics_rng.uniform_sign(), 0, max_state);
        }
    }
    ++env.step;
}

std::vector<int> build_sampler(const EnvConfig& cfg, Rng& sampling_rng) {
    cfg.validate();
    const int K = cfg.device_count;
    const int T = cfg.steps;
    std::vector<int> schedule;
    schedule.reserve(static_cast<std::size_t>(T));

    if (cfg.sampling == Sampling::Uniform) {
        for (int t = 0; t < T; ++t)
            schedule.push_back(static_cast<int>(
                sampling_rng.uniform_index(static_cast<std::uint64_t>(K))));
        return schedule;
    }

    // At-least-once guarantee: the first K slots are a Fisher-Yates
    // permutation of all devices.
    std::vector<int> prefix(static_cast<std::size_t>(K));
    std::iota(prefix.begin(), prefix.end(), 0);
    for (int i = K - 1; i > 0; --i) {
        const auto j = sampling_rng.uniform_index(static_cast<std::uint64_t>(i + 1));
        std::swap(prefix[static_cast<std::size_t>(i)], prefix[j]);
    }
    schedule.insert(schedule.end(), prefix.begin(), prefix.end());

    // Remaining slots: i.i.d. from the normalized per-device distribution.
    std::vector<double> cdf;
    cdf.reserve(static_cast<std::size_t>(K));
    double total = 0.0;
    for (int g = 0; g < 3; ++g)
        for (int i = 0; i < cfg.group_sizes[static_cast<std::size_t>(g)]; ++i) {
            total += cfg.partition_weights[static_cast<std::size_t>(g)];
            cdf.push_back(total);
        }
    for (int t = K; t < T; ++t) {
        const double u = sampling_rng.uniform01() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const int device = static_cast<int>(std::min<std::ptrdiff_t>(
            it - cdf.begin(), K - 1));
        schedule.push_back(device);
    }
    return schedule;
}

Observation observe(const EnvState& env, int device, const EnvConfig& cfg,
                    Rng& noise_rng) {
    if (device < 0 || static_cast<std::size_t>(device) >= env.states.size())
        throw std::out_of_range("observe: device index out of range");
    Observation obs;
    obs.device = device;
    obs.step = env.step;
    obs.true_state = env.states[static_cast<std::size_t>(device)];
    obs.observed_state = obs.true_state;
    if (noise_rng.uniform01() < cfg.noise_prob) {
        obs.corrupted = true;
        obs.observed_state = std::clamp(obs.true_state + noise_rng.uniform_sign(),
                                        0, cfg.state_count - 1);
    }
    return obs;
}

TrialTrace run_trial(const EnvConfig& cfg, const std::vector<ModelSpec>& models,
                     const Codebook& cb, std::uint64_t seed,
                     std::vector<EventRecord>* event_log) {
    cfg.validate();
    if (models.empty()) throw std::invalid_argument("run_trial: no models");
    if (cb.device_count() != static_cast<std::size_t>(cfg.device_count) ||
        cb.state_count() != static_cast<std::size_t>(cfg.state_count))
        throw std::invalid_argument("run_trial: codebook does not match config");

    Rng dynamics_rng(substream_seed(seed, "dynamics"));
    Rng sampling_rng(substream_seed(seed, "sampling"));
    Rng noise_rng(substream_seed(seed, "noise"));

    EnvState env = init_env(cfg, dynamics_rng);
    const std::vector<int> schedule = build_sampler(cfg, sampling_rng);

    TrialTrace trace;
    trace.seed = seed;
    std::vector<MemoryModel> instances;
    instances.reserve(models.size());
    for (const auto& spec : models) {
        instances.emplace_back(spec.kind, spec.gamma, cb.dim);
        ModelTrace mt;
        mt.model = to_string(spec.kind);
        mt.gamma = spec.kind == MemoryKind::Naive ? 1.0 : spec.gamma;
        mt.cosine.reserve(static_cast<std::size_t>(cfg.steps));
        mt.magnitude.reserve(static_cast<std::size_t>(cfg.steps));
        if (spec.kind == MemoryKind::Srmu)
            mt.weight.reserve(static_cast<std::size_t>(cfg.steps));
        trace.models.push_back(std::move(mt));
    }

    for (int t = 0; t < cfg.steps; ++t) {
        step_dynamics(env, cfg, dynamics_rng);
        const int device = schedule[static_cast<std::size_t>(t)];
        const Observation obs = observe(env, device, cfg, noise_rng);
        if (event_log)
            event_log->push_back({env.step, obs.device, obs.true_state,
                                  obs.observed_state, obs.corrupted});

        const Hypervector& key = cb.device_keys[static_cast<std::size_t>(device)];
        const Hypervector& value =
            cb.state_values[static_cast<std::size_t>(obs.observed_state)];
        const Hypervector truth = ground_truth_memory(cb, env.states);

        for (std::size_t mi = 0; mi < instances.size(); ++mi) {
            const double w = instances[mi].update(key, value);
            const auto [cosine, magnitude] =
                step_metrics(instances[mi].state(), truth);
            trace.models[mi].cosine.push_back(cosine);
            trace.models[mi].magnitude.push_back(magnitude);
            if (models[mi].kind == MemoryKind::Srmu)
                trace.models[mi].weight.push_back(w);
        }
    }
    return trace;
}

void write_event_log_csv(const std::vector<EventRecord>& log,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_event_log_csv: cannot open " + path.string());
    out << "step,device,true_state,observed_state,corrupted\n";
    for (const auto& e : log)
        out << e.step << ',' << e.device << ',' << e.true_state << ','
            << e.observed_state << ',' << (e.corrupted ? 1 : 0) << '\n';
}

}  // namespace srmu
