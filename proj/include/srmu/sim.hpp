#pragma once

// Synthetic device-health environment: latent ordinal state dynamics
// (drift/jump), observation sampling schedules (uniform and
// frequent/medium/sparse partitioned), observation noise, and the
// single-trial runner feeding the memory models.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "srmu/codebook.hpp"
#include "srmu/memory.hpp"
#include "srmu/metrics.hpp"
#include "srmu/rng.hpp"

#include <json.hpp>

namespace srmu {

enum class Sampling { Uniform, Partitioned };

std::string to_string(Sampling s);
Sampling sampling_from_string(const std::string& name);

struct EnvConfig {
    int device_count = 5;  // K
    int state_count = 5;   // S
    double p_drift = 0.0;
    double p_jump = 0.0;
    double noise_prob = 0.05;
    Sampling sampling = Sampling::Uniform;
    // Per-device base weights by group (frequent, medium, sparse),
    // normalized over devices before sampling.
    std::array<double, 3> partition_weights{0.60, 0.15, 0.05};
    std::array<int, 3> group_sizes{1, 2, 2};
    int steps = 500;  // T
    // Whether a jump may land on the current state (no-op jump).
    bool jump_excludes_current = false;

    void validate() const;  // throws std::invalid_argument on violation
    nlohmann::json to_json() const;
    static EnvConfig from_json(const nlohmann::json& j);
    // Overlays fields present in `j` onto this config.
    void apply_overrides(const nlohmann::json& j);
};

struct EnvState {
    std::vector<int> states;  // K ordinals in [0, S-1]
    long step = 0;
};

struct Observation {
    int device = 0;
    int observed_state = 0;
    int true_state = 0;  // diagnostics only
    long step = 0;
    bool corrupted = false;
};

struct ModelSpec {
    MemoryKind kind = MemoryKind::Naive;
    double gamma = 1.0;
    std::string label() const;  // e.g. "srmu(0.95)"
};

// One record per step, for oracle replay in any language.
struct EventRecord {
    long step = 0;
    int device = 0;
    int true_state = 0;
    int observed_state = 0;
    bool corrupted = false;
};

// Devices start in independent uniform random states.
EnvState init_env(const EnvConfig& cfg, Rng& dynamics_rng);

// Per device: jump with p_jump, else drift +-1 (clamped) with p_drift, else
// unchanged. One uniform draw decides, so the two transition types are
// mutually exclusive within a step.
void step_dynamics(EnvState& env, const EnvConfig& cfg, Rng& dynamics_rng);

// Length-T device index sequence. Uniform: T i.i.d. draws. Partitioned: the
// first K slots are a random permutation of all devices (at-least-once
// guarantee); the rest are i.i.d. from the normalized partition weights.
std::vector<int> build_sampler(const EnvConfig& cfg, Rng& sampling_rng);

// With probability noise_prob the observation is off by +-1 (clamped);
// a clamped corruption still counts as corrupted.
Observation observe(const EnvState& env, int device, const EnvConfig& cfg,
                    Rng& noise_rng);

// Runs one T-step trial. All models consume the same dynamics/sampling/noise
// streams (paired comparison). Substreams are derived from `seed`, so a trial
// is replayable in isolation. If `event_log` is non-null the per-step event
// records are appended to it.
TrialTrace run_trial(const EnvConfig& cfg, const std::vector<ModelSpec>& models,
                     const Codebook& cb, std::uint64_t seed,
                     std::vector<EventRecord>* event_log = nullptr);

void write_event_log_csv(const std::vector<EventRecord>& log,
                         const std::filesystem::path& path);

}  // namespace srmu
