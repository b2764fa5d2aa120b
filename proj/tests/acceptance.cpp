// Acceptance suite: end-to-end checks of the algebra, the memory rules, the
// simulator statistics, and the three benchmark experiments. Prints one
// pass/fail line per criterion and exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "srmu/bench.hpp"

using namespace srmu;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++failures;
}

const ModelAggregate& model_of(const AggregateResult& agg, const std::string& kind,
                               double gamma) {
    for (const auto& m : agg.models)
        if (m.model == kind && m.gamma == gamma) return m;
    throw std::logic_error("model not found in aggregate");
}

// Ordering a > b with a gap exceeding 2 combined standard errors.
bool separated(double a, double se_a, double b, double se_b) {
    return (a - b) > 2.0 * std::sqrt(se_a * se_a + se_b * se_b);
}

int worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 4;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_algebraic_identities() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    // Unbind-bind round trip and cosine invariances.
    Rng rng(1001);
    for (int i = 0; i < 100 && ok; ++i) {
        const Hypervector k = random_phasor(256, rng);
        const Hypervector v = random_phasor(256, rng);
        const Hypervector r = unbind(bind(k, v), k);
        for (std::size_t j = 0; j < 256; ++j)
            if (std::abs(r[j] - v[j]) > 1e-10) {
                ok = false;
                why = "unbind(bind(k,v),k) drifted from v";
                break;
            }
        if (std::abs(cosine_sim(v, scale(v, 2.5)) - 1.0) > 1e-10) {
            ok = false;
            why = "cosine not scale-invariant";
        }
        Hypervector rotated(v.dim());
        for (std::size_t j = 0; j < v.dim(); ++j)
            rotated[j] = v[j] * std::polar(1.0, 0.77);
        if (std::abs(cosine_sim(v, rotated) - 1.0) > 1e-10) {
            ok = false;
            why = "cosine not phase-invariant";
        }
    }

    // Weight bound over 1e5 randomized updates.
    if (ok) {
        MemoryModel m(MemoryKind::Srmu, 0.9, 64);
        for (int i = 0; i < 100000; ++i) {
            const double w = m.update(random_phasor(64, rng), random_phasor(64, rng));
            if (w < 0.0 || w > 1.0) {
                ok = false;
                why = "srmu weight left [0,1]";
                break;
            }
        }
    }

    // Fixed point at gamma = 1 for repeated identical observations.
    if (ok) {
        const Hypervector k = random_phasor(256, rng);
        const Hypervector v = random_phasor(256, rng);
        MemoryModel m(MemoryKind::Srmu, 1.0, 256);
        m.update(k, v);
        const Hypervector frozen = m.state();
        for (int i = 0; i < 100; ++i) m.update(k, v);
        for (std::size_t j = 0; j < 256; ++j)
            if (std::abs(m.state()[j] - frozen[j]) > 1e-10) {
                ok = false;
                why = "srmu fixed point drifted";
                break;
            }
    }

    // Degeneracy chain over a 100-step random stream.
    if (ok) {
        MemoryModel gated_off(MemoryKind::Srmu, 1.0, 128);
        gated_off.set_gate_override(1.0);
        MemoryModel temporal(MemoryKind::Temporal, 1.0, 128);
        MemoryModel naive(MemoryKind::Naive, 1.0, 128);
        for (int i = 0; i < 100; ++i) {
            const Hypervector k = random_phasor(128, rng);
            const Hypervector v = random_phasor(128, rng);
            gated_off.update(k, v);
            temporal.update(k, v);
            naive.update(k, v);
        }
        for (std::size_t j = 0; j < 128; ++j) {
            if (std::abs(gated_off.state()[j] - temporal.state()[j]) > 1e-10 ||
                std::abs(temporal.state()[j] - naive.state()[j]) > 1e-10) {
                ok = false;
                why = "degeneracy chain broken";
                break;
            }
        }
    }

    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (ok && secs >= 5.0) {
        ok = false;
        why = "runtime budget exceeded";
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "identities hold at 1e-10, %.1fs%s%s", secs,
                  ok ? "" : " -- ", why.c_str());
    report("1 algebraic identities", ok, buf);
}

void criterion_temporal_steady_state() {
    Rng rng(1002);
    const Hypervector k = random_phasor(256, rng);
    const Hypervector v = random_phasor(256, rng);
    MemoryModel m(MemoryKind::Temporal, 0.95, 256);
    for (int i = 0; i < 500; ++i) m.update(k, v);
    const double norm = l2_norm(m.state());
    const bool ok = std::abs(norm - 320.0) / 320.0 < 0.01;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "||M|| = %.3f vs 16/(1-0.95) = 320", norm);
    report("2 temporal steady state", ok, buf);
}

AggregateResult run_preset(const char* name, int trials) {
    ExperimentSpec spec = preset(name);
    spec.trials = trials;
    return run_experiment(spec, worker_count());
}

void criterion_exp1_ordering() {
    const auto start = std::chrono::steady_clock::now();
    const AggregateResult agg = run_preset("exp1", 500);
    const auto& naive = model_of(agg, "naive", 1.0);
    const auto& srmu1 = model_of(agg, "srmu", 1.0);
    const auto& temporal = model_of(agg, "temporal", 0.95);
    const auto& srmu95 = model_of(agg, "srmu", 0.95);

    bool ok = separated(srmu1.final_cosine, srmu1.final_cosine_se,
                        naive.final_cosine, naive.final_cosine_se) &&
              separated(srmu95.final_cosine, srmu95.final_cosine_se,
                        temporal.final_cosine, temporal.final_cosine_se) &&
              separated(temporal.final_magnitude, temporal.final_magnitude_se,
                        srmu95.final_magnitude, srmu95.final_magnitude_se) &&
              separated(srmu1.final_magnitude, srmu1.final_magnitude_se,
                        temporal.final_magnitude, temporal.final_magnitude_se) &&
              separated(naive.final_magnitude, naive.final_magnitude_se,
                        srmu1.final_magnitude, srmu1.final_magnitude_se);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (secs >= 30.0) ok = false;
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "cos srmu(1)=%.3f > naive=%.3f, srmu(.95)=%.3f > temporal=%.3f; "
                  "mag %.1f < %.1f < %.1f < %.1f; %.1fs",
                  srmu1.final_cosine, naive.final_cosine, srmu95.final_cosine,
                  temporal.final_cosine, srmu95.final_magnitude,
                  temporal.final_magnitude, srmu1.final_magnitude,
                  naive.final_magnitude, secs);
    report("3 experiment 1 ordering", ok, buf);
}

void criterion_exp2_ordering() {
    const AggregateResult agg = run_preset("exp2", 500);
    const auto& naive = model_of(agg, "naive", 1.0);
    const auto& srmu1 = model_of(agg, "srmu", 1.0);
    const auto& temporal = model_of(agg, "temporal", 0.95);
    const auto& srmu95 = model_of(agg, "srmu", 0.95);

    const bool ok =
        separated(srmu95.final_cosine, srmu95.final_cosine_se, temporal.final_cosine,
                  temporal.final_cosine_se) &&
        separated(temporal.final_cosine, temporal.final_cosine_se, srmu1.final_cosine,
                  srmu1.final_cosine_se) &&
        separated(srmu1.final_cosine, srmu1.final_cosine_se, naive.final_cosine,
                  naive.final_cosine_se) &&
        separated(temporal.final_magnitude, temporal.final_magnitude_se,
                  srmu95.final_magnitude, srmu95.final_magnitude_se) &&
        separated(srmu1.final_magnitude, srmu1.final_magnitude_se,
                  temporal.final_magnitude, temporal.final_magnitude_se) &&
        separated(naive.final_magnitude, naive.final_magnitude_se,
                  srmu1.final_magnitude, srmu1.final_magnitude_se);
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "cos %.3f > %.3f > %.3f > %.3f; mag %.1f < %.1f << %.1f < %.1f",
                  srmu95.final_cosine, temporal.final_cosine, srmu1.final_cosine,
                  naive.final_cosine, srmu95.final_magnitude,
                  temporal.final_magnitude, srmu1.final_magnitude,
                  naive.final_magnitude);
    report("4 experiment 2 ordering", ok, buf);
}

void criterion_exp3_headline() {
    const AggregateResult agg = run_preset("exp3", 500);
    const auto& temporal = model_of(agg, "temporal", 0.95);
    const auto& srmu95 = model_of(agg, "srmu", 0.95);
    const double cos_gain =
        srmu95.final_cosine / temporal.final_cosine - 1.0;
    const double mag_ratio = srmu95.final_magnitude / temporal.final_magnitude;
    const bool ok = cos_gain >= 0.03 && cos_gain <= 0.25 && mag_ratio >= 0.30 &&
                    mag_ratio <= 0.70;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "cosine gain %+.1f%% (target [+3%%, +25%%]), magnitude ratio "
                  "%.3f (target [0.30, 0.70])",
                  100.0 * cos_gain, mag_ratio);
    report("5 experiment 3 headline", ok, buf);
}

void criterion_simulator_statistics() {
    bool ok = true;
    std::string why;
    const long n_events = 100000;

    // Drift rate: devices pinned mid-range, so every drift changes the state.
    {
        EnvConfig cfg;
        cfg.p_drift = 0.01;
        cfg.steps = n_events / 5;
        Rng rng(2001);
        EnvState env;
        long events = 0;
        for (int t = 0; t < cfg.steps; ++t) {
            env.states.assign(5, 2);
            step_dynamics(env, cfg, rng);
            for (int s : env.states)
                if (s != 2) ++events;
        }
        const double sigma = std::sqrt(n_events * 0.01 * 0.99);
        if (std::abs(events - 0.01 * n_events) >= 3.0 * sigma) {
            ok = false;
            why = "drift rate off";
        }
    }

    // Jump rate: with jumps excluding the current state every jump is visible.
    if (ok) {
        EnvConfig cfg;
        cfg.p_jump = 0.02;
        cfg.jump_excludes_current = true;
        cfg.steps = n_events / 5;
        Rng rng(2002);
        EnvState env;
        long events = 0;
        for (int t = 0; t < cfg.steps; ++t) {
            env.states.assign(5, 2);
            step_dynamics(env, cfg, rng);
            for (int s : env.states)
                if (s != 2) ++events;
        }
        const double sigma = std::sqrt(n_events * 0.02 * 0.98);
        if (std::abs(events - 0.02 * n_events) >= 3.0 * sigma) {
            ok = false;
            why = "jump rate off";
        }
    }

    // Noise corruption rate.
    if (ok) {
        EnvConfig cfg;
        cfg.noise_prob = 0.05;
        Rng rng(2003);
        EnvState env;
        env.states.assign(5, 2);
        long corrupted = 0;
        for (long i = 0; i < n_events; ++i)
            if (observe(env, static_cast<int>(i % 5), cfg, rng).corrupted) ++corrupted;
        const double sigma = std::sqrt(n_events * 0.05 * 0.95);
        if (std::abs(corrupted - 0.05 * n_events) >= 3.0 * sigma) {
            ok = false;
            why = "noise rate off";
        }
    }

    // Partitioned sampling frequencies against the normalized weights.
    if (ok) {
        EnvConfig cfg;
        cfg.sampling = Sampling::Partitioned;
        cfg.steps = static_cast<int>(n_events) + 5;
        Rng rng(2004);
        const std::vector<int> schedule = build_sampler(cfg, rng);
        std::vector<long> counts(5, 0);
        for (std::size_t t = 5; t < schedule.size(); ++t)
            ++counts[static_cast<std::size_t>(schedule[t])];
        const double probs[5] = {0.60, 0.15, 0.15, 0.05, 0.05};
        for (int d = 0; d < 5; ++d) {
            const double sigma =
                std::sqrt(n_events * probs[d] * (1.0 - probs[d]));
            if (std::abs(counts[static_cast<std::size_t>(d)] - n_events * probs[d]) >=
                3.0 * sigma) {
                ok = false;
                why = "sampling frequency off";
            }
        }
    }

    report("6 simulator statistics", ok,
           ok ? "drift, jump, noise, sampling all within 3 sigma of configured rates"
              : why);
}

void criterion_determinism() {
    ExperimentSpec spec = preset("exp1");
    spec.trials = 50;
    spec.env.steps = 100;
    spec.dim = 128;

    const auto dir = std::filesystem::temp_directory_path() / "srmu_acceptance_det";
    std::filesystem::remove_all(dir);
    run_experiment_to_dir(spec, 1, dir);
    const std::string summary_1 = slurp(dir / "summary_exp1.csv");
    run_experiment_to_dir(spec, 8, dir);
    const std::string summary_8 = slurp(dir / "summary_exp1.csv");
    std::filesystem::remove_all(dir);

    const TrialTrace a = run_single_trial(spec, 31);
    const TrialTrace b = run_single_trial(spec, 31);
    bool replay_ok = a.models.size() == b.models.size();
    for (std::size_t mi = 0; replay_ok && mi < a.models.size(); ++mi)
        replay_ok = a.models[mi].cosine == b.models[mi].cosine &&
                    a.models[mi].magnitude == b.models[mi].magnitude &&
                    a.models[mi].weight == b.models[mi].weight;

    const bool ok = summary_1 == summary_8 && replay_ok;
    report("7 determinism", ok,
           ok ? "summary CSV bit-identical across worker counts 1 and 8; trial 31 "
                "replays bitwise"
              : "determinism violated");
}

void criterion_cleanup_fidelity() {
    Rng rng(3001);
    int correct = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const Codebook cb =
            build_codebook(5, 5, 256, 50000 + static_cast<std::uint64_t>(t));
        std::vector<int> states(5);
        for (auto& s : states) s = static_cast<int>(rng.uniform_index(5));
        const Hypervector m = ground_truth_memory(cb, states);
        const auto device = rng.uniform_index(5);
        const auto [decoded, sim] =
            cleanup_state(cb, unbind(m, cb.device_keys[device]));
        (void)sim;
        if (decoded == states[device]) ++correct;
    }
    const double accuracy = static_cast<double>(correct) / trials;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "decode accuracy %.4f over %d trials (> 0.99)",
                  accuracy, trials);
    report("8 cleanup fidelity", accuracy > 0.99, buf);
}

}  // namespace

int main() {
    criterion_algebraic_identities();
    criterion_temporal_steady_state();
    criterion_exp1_ordering();
    criterion_exp2_ordering();
    criterion_exp3_headline();
    criterion_simulator_statistics();
    criterion_determinism();
    criterion_cleanup_fidelity();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
