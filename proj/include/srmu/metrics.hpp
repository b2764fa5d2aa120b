#pragma once

// Per-step metrics, per-trial traces, and cross-trial aggregation.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "srmu/hypervector.hpp"

namespace srmu {

struct ModelTrace {
    std::string model;  // "naive", "temporal", "srmu"
    double gamma = 1.0;
    std::vector<double> cosine;     // length T, in [0, 1]
    std::vector<double> magnitude;  // length T, nonnegative
    std::vector<double> weight;     // length T for SRMU, empty otherwise
};

struct TrialTrace {
    std::uint64_t seed = 0;
    std::vector<ModelTrace> models;
};

struct ModelAggregate {
    std::string model;
    double gamma = 1.0;
    std::vector<double> mean_cosine;     // length T
    std::vector<double> mean_magnitude;  // length T
    double final_cosine = 0.0;
    double final_cosine_se = 0.0;
    double final_magnitude = 0.0;
    double final_magnitude_se = 0.0;
};

struct AggregateResult {
    std::vector<ModelAggregate> models;
    std::size_t trial_count = 0;
    // Final-step scalars average over the last `final_window` steps
    // (default 1: the final step itself).
    int final_window = 1;
};

// (cosine vs truth, ||state||). Cosine is 0 when the model state has zero
// norm (pre-first-update convention). Truth must have positive norm.
std::pair<double, double> step_metrics(const Hypervector& model_state,
                                       const Hypervector& truth);

// Pointwise mean across trials per model per metric, with standard errors of
// the final-window scalars. Compensated summation keeps the result
// independent of accumulation order.
AggregateResult aggregate(const std::vector<TrialTrace>& traces,
                          int final_window = 1);

// Long-format curves CSV: experiment, model, gamma, trial_count, step,
// mean_cosine, mean_magnitude.
void write_curves_csv(const AggregateResult& agg, const std::string& experiment,
                      const std::filesystem::path& path);

// Summary CSV with final-window values and standard errors.
void write_summary_csv(const AggregateResult& agg, const std::string& experiment,
                       const std::filesystem::path& path);

}  // namespace srmu
