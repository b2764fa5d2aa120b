#pragma once

// Seeded symbol encoding: one quasi-orthogonal phasor per device and per
// ordinal state, ground-truth memory construction, and nearest-symbol
// cleanup for diagnostic readout.

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "srmu/hypervector.hpp"

namespace srmu {

struct Codebook {
    std::vector<Hypervector> device_keys;   // one per device id 0..K-1
    std::vector<Hypervector> state_values;  // one per ordinal state 0..S-1
    std::size_t dim = 0;
    std::uint64_t seed = 0;

    std::size_t device_count() const { return device_keys.size(); }
    std::size_t state_count() const { return state_values.size(); }
};

// Pairwise cosine threshold enforced at generation; ~8 sigma above the
// random-pair mean at D=256, so resampling virtually never triggers.
inline constexpr double kQuasiOrthogonalThreshold = 0.25;

// Draws K + S phasors from one seeded stream, rejection-resampling any vector
// whose cosine against an earlier one reaches the threshold. Throws
// std::runtime_error if the retry budget is exhausted (pathologically small dim).
Codebook build_codebook(std::size_t device_count, std::size_t state_count,
                        std::size_t dim, std::uint64_t seed);

// Sum over devices of bind(device_key[i], state_value[states[i]]).
// Unnormalized; cosine similarity is scale-invariant.
Hypervector ground_truth_memory(const Codebook& cb,
                                const std::vector<int>& states);

// Nearest state by cosine similarity; ties broken by lowest index.
std::pair<int, double> cleanup_state(const Codebook& cb,
                                     const Hypervector& noisy_value);

// JSON dump ([re, im] component pairs) for cross-implementation checks.
void dump_codebook_json(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook_json(const std::filesystem::path& path);

}  // namespace srmu
