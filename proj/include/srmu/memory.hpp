#pragma once

// Sequential memory update policies behind one stateful interface:
//
//   naive     M <- M + k (x) v
//   temporal  M <- gamma*M + k (x) v
//   srmu      decay, retrieve from the decayed memory, gate by novelty:
//               M~ <- gamma*M
//               v^ <- M~ (x)^-1 k
//               s  <- |<v^, v>| / (||v^|| ||v||)   (0 if either norm is ~0)
//               w  <- 1 - s
//               M  <- M~ + w * (k (x) v)
//
// The decay-before-retrieval order is load-bearing: v^ comes from the decayed
// memory, and the stored prior is the decayed one.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "srmu/hypervector.hpp"

namespace srmu {

enum class MemoryKind { Naive, Temporal, Srmu };

std::string to_string(MemoryKind kind);
MemoryKind memory_kind_from_string(const std::string& name);

// Norms at or below this count as zero in the similarity guard; after many
// decay steps the memory can underflow toward zero, so exact-zero tests
// are not robust.
inline constexpr double kNormGuard = 1e-12;

// Pure single-step functions, usable for oracle cross-checks.
Hypervector naive_step(const Hypervector& m, const Hypervector& k,
                       const Hypervector& v);
Hypervector temporal_step(const Hypervector& m, double gamma,
                          const Hypervector& k, const Hypervector& v);
// Returns (new state, novelty weight w in [0, 1]).
std::pair<Hypervector, double> srmu_step(const Hypervector& m, double gamma,
                                         const Hypervector& k,
                                         const Hypervector& v);

class MemoryModel {
public:
    // gamma must lie in (0, 1]; the naive kind ignores it (fixed 1.0).
    MemoryModel(MemoryKind kind, double gamma, std::size_t dim);

    // Applies one update and returns the applied weight
    // (SRMU's novelty weight; 1.0 for naive and temporal).
    double update(const Hypervector& k, const Hypervector& v);

    // unbind(state, k); does not mutate state.
    Hypervector read(const Hypervector& k) const;

    const Hypervector& state() const { return state_; }
    MemoryKind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    std::size_t dim() const { return state_.dim(); }
    std::uint64_t update_count() const { return update_count_; }
    double last_weight() const { return last_weight_; }

    // Forces the SRMU gate to a fixed weight; used to exercise the
    // degeneracy chain (w = 1 makes SRMU identical to temporal).
    void set_gate_override(std::optional<double> w) { gate_override_ = w; }

    void save_snapshot(const std::filesystem::path& path) const;
    static MemoryModel load_snapshot(const std::filesystem::path& path);

private:
    MemoryKind kind_;
    double gamma_;
    Hypervector state_;
    std::uint64_t update_count_ = 0;
    double last_weight_ = 1.0;
    std::optional<double> gate_override_;
};

}  // namespace srmu
