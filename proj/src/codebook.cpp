#include "srmu/codebook.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace srmu {

namespace {

bool conflicts(const Hypervector& candidate,
               const std::vector<Hypervector>& accepted) {
    for (const auto& other : accepted)
        if (cosine_sim(candidate, other) >= kQuasiOrthogonalThreshold)
            return true;
    return false;
}

}  // namespace

Codebook build_codebook(std::size_t device_count, std::size_t state_count,
                        std::size_t dim, std::uint64_t seed) {
    if (device_count < 1) throw std::invalid_argument("build_codebook: K must be >= 1");
    if (state_count < 2) throw std::invalid_argument("build_codebook: S must be >= 2");
    if (dim < 1) throw std::invalid_argument("build_codebook: dim must be >= 1");

    Rng rng(substream_seed(seed, "codebook"));
    constexpr int kRetryBudget = 1000;

    std::vector<Hypervector> vectors;
    vectors.reserve(device_count + state_count);
    for (std::size_t i = 0; i < device_count + state_count; ++i) {
        int attempts = 0;
        Hypervector candidate = random_phasor(dim, rng);
        while (conflicts(candidate, vectors)) {
            if (++attempts > kRetryBudget)
                throw std::runtime_error(
                    "build_codebook: could not satisfy quasi-orthogonality "
                    "(dim too small for requested symbol count)");
            candidate = random_phasor(dim, rng);
        }
        vectors.push_back(std::move(candidate));
    }

    Codebook cb;
    cb.dim = dim;
    cb.seed = seed;
    cb.device_keys.assign(vectors.begin(),
                          vectors.begin() + static_cast<std::ptrdiff_t>(device_count));
    cb.state_values.assign(vectors.begin() + static_cast<std::ptrdiff_t>(device_count),
                           vectors.end());
    return cb;
}

Hypervector ground_truth_memory(const Codebook& cb,
                                const std::vector<int>& states) {
    if (states.size() != cb.device_count())
        throw std::invalid_argument("ground_truth_memory: one state per device required");
    Hypervector acc = zero_vector(cb.dim);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const int s = states[i];
        if (s < 0 || static_cast<std::size_t>(s) >= cb.state_count())
            throw std::out_of_range("ground_truth_memory: state index out of range");
        bundle_into(acc, bind(cb.device_keys[i],
                              cb.state_values[static_cast<std::size_t>(s)]));
    }
    return acc;
}

std::pair<int, double> cleanup_state(const Codebook& cb,
                                     const Hypervector& noisy_value) {
    int best = 0;
    double best_sim = -1.0;
    for (std::size_t s = 0; s < cb.state_count(); ++s) {
        const double sim = cosine_sim(noisy_value, cb.state_values[s]);
        if (sim > best_sim) {
            best_sim = sim;
            best = static_cast<int>(s);
        }
    }
    return {best, best_sim};
}

namespace {

nlohmann::json vectors_to_json(const std::vector<Hypervector>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : vs) {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& c : v.components())
            comps.push_back({c.real(), c.imag()});
        arr.push_back(std::move(comps));
    }
    return arr;
}

std::vector<Hypervector> vectors_from_json(const nlohmann::json& arr) {
    std::vector<Hypervector> out;
    for (const auto& comps : arr) {
        std::vector<Complex> cs;
        cs.reserve(comps.size());
        for (const auto& pair : comps)
            cs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        out.emplace_back(std::move(cs));
    }
    return out;
}

}  // namespace

void dump_codebook_json(const Codebook& cb, const std::filesystem::path& path) {
    nlohmann::json j;
    j["seed"] = cb.seed;
    j["dim"] = cb.dim;
    j["device_keys"] = vectors_to_json(cb.device_keys);
    j["state_values"] = vectors_to_json(cb.state_values);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_codebook_json: cannot open " + path.string());
    out << j.dump(2) << '\n';
}

Codebook load_codebook_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_codebook_json: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    Codebook cb;
    cb.seed = j.at("seed").get<std::uint64_t>();
    cb.dim = j.at("dim").get<std::size_t>();
    cb.device_keys = vectors_from_json(j.at("device_keys"));
    cb.state_values = vectors_from_json(j.at("state_values"));
    return cb;
}

}  // namespace srmu
