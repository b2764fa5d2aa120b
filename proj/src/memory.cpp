#include "srmu/memory.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace srmu {

std::string to_string(MemoryKind kind) {
    switch (kind) {
        case MemoryKind::Naive: return "naive";
        case MemoryKind::Temporal: return "temporal";
        case MemoryKind::Srmu: return "srmu";
    }
    throw std::logic_error("unknown MemoryKind");
}

MemoryKind memory_kind_from_string(const std::string& name) {
    if (name == "naive") return MemoryKind::Naive;
    if (name == "temporal") return MemoryKind::Temporal;
    if (name == "srmu") return MemoryKind::Srmu;
    throw std::invalid_argument("unknown memory kind: " + name);
}

Hypervector naive_step(const Hypervector& m, const Hypervector& k,
                       const Hypervector& v) {
    return bundle(m, bind(k, v));
}

Hypervector temporal_step(const Hypervector& m, double gamma,
                          const Hypervector& k, const Hypervector& v) {
    return bundle(scale(m, gamma), bind(k, v));
}

std::pair<Hypervector, double> srmu_step(const Hypervector& m, double gamma,
                                         const Hypervector& k,
                                         const Hypervector& v) {
    Hypervector decayed = scale(m, gamma);
    const Hypervector retrieved = unbind(decayed, k);

    double s = 0.0;
    if (l2_norm(retrieved) > kNormGuard && l2_norm(v) > kNormGuard)
        s = std::min(cosine_sim(retrieved, v), 1.0);  // guard fp overshoot
    const double w = 1.0 - s;

    for (std::size_t j = 0; j < decayed.dim(); ++j)
        decayed[j] += w * (k[j] * v[j]);
    return {std::move(decayed), w};
}

MemoryModel::MemoryModel(MemoryKind kind, double gamma, std::size_t dim)
    : kind_(kind),
      gamma_(kind == MemoryKind::Naive ? 1.0 : gamma),
      state_(zero_vector(dim)) {
    if (kind != MemoryKind::Naive && (gamma <= 0.0 || gamma > 1.0))
        throw std::invalid_argument("MemoryModel: gamma must be in (0, 1]");
}

double MemoryModel::update(const Hypervector& k, const Hypervector& v) {
    require_same_dim(state_, k, "MemoryModel::update");
    require_same_dim(state_, v, "MemoryModel::update");
    double w = 1.0;
    switch (kind_) {
        case MemoryKind::Naive:
            state_ = naive_step(state_, k, v);
            break;
        case MemoryKind::Temporal:
            state_ = temporal_step(state_, gamma_, k, v);
            break;
        case MemoryKind::Srmu:
            if (gate_override_) {
                w = *gate_override_;
                Hypervector decayed = scale(state_, gamma_);
                for (std::size_t j = 0; j < decayed.dim(); ++j)
                    decayed[j] += w * (k[j] * v[j]);
                state_ = std::move(decayed);
            } else {
                std::tie(state_, w) = srmu_step(state_, gamma_, k, v);
            }
            break;
    }
    ++update_count_;
    last_weight_ = w;
    return w;
}

Hypervector MemoryModel::read(const Hypervector& k) const {
    return unbind(state_, k);
}

void MemoryModel::save_snapshot(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["kind"] = to_string(kind_);
    j["gamma"] = gamma_;
    j["update_count"] = update_count_;
    j["last_weight"] = last_weight_;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : state_.components())
        comps.push_back({c.real(), c.imag()});
    j["state"] = std::move(comps);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_snapshot: cannot open " + path.string());
    out << j.dump(2) << '\n';
}

MemoryModel MemoryModel::load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_snapshot: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    const auto& comps = j.at("state");
    MemoryModel model(memory_kind_from_string(j.at("kind").get<std::string>()),
                      j.at("gamma").get<double>(), comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i)
        model.state_[i] = Complex(comps[i].at(0).get<double>(),
                                  comps[i].at(1).get<double>());
    model.update_count_ = j.at("update_count").get<std::uint64_t>();
    model.last_weight_ = j.at("last_weight").get<double>();
    return model;
}

}  // namespace srmu
