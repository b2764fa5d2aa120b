#include "srmu/metrics.hpp"

#include <cassert>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace srmu {

namespace {

// Kahan compensated accumulator.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double mean_of_tail(const std::vector<double>& series, int window) {
    Accumulator acc;
    const std::size_t n = series.size();
    const std::size_t w = static_cast<std::size_t>(window);
    for (std::size_t i = n - w; i < n; ++i) acc.add(series[i]);
    return acc.sum / static_cast<double>(w);
}

}  // namespace

std::pair<double, double> step_metrics(const Hypervector& model_state,
                                       const Hypervector& truth) {
    require_same_dim(model_state, truth, "step_metrics");
    const double magnitude = l2_norm(model_state);
    if (magnitude == 0.0) return {0.0, 0.0};
    return {cosine_sim(model_state, truth), magnitude};
}

AggregateResult aggregate(const std::vector<TrialTrace>& traces,
                          int final_window) {
    if (traces.empty())
        throw std::invalid_argument("aggregate: no traces");
    if (final_window < 1)
        throw std::invalid_argument("aggregate: final_window must be >= 1");

    const std::size_t n_models = traces.front().models.size();
    const std::size_t steps = traces.front().models.empty()
                                  ? 0
                                  : traces.front().models.front().cosine.size();
    if (static_cast<std::size_t>(final_window) > steps)
        throw std::invalid_argument("aggregate: final_window exceeds trace length");
    for (const auto& tr : traces) {
        if (tr.models.size() != n_models)
            throw std::invalid_argument("aggregate: mismatched model sets");
        for (const auto& m : tr.models)
            if (m.cosine.size() != steps || m.magnitude.size() != steps)
                throw std::invalid_argument("aggregate: mismatched trace lengths");
    }

    AggregateResult result;
    result.trial_count = traces.size();
    result.final_window = final_window;
    const double n = static_cast<double>(traces.size());

    for (std::size_t mi = 0; mi < n_models; ++mi) {
        ModelAggregate agg;
        agg.model = traces.front().models[mi].model;
        agg.gamma = traces.front().models[mi].gamma;
        agg.mean_cosine.assign(steps, 0.0);
        agg.mean_magnitude.assign(steps, 0.0);

        std::vector<Accumulator> cos_acc(steps), mag_acc(steps);
        Accumulator fc, fc2, fm, fm2;
        for (const auto& tr : traces) {
            const auto& mt = tr.models[mi];
            for (std::size_t t = 0; t < steps; ++t) {
                cos_acc[t].add(mt.cosine[t]);
                mag_acc[t].add(mt.magnitude[t]);
            }
            const double c = mean_of_tail(mt.cosine, final_window);
            const double g = mean_of_tail(mt.magnitude, final_window);
            fc.add(c);
            fc2.add(c * c);
            fm.add(g);
            fm2.add(g * g);
        }
        for (std::size_t t = 0; t < steps; ++t) {
            agg.mean_cosine[t] = cos_acc[t].sum / n;
            agg.mean_magnitude[t] = mag_acc[t].sum / n;
        }
        agg.final_cosine = fc.sum / n;
        agg.final_magnitude = fm.sum / n;
        if (traces.size() > 1) {
            const double var_c =
                std::max(0.0, (fc2.sum - n * agg.final_cosine * agg.final_cosine) / (n - 1.0));
            const double var_m =
                std::max(0.0, (fm2.sum - n * agg.final_magnitude * agg.final_magnitude) / (n - 1.0));
            agg.final_cosine_se = std::sqrt(var_c / n);
            agg.final_magnitude_se = std::sqrt(var_m / n);
        }
        result.models.push_back(std::move(agg));
    }
    return result;
}

void write_curves_csv(const AggregateResult& agg, const std::string& experiment,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_curves_csv: cannot open " + path.string());
    out.precision(12);
    out << "experiment,model,gamma,trial_count,step,mean_cosine,mean_magnitude\n";
    for (const auto& m : agg.models) {
        for (std::size_t t = 0; t < m.mean_cosine.size(); ++t) {
            out << experiment << ',' << m.model << ',' << m.gamma << ','
                << agg.trial_count << ',' << t + 1 << ',' << m.mean_cosine[t]
                << ',' << m.mean_magnitude[t] << '\n';
        }
    }
}

void write_summary_csv(const AggregateResult& agg, const std::string& experiment,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_summary_csv: cannot open " + path.string());
    out.precision(12);
    out << "experiment,model,gamma,trial_count,final_cosine,final_cosine_se,"
           "final_magnitude,final_magnitude_se\n";
    for (const auto& m : agg.models) {
        out << experiment << ',' << m.model << ',' << m.gamma << ','
            << agg.trial_count << ',' << m.final_cosine << ','
            << m.final_cosine_se << ',' << m.final_magnitude << ','
            << m.final_magnitude_se << '\n';
    }
}

}  // namespace srmu
