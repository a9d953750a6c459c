#include "tvflow/metrics.hpp"

#include "tvflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tvflow {

FlowErrors flow_errors(const FlowField& v, const FlowField& v_gt) {
    if (!v.same_shape(v_gt)) throw ConfigError("metrics: flow field dimensions differ");

    FlowErrors e;
    double sum_ep = 0.0, sum_ang = 0.0;
    const int w = v.width(), h = v.height();
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            if (!flow_known(v, i, j) || !flow_known(v_gt, i, j)) {
                ++e.n_masked;
                continue;
            }
            const double a1 = v.v1(i, j), a2 = v.v2(i, j);
            const double b1 = v_gt.v1(i, j), b2 = v_gt.v2(i, j);
            sum_ep += std::sqrt((a1 - b1) * (a1 - b1) + (a2 - b2) * (a2 - b2));

            const double na = std::sqrt(a1 * a1 + a2 * a2 + 1.0);
            const double nb = std::sqrt(b1 * b1 + b2 * b2 + 1.0);
            // Unit normalization can push the dot product past 1 by roundoff.
            const double d = std::clamp((a1 * b1 + a2 * b2 + 1.0) / (na * nb), -1.0, 1.0);
            sum_ang += std::acos(d);
            ++e.n_pixels;
        }
    }
    if (e.n_pixels == 0) throw ConfigError("metrics: no valid pixels to compare");
    e.aee = sum_ep / static_cast<double>(e.n_pixels);
    e.ae = sum_ang / static_cast<double>(e.n_pixels);
    return e;
}

double aee(const FlowField& v, const FlowField& v_gt) { return flow_errors(v, v_gt).aee; }

double ae(const FlowField& v, const FlowField& v_gt) { return flow_errors(v, v_gt).ae; }

std::vector<ModelRanks> aggregate_ranks(const std::vector<ErrorReport>& reports) {
    if (reports.empty()) throw ConfigError("aggregate_ranks: no reports");

    std::map<std::string, std::pair<double, double>> dataset_min;
    for (const ErrorReport& r : reports) {
        auto [it, fresh] = dataset_min.try_emplace(r.dataset_name, r.aee, r.ae);
        if (!fresh) {
            it->second.first = std::min(it->second.first, r.aee);
            it->second.second = std::min(it->second.second, r.ae);
        }
    }

    std::vector<ModelRanks> out;
    auto find_model = [&](const std::string& name) -> ModelRanks& {
        for (ModelRanks& m : out)
            if (m.model_name == name) return m;
        out.push_back(ModelRanks{name});
        return out.back();
    };

    const double inf = std::numeric_limits<double>::infinity();
    for (const ErrorReport& r : reports) {
        ModelRanks& m = find_model(r.model_name);
        const auto& [min_aee, min_ae] = dataset_min.at(r.dataset_name);
        // A zero minimum means some model solved the dataset exactly; the
        // minimizer keeps ratio 1, everyone else is flagged.
        double rel_aee, rel_ae;
        if (min_aee > 0.0) {
            rel_aee = r.aee / min_aee;
        } else {
            rel_aee = r.aee == 0.0 ? 1.0 : inf;
            if (r.aee != 0.0) m.degenerate = true;
        }
        if (min_ae > 0.0) {
            rel_ae = r.ae / min_ae;
        } else {
            rel_ae = r.ae == 0.0 ? 1.0 : inf;
            if (r.ae != 0.0) m.degenerate = true;
        }
        m.mean_rel_aee += rel_aee;
        m.mean_rel_ae += rel_ae;
        m.datasets += 1;
    }
    for (ModelRanks& m : out) {
        m.mean_rel_aee /= static_cast<double>(m.datasets);
        m.mean_rel_ae /= static_cast<double>(m.datasets);
    }
    return out;
}

} // namespace tvflow
