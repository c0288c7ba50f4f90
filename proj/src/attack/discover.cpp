#include "aquafuzz/attack/discover.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "aquafuzz/activefuzz/pretrain.hpp"

namespace aquafuzz::attack {

namespace {

std::vector<std::size_t> rank_by_importance(const std::vector<double>& importance) {
    std::vector<std::size_t> order(importance.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return importance[a] > importance[b];  // stable keeps lower index first on ties
    });
    return order;
}

} // namespace

DiscoverResult discover(const netbus::FeatureVector& p_o, double current_reading,
                        const regress::Predictor& model, bool delta_model, int n,
                        const Objective& obj, const DiscoverLimits& limits,
                        const std::function<void(const std::vector<std::size_t>&)>& on_eval) {
    if (n < 1 || static_cast<std::size_t>(n) > netbus::FeatureVector::kBits)
        throw std::invalid_argument("discover: flip count out of range");

    std::vector<std::size_t> order = rank_by_importance(model.feature_importance());
    const auto total = static_cast<int>(order.size());

    DiscoverResult best;
    best.f_max = 0.0;
    bool found = false;
    auto started = std::chrono::steady_clock::now();

    std::vector<std::size_t> ranks(static_cast<std::size_t>(n));  // positions into `order`
    std::vector<std::size_t> flips(static_cast<std::size_t>(n));

    auto evaluate = [&](int k_now) {
        netbus::FeatureVector p = p_o;
        for (std::size_t i = 0; i < flips.size(); ++i) {
            flips[i] = order[ranks[i]];
            p.flip(flips[i]);
        }
        if (on_eval) on_eval(flips);
        double predicted = model.predict(p);
        double value = delta_model ? current_reading + predicted : predicted;
        double f = objective_eval(value, obj);
        ++best.evaluated;
        best.k_final = k_now;
        if (!found || f > best.f_max) {
            found = true;
            best.f_max = f;
            best.vector = p;
            best.flipped = flips;
        }
    };

    auto out_of_budget = [&] {
        if (best.evaluated >= limits.max_candidates) return true;
        if ((best.evaluated & 0xff) == 0 && std::isfinite(limits.timeout_seconds)) {
            double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                           started).count();
            if (elapsed > limits.timeout_seconds) return true;
        }
        return false;
    };

    // Window growth: k indexes the newest rank admitted. The first window is
    // the top-n ranks; each later layer enumerates exactly the size-n subsets
    // that include rank k, so no combination is ever revisited.
    for (int k = n - 1; k < total; ++k) {
        if (out_of_budget()) break;
        if (k == n - 1) {
            std::iota(ranks.begin(), ranks.end(), 0u);
            evaluate(k);
            continue;
        }
        // Choose n-1 ranks from [0, k), the last slot pinned to k.
        ranks.back() = static_cast<std::size_t>(k);
        auto m = static_cast<std::size_t>(n - 1);
        if (m == 0) {
            evaluate(k);
            continue;
        }
        std::iota(ranks.begin(), ranks.begin() + static_cast<long>(m), 0u);
        for (;;) {
            evaluate(k);
            if (out_of_budget()) break;
            // Next (n-1)-combination of [0, k).
            std::size_t i = m;
            while (i-- > 0) {
                if (ranks[i] + (m - i) < static_cast<std::size_t>(k)) {
                    ++ranks[i];
                    for (std::size_t j = i + 1; j < m; ++j) ranks[j] = ranks[j - 1] + 1;
                    break;
                }
                if (i == 0) goto layer_done;
            }
        }
    layer_done:;
    }

    if (!found) throw NoCandidateError("discover: limits exhausted before any evaluation");
    return best;
}

DiscoverResult discover_live(netbus::PlantLink& link, const regress::Predictor& model,
                             SensorId sensor, int n, const Objective& obj,
                             const DiscoverLimits& limits) {
    netbus::FeatureVector p_o = netbus::assemble(link.sniff_window(1));
    double current = link.read_sensor(sensor).value;
    bool delta = activefuzz::is_delta_target(sensor);
    return discover(p_o, current, model, delta, n, obj, limits);
}

} // namespace aquafuzz::attack
