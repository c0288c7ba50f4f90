#include "aquafuzz/activefuzz/convergence.hpp"

#include <cmath>
#include <stdexcept>

namespace aquafuzz::activefuzz {

std::vector<double> normalize_importance(std::span<const double> importance) {
    double total = 0;
    for (double v : importance) {
        if (v < 0) throw std::invalid_argument("importance scores must be non-negative");
        total += v;
    }
    std::vector<double> out(importance.begin(), importance.end());
    if (total > 0)
        for (double& v : out) v /= total;
    return out;
}

bool convergence_check(std::span<const std::vector<double>> history, double tolerance) {
    if (tolerance <= 0) throw std::invalid_argument("convergence tolerance must be positive");
    if (history.size() < 2) return false;
    const auto& prev = history[history.size() - 2];
    const auto& last = history[history.size() - 1];
    if (prev.size() != last.size())
        throw std::invalid_argument("importance snapshots must have equal length");
    double worst = 0;
    for (std::size_t i = 0; i < last.size(); ++i)
        worst = std::max(worst, std::fabs(last[i] - prev[i]));
    return worst <= tolerance;
}

} // namespace aquafuzz::activefuzz
