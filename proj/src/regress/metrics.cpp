#include "aquafuzz/regress/metrics.hpp"

namespace aquafuzz::regress {

double r2_score(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size() || actual.empty())
        throw std::invalid_argument("r2_score: sequences must be equal-length and non-empty");
    double mean = 0;
    for (double a : actual) mean += a;
    mean /= static_cast<double>(actual.size());

    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double r = actual[i] - predicted[i];
        double d = actual[i] - mean;
        ss_res += r * r;
        ss_tot += d * d;
    }
    if (ss_tot == 0) throw UndefinedVarianceError("r2_score: actual values are constant");
    return 1.0 - ss_res / ss_tot;
}

} // namespace aquafuzz::regress
