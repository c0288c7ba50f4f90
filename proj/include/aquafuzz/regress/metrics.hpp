#ifndef AQUAFUZZ_REGRESS_METRICS_HPP
#define AQUAFUZZ_REGRESS_METRICS_HPP

#include <span>
#include <stdexcept>

namespace aquafuzz::regress {

struct UndefinedVarianceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// r2 = 1 - sum((a - p)^2) / sum((a - mean(a))^2). Throws
/// UndefinedVarianceError when the actual values are constant.
double r2_score(std::span<const double> predicted, std::span<const double> actual);

} // namespace aquafuzz::regress

#endif
