#ifndef AQUAFUZZ_ACTIVEFUZZ_CONVERGENCE_HPP
#define AQUAFUZZ_ACTIVEFUZZ_CONVERGENCE_HPP

#include <span>
#include <vector>

namespace aquafuzz::activefuzz {

/// Scale an importance vector to sum 1 (all-zero vectors pass through).
std::vector<double> normalize_importance(std::span<const double> importance);

/// Stability test over recorded normalized importance snapshots: true iff
/// there are at least two and the last two differ componentwise by at most
/// `tolerance`.
bool convergence_check(std::span<const std::vector<double>> history, double tolerance);

} // namespace aquafuzz::activefuzz

#endif
