#ifndef AQUAFUZZ_ATTACK_SUITE_HPP
#define AQUAFUZZ_ATTACK_SUITE_HPP

#include <string>
#include <vector>

#include "aquafuzz/attack/executor.hpp"

namespace aquafuzz::attack {

/// One suite entry: the packet manipulation (flip set) that drove a sensor
/// past a threshold, with its discovery score and observed breach timing.
struct SuiteRecord {
    SensorId sensor{};
    int flips = 0;
    std::vector<std::size_t> indices;
    double f_max = 0.0;
    bool success = false;
    int ticks_to_breach = -1;
};

void suite_save(const std::string& path, std::span<const SuiteRecord> suite);
std::vector<SuiteRecord> suite_load(const std::string& path);

} // namespace aquafuzz::attack

#endif
