#ifndef AQUAFUZZ_PLANTSIM_HISTORIAN_HPP
#define AQUAFUZZ_PLANTSIM_HISTORIAN_HPP

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "aquafuzz/core/types.hpp"

namespace aquafuzz::plantsim {

struct NotRecordedError : std::runtime_error {
    explicit NotRecordedError(Tick tick)
        : std::runtime_error("historian: no record for tick " + std::to_string(tick)) {}
};

/// Time-indexed log of sensor readings, one row per tick starting at tick 0.
class Historian {
public:
    void record(Tick tick, const std::array<double, kSensorCount>& readings) {
        if (tick != static_cast<Tick>(rows_.size()))
            throw std::logic_error("historian: out-of-order record");
        rows_.push_back(readings);
    }

    SensorReading query(SensorId id, Tick tick) const {
        if (tick < 0 || tick >= static_cast<Tick>(rows_.size())) throw NotRecordedError(tick);
        return SensorReading{id, rows_[static_cast<std::size_t>(tick)][static_cast<std::size_t>(id)],
                             tick};
    }

    Tick last_tick() const { return static_cast<Tick>(rows_.size()) - 1; }

    /// Line-delimited export: tick,sensor,value.
    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;

private:
    std::vector<std::array<double, kSensorCount>> rows_;
};

} // namespace aquafuzz::plantsim

#endif
