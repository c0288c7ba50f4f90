#ifndef AQUAFUZZ_CORE_TYPES_HPP
#define AQUAFUZZ_CORE_TYPES_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aquafuzz {

using Tick = std::int64_t;

/// The eight monitored sensors of the four-stage plant.
enum class SensorId : std::uint8_t {
    FIT101, FIT201, FIT301, FIT401,
    DPIT301,
    LIT101, LIT301, LIT401,
};

enum class SensorKind : std::uint8_t { Flow, Pressure, Level };

/// Per-stage actuators: a motorised valve and a pump.
enum class ActuatorId : std::uint8_t {
    MV101, P101, MV201, P201, MV301, P301, MV401, P401,
};

inline constexpr std::size_t kSensorCount = 8;
inline constexpr std::size_t kActuatorCount = 8;
inline constexpr int kStageCount = 4;

inline constexpr std::array<SensorId, kSensorCount> kAllSensors = {
    SensorId::FIT101, SensorId::FIT201, SensorId::FIT301, SensorId::FIT401,
    SensorId::DPIT301,
    SensorId::LIT101, SensorId::LIT301, SensorId::LIT401,
};

inline constexpr std::array<ActuatorId, kActuatorCount> kAllActuators = {
    ActuatorId::MV101, ActuatorId::P101, ActuatorId::MV201, ActuatorId::P201,
    ActuatorId::MV301, ActuatorId::P301, ActuatorId::MV401, ActuatorId::P401,
};

constexpr SensorKind kind_of(SensorId id) {
    switch (id) {
    case SensorId::FIT101: case SensorId::FIT201:
    case SensorId::FIT301: case SensorId::FIT401:
        return SensorKind::Flow;
    case SensorId::DPIT301:
        return SensorKind::Pressure;
    default:
        return SensorKind::Level;
    }
}

constexpr int stage_of(SensorId id) {
    switch (id) {
    case SensorId::FIT101: case SensorId::LIT101: return 1;
    case SensorId::FIT201: return 2;
    case SensorId::FIT301: case SensorId::DPIT301: case SensorId::LIT301: return 3;
    default: return 4;
    }
}

constexpr int stage_of(ActuatorId id) {
    return static_cast<int>(id) / 2 + 1;
}

/// True for the valve of a stage, false for the pump.
constexpr bool is_valve(ActuatorId id) {
    return static_cast<int>(id) % 2 == 0;
}

std::string_view to_string(SensorId id);
std::string_view to_string(ActuatorId id);
SensorId sensor_from_string(std::string_view name);
ActuatorId actuator_from_string(std::string_view name);

/// One observed sensor value. `value` carries the unit of the sensor kind
/// (mm for levels, m^3/h for flows, kPa for pressure).
struct SensorReading {
    SensorId id{};
    double value = 0.0;
    Tick tick = 0;
};

/// Manufacturer safety thresholds plus the narrower normal operational band.
struct SafetyRange {
    SensorId id{};
    double low = 0.0;      // L_s
    double high = 0.0;     // H_s
    double op_low = 0.0;   // lo_op
    double op_high = 0.0;  // hi_op

    void validate() const {
        if (!(low < op_low && op_low < op_high && op_high < high))
            throw std::invalid_argument("SafetyRange: requires L_s < lo_op < hi_op < H_s for " +
                                        std::string(to_string(id)));
    }
};

} // namespace aquafuzz

#endif
