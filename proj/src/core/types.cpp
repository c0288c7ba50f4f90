#include "aquafuzz/core/types.hpp"

namespace aquafuzz {

std::string_view to_string(SensorId id) {
    switch (id) {
    case SensorId::FIT101: return "FIT101";
    case SensorId::FIT201: return "FIT201";
    case SensorId::FIT301: return "FIT301";
    case SensorId::FIT401: return "FIT401";
    case SensorId::DPIT301: return "DPIT301";
    case SensorId::LIT101: return "LIT101";
    case SensorId::LIT301: return "LIT301";
    case SensorId::LIT401: return "LIT401";
    }
    return "?";
}

std::string_view to_string(ActuatorId id) {
    switch (id) {
    case ActuatorId::MV101: return "MV101";
    case ActuatorId::P101: return "P101";
    case ActuatorId::MV201: return "MV201";
    case ActuatorId::P201: return "P201";
    case ActuatorId::MV301: return "MV301";
    case ActuatorId::P301: return "P301";
    case ActuatorId::MV401: return "MV401";
    case ActuatorId::P401: return "P401";
    }
    return "?";
}

SensorId sensor_from_string(std::string_view name) {
    for (SensorId id : kAllSensors)
        if (to_string(id) == name) return id;
    throw std::invalid_argument("unknown sensor: " + std::string(name));
}

ActuatorId actuator_from_string(std::string_view name) {
    for (ActuatorId id : kAllActuators)
        if (to_string(id) == name) return id;
    throw std::invalid_argument("unknown actuator: " + std::string(name));
}

} // namespace aquafuzz
