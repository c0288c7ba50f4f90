#ifndef AQUAFUZZ_PLANTSIM_CONTROLLER_HPP
#define AQUAFUZZ_PLANTSIM_CONTROLLER_HPP

#include <array>
#include <vector>

#include "aquafuzz/netbus/packet.hpp"
#include "aquafuzz/plantsim/plant.hpp"
#include "aquafuzz/plantsim/protocol_map.hpp"

namespace aquafuzz::plantsim {

using ActuatorCommands = std::array<bool, kActuatorCount>;

/// Per-stage sensor view the PLCs act on (latest noisy readings).
struct SensorSnapshot {
    std::array<double, kSensorCount> values{};
    double operator[](SensorId id) const { return values[static_cast<std::size_t>(id)]; }
    double& operator[](SensorId id) { return values[static_cast<std::size_t>(id)]; }
};

/// Hysteresis PLC program for the four stages. Inlet valves open when their
/// tank drops below the operational low and close above the operational
/// high; the stage-3 booster and stage-4 product valve cycle on the T401
/// band; flush pumps are never commanded in normal operation. Commands hold
/// their previous value inside the bands.
class StageControllers {
public:
    explicit StageControllers(const PlantConfig& cfg);

    /// Compute this tick's commands from the latest readings.
    const ActuatorCommands& decide(const SensorSnapshot& readings);

    const ActuatorCommands& commands() const { return cmd_; }
    void set_command(ActuatorId id, bool on) { cmd_[static_cast<std::size_t>(id)] = on; }

private:
    bool& cmd(ActuatorId id) { return cmd_[static_cast<std::size_t>(id)]; }

    PlantConfig cfg_;
    ActuatorCommands cmd_{};
};

/// Encode one stage's commands into its four payloads for a tick. Reserved
/// bytes carry the map's stage-seeded filler; status echoes quantise the
/// supplied readings.
std::array<std::vector<std::uint8_t>, 4> encode_command(int stage, const ActuatorCommands& commands,
                                                        const ProtocolMap& map, Tick tick,
                                                        const SensorSnapshot& readings);

/// Full controller emission for a tick: 16 packets in (stage, type) order.
std::vector<netbus::PacketRecord> controller_packets(const ActuatorCommands& commands,
                                                     const ProtocolMap& map, Tick tick,
                                                     const SensorSnapshot& readings);

} // namespace aquafuzz::plantsim

#endif
