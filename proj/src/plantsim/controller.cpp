#include "aquafuzz/plantsim/controller.hpp"

#include <algorithm>
#include <cmath>

namespace aquafuzz::plantsim {

using netbus::PacketType;

StageControllers::StageControllers(const PlantConfig& cfg) : cfg_(cfg) {
    cmd(ActuatorId::MV301) = true;
    cmd(ActuatorId::P301) = true;
    cmd(ActuatorId::MV401) = true;
}

const ActuatorCommands& StageControllers::decide(const SensorSnapshot& r) {
    // Stage 1: fill T101 on demand; the flush pump stays off.
    if (r[SensorId::LIT101] < cfg_.lit_op_low) cmd(ActuatorId::MV101) = true;
    else if (r[SensorId::LIT101] > cfg_.lit_op_high) cmd(ActuatorId::MV101) = false;
    cmd(ActuatorId::P101) = false;

    // Stage 2: transfer T101 -> T301 when T301 runs low, guarding the
    // upstream tank against draining dry.
    if (r[SensorId::LIT301] < cfg_.lit_op_low && r[SensorId::LIT101] > cfg_.drain_min)
        cmd(ActuatorId::MV201) = true;
    else if (r[SensorId::LIT301] > cfg_.lit_op_high || r[SensorId::LIT101] < cfg_.drain_min)
        cmd(ActuatorId::MV201) = false;
    cmd(ActuatorId::P201) = false;

    // Stage 3: the filter line stays open except under protective closure;
    // the booster pump follows downstream demand.
    bool mv301 = !(r[SensorId::LIT301] < cfg_.drain_min ||
                   r[SensorId::LIT401] > cfg_.t401_emergency_high);
    cmd(ActuatorId::MV301) = mv301;
    if (!mv301) cmd(ActuatorId::P301) = false;
    else if (r[SensorId::LIT401] < cfg_.t401_band_low) cmd(ActuatorId::P301) = true;
    else if (r[SensorId::LIT401] > cfg_.t401_band_high) cmd(ActuatorId::P301) = false;

    // Stage 4: product line drains T401 on the upper leg of the band.
    if (r[SensorId::LIT401] > cfg_.t401_band_high) cmd(ActuatorId::MV401) = true;
    else if (r[SensorId::LIT401] < cfg_.t401_band_low) cmd(ActuatorId::MV401) = false;
    cmd(ActuatorId::P401) = false;

    return cmd_;
}

std::array<std::vector<std::uint8_t>, 4> encode_command(int stage, const ActuatorCommands& commands,
                                                        const ProtocolMap& map, Tick tick,
                                                        const SensorSnapshot& readings) {
    std::array<std::vector<std::uint8_t>, 4> out;
    for (PacketType type : netbus::kAllPacketTypes) {
        const PacketSpec& spec = map.spec(stage, type);
        std::vector<std::uint8_t> payload(static_cast<std::size_t>(spec.length));
        for (int b = 0; b < spec.length; ++b)
            payload[static_cast<std::size_t>(b)] = map.filler_byte(stage, type, tick, b);
        for (int b : spec.zeroed_bytes) payload[static_cast<std::size_t>(b)] = 0;
        payload[static_cast<std::size_t>(spec.magic_byte)] = spec.magic;
        if (spec.stage_id_byte)
            payload[static_cast<std::size_t>(*spec.stage_id_byte)] = static_cast<std::uint8_t>(stage);
        for (const EchoField& e : spec.echoes) {
            double scaled = std::round(std::max(readings[e.sensor], 0.0) * e.scale);
            auto word = static_cast<std::uint16_t>(std::min(scaled, 65535.0));
            payload[static_cast<std::size_t>(e.byte)] = static_cast<std::uint8_t>(word & 0xff);
            payload[static_cast<std::size_t>(e.byte) + 1] = static_cast<std::uint8_t>(word >> 8);
        }
        for (const CommandField& f : spec.commands) {
            auto& byte = payload[static_cast<std::size_t>(f.byte)];
            if (commands[static_cast<std::size_t>(f.actuator)])
                byte |= static_cast<std::uint8_t>(1u << f.bit);
            else
                byte &= static_cast<std::uint8_t>(~(1u << f.bit));
        }
        out[static_cast<std::size_t>(type)] = std::move(payload);
    }
    return out;
}

std::vector<netbus::PacketRecord> controller_packets(const ActuatorCommands& commands,
                                                     const ProtocolMap& map, Tick tick,
                                                     const SensorSnapshot& readings) {
    std::vector<netbus::PacketRecord> out;
    out.reserve(16);
    for (int stage = 1; stage <= kStageCount; ++stage) {
        auto payloads = encode_command(stage, commands, map, tick, readings);
        for (PacketType type : netbus::kAllPacketTypes) {
            netbus::PacketRecord p;
            p.key = {stage, type};
            p.direction = netbus::Direction::Controller;
            p.tick = tick;
            p.payload = std::move(payloads[static_cast<std::size_t>(type)]);
            out.push_back(std::move(p));
        }
    }
    return out;
}

} // namespace aquafuzz::plantsim
