#include "aquafuzz/plantsim/protocol_map.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "aquafuzz/core/rng.hpp"
#include "json.hpp"

namespace aquafuzz::plantsim {

using netbus::PacketType;

ProtocolMap ProtocolMap::default_map(std::uint64_t filler_seed) {
    ProtocolMap m;
    m.filler_seed_ = filler_seed;
    for (int stage = 1; stage <= kStageCount; ++stage) {
        ActuatorId mv = kAllActuators[static_cast<std::size_t>((stage - 1) * 2)];
        ActuatorId pump = kAllActuators[static_cast<std::size_t>((stage - 1) * 2 + 1)];

        PacketSpec a;
        a.length = 10;
        a.magic = 0x7E;
        a.stage_id_byte = 1;
        a.zeroed_bytes = {4};
        a.commands = {{mv, 4, 0}, {pump, 4, 1}};
        m.specs_[index(stage, PacketType::A)] = a;

        PacketSpec b;
        b.length = 32;
        b.magic = 0xA5;
        b.zeroed_bytes = {6, 7};  // 16-bit command word
        b.commands = {{mv, 6, 0}, {pump, 7, 0}};
        m.specs_[index(stage, PacketType::B)] = b;

        PacketSpec c;
        c.length = 22;
        c.magic = 0x3C;
        c.zeroed_bytes = {5};
        c.commands = {{pump, 5, 3}};  // run override
        m.specs_[index(stage, PacketType::C)] = c;

        PacketSpec d;
        d.length = 22;
        d.magic = 0x3D;
        d.stage_id_byte = 1;
        switch (stage) {
        case 1:
            d.echoes = {{SensorId::LIT101, 2, 1.0}, {SensorId::FIT101, 4, 100.0}};
            break;
        case 2:
            d.echoes = {{SensorId::FIT201, 2, 100.0}};
            break;
        case 3:
            d.echoes = {{SensorId::LIT301, 2, 1.0},
                        {SensorId::FIT301, 4, 100.0},
                        {SensorId::DPIT301, 6, 100.0}};
            break;
        case 4:
            d.echoes = {{SensorId::LIT401, 2, 1.0}, {SensorId::FIT401, 4, 100.0}};
            break;
        }
        m.specs_[index(stage, PacketType::D)] = d;
    }
    m.validate();
    return m;
}

std::uint8_t ProtocolMap::filler_byte(int stage, PacketType type, Tick tick, int byte) const {
    std::uint64_t h = hash_mix(filler_seed_, static_cast<std::uint64_t>(stage));
    h = hash_mix(h, static_cast<std::uint64_t>(type));
    h = hash_mix(h, static_cast<std::uint64_t>(tick));
    h = hash_mix(h, static_cast<std::uint64_t>(byte));
    return static_cast<std::uint8_t>(h & 0xff);
}

bool ProtocolMap::is_noop_bit(int stage, PacketType type, int bit_in_payload) const {
    const PacketSpec& s = spec(stage, type);
    int byte = bit_in_payload / 8;
    int bit = bit_in_payload % 8;
    if (byte == s.magic_byte) return false;
    for (const CommandField& f : s.commands)
        if (f.byte == byte && f.bit == bit) return false;
    return true;
}

void ProtocolMap::validate() const {
    for (int stage = 1; stage <= kStageCount; ++stage) {
        for (PacketType type : netbus::kAllPacketTypes) {
            const PacketSpec& s = spec(stage, type);
            if (s.length != netbus::payload_bytes(type))
                throw std::invalid_argument("protocol map: length does not match packet type");
            std::set<int> bits;
            std::set<ActuatorId> actuators;
            for (const CommandField& f : s.commands) {
                if (f.byte < 0 || f.byte >= s.length || f.bit < 0 || f.bit > 7)
                    throw std::invalid_argument("protocol map: command field out of payload");
                if (f.byte == s.magic_byte)
                    throw std::invalid_argument("protocol map: command field inside magic byte");
                if (!bits.insert(f.byte * 8 + f.bit).second)
                    throw std::invalid_argument("protocol map: overlapping command bits");
                if (!actuators.insert(f.actuator).second)
                    throw std::invalid_argument("protocol map: duplicate actuator command field");
            }
            for (const EchoField& e : s.echoes)
                if (e.byte < 0 || e.byte + 1 >= s.length)
                    throw std::invalid_argument("protocol map: echo field out of payload");
        }
    }
}

std::string ProtocolMap::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["filler_seed"] = filler_seed_;
    auto& packets = j["packets"] = nlohmann::ordered_json::array();
    for (int stage = 1; stage <= kStageCount; ++stage) {
        for (PacketType type : netbus::kAllPacketTypes) {
            const PacketSpec& s = spec(stage, type);
            nlohmann::ordered_json p;
            p["stage"] = stage;
            p["type"] = std::string(1, netbus::type_letter(type));
            p["length"] = s.length;
            p["magic"] = s.magic;
            p["magic_byte"] = s.magic_byte;
            if (s.stage_id_byte) p["stage_id_byte"] = *s.stage_id_byte;
            p["zeroed_bytes"] = s.zeroed_bytes;
            auto& cmds = p["commands"] = nlohmann::ordered_json::array();
            for (const CommandField& f : s.commands)
                cmds.push_back({{"actuator", std::string(to_string(f.actuator))},
                                {"byte", f.byte},
                                {"bit", f.bit}});
            auto& echoes = p["echoes"] = nlohmann::ordered_json::array();
            for (const EchoField& e : s.echoes)
                echoes.push_back({{"sensor", std::string(to_string(e.sensor))},
                                  {"byte", e.byte},
                                  {"scale", e.scale}});
            packets.push_back(std::move(p));
        }
    }
    return j.dump(2);
}

void ProtocolMap::to_json_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write protocol map: " + path);
    f << to_json() << "\n";
}

ProtocolMap ProtocolMap::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open protocol map: " + path);
    nlohmann::json j = nlohmann::json::parse(f);
    if (j.value("version", 0) != 1)
        throw std::runtime_error("protocol map: unsupported version");

    ProtocolMap m;
    m.filler_seed_ = j.at("filler_seed").get<std::uint64_t>();
    for (const auto& p : j.at("packets")) {
        int stage = p.at("stage").get<int>();
        std::string ts = p.at("type").get<std::string>();
        if (stage < 1 || stage > kStageCount || ts.size() != 1)
            throw std::runtime_error("protocol map: bad packet entry");
        PacketType type = netbus::type_from_letter(ts[0]);
        PacketSpec s;
        s.length = p.at("length").get<int>();
        s.magic = static_cast<std::uint8_t>(p.at("magic").get<int>());
        s.magic_byte = p.value("magic_byte", 0);
        if (p.contains("stage_id_byte")) s.stage_id_byte = p.at("stage_id_byte").get<int>();
        s.zeroed_bytes = p.value("zeroed_bytes", std::vector<int>{});
        for (const auto& c : p.value("commands", nlohmann::json::array()))
            s.commands.push_back({actuator_from_string(c.at("actuator").get<std::string>()),
                                  c.at("byte").get<int>(), c.at("bit").get<int>()});
        for (const auto& e : p.value("echoes", nlohmann::json::array()))
            s.echoes.push_back({sensor_from_string(e.at("sensor").get<std::string>()),
                                e.at("byte").get<int>(), e.at("scale").get<double>()});
        m.specs_[index(stage, type)] = std::move(s);
    }
    m.validate();
    return m;
}

std::uint64_t ProtocolMap::hash() const {
    return fnv1a(to_json());
}

} // namespace aquafuzz::plantsim
