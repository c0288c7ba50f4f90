#ifndef AQUAFUZZ_NETBUS_PACKET_HPP
#define AQUAFUZZ_NETBUS_PACKET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aquafuzz/core/types.hpp"

namespace aquafuzz::netbus {

/// The four packet types observed per stage, distinguished on the wire by
/// payload length and header. 16 (stage, type) combinations in total.
enum class PacketType : std::uint8_t { A, B, C, D };

inline constexpr std::array<PacketType, 4> kAllPacketTypes = {
    PacketType::A, PacketType::B, PacketType::C, PacketType::D,
};

constexpr int payload_bytes(PacketType t) {
    switch (t) {
    case PacketType::A: return 10;
    case PacketType::B: return 32;
    case PacketType::C: return 22;
    case PacketType::D: return 22;
    }
    return 0;
}

constexpr char type_letter(PacketType t) {
    return static_cast<char>('A' + static_cast<int>(t));
}

PacketType type_from_letter(char c);

enum class Direction : std::uint8_t { Controller, Spoofed };

/// Identifies one of the 16 packet kinds.
struct TypeKey {
    int stage = 1;                      // 1..4
    PacketType type = PacketType::A;

    int flat_index() const { return (stage - 1) * 4 + static_cast<int>(type); }
    static TypeKey from_flat(int idx) {
        return TypeKey{idx / 4 + 1, static_cast<PacketType>(idx % 4)};
    }
    bool operator==(const TypeKey&) const = default;
};

/// One captured or spoofed packet.
struct PacketRecord {
    TypeKey key;
    Direction direction = Direction::Controller;
    Tick tick = 0;
    std::vector<std::uint8_t> payload;

    void validate() const {
        if (key.stage < 1 || key.stage > kStageCount)
            throw std::invalid_argument("PacketRecord: bad stage");
        if (payload.size() != static_cast<std::size_t>(payload_bytes(key.type)))
            throw std::invalid_argument("PacketRecord: payload length does not match type " +
                                        std::string(1, type_letter(key.type)));
    }
};

} // namespace aquafuzz::netbus

#endif
