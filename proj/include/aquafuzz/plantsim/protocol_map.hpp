#ifndef AQUAFUZZ_PLANTSIM_PROTOCOL_MAP_HPP
#define AQUAFUZZ_PLANTSIM_PROTOCOL_MAP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aquafuzz/core/types.hpp"
#include "aquafuzz/netbus/packet.hpp"

namespace aquafuzz::plantsim {

/// One actuator command carried as a single payload bit.
struct CommandField {
    ActuatorId actuator{};
    int byte = 0;
    int bit = 0;
};

/// A sensor value echoed into status bytes (little-endian, fixed scale).
/// Echo bytes are informative on the wire but no-ops on decode.
struct EchoField {
    SensorId sensor{};
    int byte = 0;
    double scale = 1.0;  // stored value = round(reading * scale), 16-bit
};

struct PacketSpec {
    int length = 0;
    std::uint8_t magic = 0;
    int magic_byte = 0;
    std::optional<int> stage_id_byte;
    std::vector<int> zeroed_bytes;  // encoded as zero before command bits land
    std::vector<CommandField> commands;
    std::vector<EchoField> echoes;
};

/// The plant's payload bit map: per (stage, type) the payload length, magic,
/// command fields, status echoes, and (implicitly) the reserved filler bits.
/// This type never crosses into the fuzzer-side modules; only its hash does.
class ProtocolMap {
public:
    static ProtocolMap default_map(std::uint64_t filler_seed = 0x5ee0);

    static ProtocolMap from_json_file(const std::string& path);
    std::string to_json() const;
    void to_json_file(const std::string& path) const;

    const PacketSpec& spec(int stage, netbus::PacketType type) const {
        return specs_[index(stage, type)];
    }

    std::uint64_t filler_seed() const { return filler_seed_; }

    /// Deterministic stage-seeded filler byte for reserved positions.
    std::uint8_t filler_byte(int stage, netbus::PacketType type, Tick tick, int byte) const;

    /// True when flipping this payload bit can never alter actuator state:
    /// everything except the magic byte and the listed command bits.
    bool is_noop_bit(int stage, netbus::PacketType type, int bit_in_payload) const;

    /// Fingerprint over the canonical serialization.
    std::uint64_t hash() const;

    /// Checks the structural invariants (disjoint command bits, one field per
    /// actuator within a packet, magic outside command fields, bounds).
    void validate() const;

private:
    static std::size_t index(int stage, netbus::PacketType type) {
        return static_cast<std::size_t>(stage - 1) * 4 + static_cast<std::size_t>(type);
    }

    std::array<PacketSpec, 16> specs_{};
    std::uint64_t filler_seed_ = 0;
};

} // namespace aquafuzz::plantsim

#endif
