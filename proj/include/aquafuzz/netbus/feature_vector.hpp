#ifndef AQUAFUZZ_NETBUS_FEATURE_VECTOR_HPP
#define AQUAFUZZ_NETBUS_FEATURE_VECTOR_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aquafuzz/netbus/packet.hpp"

namespace aquafuzz::netbus {

/// Concatenation of the 16 packet payloads in fixed order: stages 1..4, types
/// A,B,C,D within each stage. Bytes keep wire order; bit 0 of a byte is its
/// least significant bit. 8*(10+32+22+22)*4 = 2752 bits.
class FeatureVector {
public:
    static constexpr std::size_t kBits = 2752;
    static constexpr std::size_t kWords = kBits / 64;  // exactly 43

    FeatureVector() = default;

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v = true) {
        std::uint64_t mask = 1ULL << (i & 63);
        if (v) words_[i >> 6] |= mask;
        else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool operator==(const FeatureVector&) const = default;

    /// Hamming distance to another vector.
    std::size_t distance(const FeatureVector& other) const {
        std::size_t n = 0;
        for (std::size_t w = 0; w < kWords; ++w)
            n += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
        return n;
    }

    std::uint64_t word(std::size_t w) const { return words_[w]; }

    /// Start bit of a (stage, type) payload block within the vector.
    static constexpr std::size_t block_offset(int stage, PacketType type) {
        constexpr std::array<std::size_t, 4> type_off = {0, 80, 80 + 256, 80 + 256 + 176};
        return static_cast<std::size_t>(stage - 1) * 688 + type_off[static_cast<int>(type)];
    }

    static constexpr std::size_t bit_index(int stage, PacketType type, int byte, int bit) {
        return block_offset(stage, type) + static_cast<std::size_t>(byte) * 8 +
               static_cast<std::size_t>(bit);
    }

    /// Inverse of bit_index: which (stage, type, byte, bit) a position maps to.
    struct BitLocation {
        int stage;
        PacketType type;
        int byte;
        int bit;
    };
    static BitLocation locate(std::size_t index);

    void set_payload(int stage, PacketType type, std::span<const std::uint8_t> payload);
    std::vector<std::uint8_t> payload(int stage, PacketType type) const;

    std::string to_hex() const;
    static FeatureVector from_hex(std::string_view hex);

private:
    std::array<std::uint64_t, kWords> words_{};
};

struct MissingTypeError : std::runtime_error {
    TypeKey key;
    explicit MissingTypeError(TypeKey k)
        : std::runtime_error("no packet of type stage" + std::to_string(k.stage) +
                             std::string(1, type_letter(k.type)) + " in window"),
          key(k) {}
};

struct BadLengthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Build a feature vector from a sniffed window: the first packet of each of
/// the 16 types, payloads concatenated in the fixed order. Later duplicates
/// are ignored. Throws MissingTypeError if a type is absent.
FeatureVector assemble(std::span<const PacketRecord> packets);

/// Split a vector back into its 16 payloads, indexed by TypeKey::flat_index().
std::array<std::vector<std::uint8_t>, 16> decompose(const FeatureVector& v);

} // namespace aquafuzz::netbus

#endif
