#include "aquafuzz/netbus/feature_vector.hpp"

#include <algorithm>

namespace aquafuzz::netbus {

PacketType type_from_letter(char c) {
    if (c < 'A' || c > 'D') throw std::invalid_argument("bad packet type letter");
    return static_cast<PacketType>(c - 'A');
}

FeatureVector::BitLocation FeatureVector::locate(std::size_t index) {
    int stage = static_cast<int>(index / 688) + 1;
    std::size_t in_stage = index % 688;
    PacketType type;
    std::size_t in_block;
    if (in_stage < 80) {
        type = PacketType::A;
        in_block = in_stage;
    } else if (in_stage < 80 + 256) {
        type = PacketType::B;
        in_block = in_stage - 80;
    } else if (in_stage < 80 + 256 + 176) {
        type = PacketType::C;
        in_block = in_stage - 80 - 256;
    } else {
        type = PacketType::D;
        in_block = in_stage - 80 - 256 - 176;
    }
    return BitLocation{stage, type, static_cast<int>(in_block / 8), static_cast<int>(in_block % 8)};
}

void FeatureVector::set_payload(int stage, PacketType type, std::span<const std::uint8_t> payload) {
    if (payload.size() != static_cast<std::size_t>(payload_bytes(type)))
        throw BadLengthError("payload length does not match packet type");
    std::size_t base = block_offset(stage, type);
    for (std::size_t b = 0; b < payload.size(); ++b)
        for (int i = 0; i < 8; ++i)
            set(base + b * 8 + static_cast<std::size_t>(i), (payload[b] >> i) & 1);
}

std::vector<std::uint8_t> FeatureVector::payload(int stage, PacketType type) const {
    std::size_t base = block_offset(stage, type);
    std::vector<std::uint8_t> out(static_cast<std::size_t>(payload_bytes(type)), 0);
    for (std::size_t b = 0; b < out.size(); ++b)
        for (int i = 0; i < 8; ++i)
            if (test(base + b * 8 + static_cast<std::size_t>(i)))
                out[b] |= static_cast<std::uint8_t>(1u << i);
    return out;
}

std::string FeatureVector::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(kBits / 4);
    for (std::size_t nib = 0; nib < kBits / 4; ++nib) {
        int v = static_cast<int>((words_[nib >> 4] >> ((nib & 15) * 4)) & 0xf);
        out.push_back(digits[v]);
    }
    return out;
}

FeatureVector FeatureVector::from_hex(std::string_view hex) {
    if (hex.size() != kBits / 4)
        throw BadLengthError("feature vector hex must be " + std::to_string(kBits / 4) + " digits");
    FeatureVector v;
    for (std::size_t nib = 0; nib < hex.size(); ++nib) {
        char c = hex[nib];
        std::uint64_t d;
        if (c >= '0' && c <= '9') d = static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<std::uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') d = static_cast<std::uint64_t>(c - 'A' + 10);
        else throw BadLengthError("invalid hex digit in feature vector");
        v.words_[nib >> 4] |= d << ((nib & 15) * 4);
    }
    return v;
}

FeatureVector assemble(std::span<const PacketRecord> packets) {
    std::array<const PacketRecord*, 16> first{};
    for (const PacketRecord& p : packets) {
        int idx = p.key.flat_index();
        if (first[static_cast<std::size_t>(idx)] == nullptr)
            first[static_cast<std::size_t>(idx)] = &p;
    }
    FeatureVector v;
    for (int idx = 0; idx < 16; ++idx) {
        if (first[static_cast<std::size_t>(idx)] == nullptr)
            throw MissingTypeError(TypeKey::from_flat(idx));
        const PacketRecord& p = *first[static_cast<std::size_t>(idx)];
        v.set_payload(p.key.stage, p.key.type, p.payload);
    }
    return v;
}

std::array<std::vector<std::uint8_t>, 16> decompose(const FeatureVector& v) {
    std::array<std::vector<std::uint8_t>, 16> out;
    for (int idx = 0; idx < 16; ++idx) {
        TypeKey key = TypeKey::from_flat(idx);
        out[static_cast<std::size_t>(idx)] = v.payload(key.stage, key.type);
    }
    return out;
}

} // namespace aquafuzz::netbus
