#include "aquafuzz/netbus/capture.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace aquafuzz::netbus {

namespace {

const char* kHeaderPrefix = "# aquafuzz-capture v1 map=";

std::string hex_of(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

int hex_digit(char c, int line) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw CaptureParseError(line, "invalid hex digit");
}

std::vector<std::uint8_t> bytes_of(std::string_view hex, int line) {
    if (hex.size() % 2 != 0) throw CaptureParseError(line, "odd hex payload length");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(hex_digit(hex[2 * i], line) << 4 |
                                           hex_digit(hex[2 * i + 1], line));
    return out;
}

} // namespace

void capture_write(std::ostream& out, std::span<const PacketRecord> packets,
                   std::uint64_t protocol_map_hash) {
    char hash_hex[17];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(protocol_map_hash));
    out << kHeaderPrefix << hash_hex << "\n";
    for (const PacketRecord& p : packets) {
        out << p.tick << ',' << p.key.stage << ',' << type_letter(p.key.type) << ','
            << (p.direction == Direction::Spoofed ? "spoofed" : "controller") << ','
            << hex_of(p.payload) << "\n";
    }
}

void capture_write_file(const std::string& path, std::span<const PacketRecord> packets,
                        std::uint64_t protocol_map_hash) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open capture file for writing: " + path);
    capture_write(f, packets, protocol_map_hash);
}

Capture capture_read(std::istream& in) {
    Capture cap;
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw CaptureParseError(1, "missing header");
    ++line_no;
    if (!line.starts_with(kHeaderPrefix)) throw CaptureParseError(1, "bad header");
    {
        std::string_view hex = std::string_view(line).substr(std::string(kHeaderPrefix).size());
        if (hex.size() != 16) throw CaptureParseError(1, "bad map hash in header");
        std::uint64_t h = 0;
        for (char c : hex) h = h << 4 | static_cast<std::uint64_t>(hex_digit(c, 1));
        cap.protocol_map_hash = h;
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::string_view v(line);
        std::array<std::string_view, 5> fields;
        for (int i = 0; i < 4; ++i) {
            std::size_t comma = v.find(',');
            if (comma == std::string_view::npos) throw CaptureParseError(line_no, "expected 5 fields");
            fields[i] = v.substr(0, comma);
            v.remove_prefix(comma + 1);
        }
        fields[4] = v;

        PacketRecord p;
        auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), p.tick);
        if (ec != std::errc{}) throw CaptureParseError(line_no, "bad tick");
        if (fields[1].size() != 1 || fields[1][0] < '1' || fields[1][0] > '4')
            throw CaptureParseError(line_no, "bad stage");
        p.key.stage = fields[1][0] - '0';
        if (fields[2].size() != 1) throw CaptureParseError(line_no, "bad type");
        if (fields[2][0] < 'A' || fields[2][0] > 'D') throw CaptureParseError(line_no, "bad type");
        p.key.type = type_from_letter(fields[2][0]);
        if (fields[3] == "controller") p.direction = Direction::Controller;
        else if (fields[3] == "spoofed") p.direction = Direction::Spoofed;
        else throw CaptureParseError(line_no, "bad direction");
        p.payload = bytes_of(fields[4], line_no);
        if (p.payload.size() != static_cast<std::size_t>(payload_bytes(p.key.type)))
            throw CaptureParseError(line_no, "payload length does not match type");
        cap.packets.push_back(std::move(p));
    }
    return cap;
}

Capture capture_read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open capture file: " + path);
    return capture_read(f);
}

} // namespace aquafuzz::netbus
