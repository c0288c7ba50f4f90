#ifndef AQUAFUZZ_NETBUS_CAPTURE_HPP
#define AQUAFUZZ_NETBUS_CAPTURE_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aquafuzz/netbus/packet.hpp"

namespace aquafuzz::netbus {

struct CaptureParseError : std::runtime_error {
    int line;
    CaptureParseError(int line_no, const std::string& what)
        : std::runtime_error("capture parse error at line " + std::to_string(line_no) + ": " + what),
          line(line_no) {}
};

/// Line-delimited capture format:
///   # aquafuzz-capture v1 map=<hex protocol map hash>
///   tick,stage,type,direction,payload_hex
void capture_write(std::ostream& out, std::span<const PacketRecord> packets,
                   std::uint64_t protocol_map_hash);
void capture_write_file(const std::string& path, std::span<const PacketRecord> packets,
                        std::uint64_t protocol_map_hash);

struct Capture {
    std::vector<PacketRecord> packets;
    std::uint64_t protocol_map_hash = 0;
};

Capture capture_read(std::istream& in);
Capture capture_read_file(const std::string& path);

} // namespace aquafuzz::netbus

#endif
