#include "aquafuzz/netbus/bus.hpp"

namespace aquafuzz::netbus {

std::vector<PacketRecord> Bus::window(Tick from, Tick to) const {
    std::vector<PacketRecord> out;
    for (const PacketRecord& p : log_)
        if (p.tick >= from && p.tick <= to) out.push_back(p);
    return out;
}

std::array<const PacketRecord*, 16> Bus::winners(Tick tick) const {
    std::array<const PacketRecord*, 16> out{};
    for (const PacketRecord& p : log_)
        if (p.tick == tick) out[p.key.flat_index()] = &p;
    return out;
}

} // namespace aquafuzz::netbus
