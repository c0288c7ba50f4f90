#include "aquafuzz/plantsim/testbed.hpp"

#include <fstream>

namespace aquafuzz::plantsim {

Testbed::Testbed(PlantConfig cfg, ProtocolMap map, Tick bus_retention)
    : cfg_(cfg),
      map_(std::move(map)),
      map_hash_(map_.hash()),
      plant_(cfg),
      controllers_(cfg),
      bus_(bus_retention) {
    for (SensorId id : kAllSensors)
        safety_[static_cast<std::size_t>(id)] = cfg_.safety(id);
    std::array<double, kSensorCount> row{};
    for (SensorId id : kAllSensors)
        row[static_cast<std::size_t>(id)] = plant_.read_value(id, 0);
    historian_.record(0, row);
}

SensorSnapshot Testbed::snapshot(Tick tick) const {
    SensorSnapshot s;
    for (SensorId id : kAllSensors) s[id] = historian_.query(id, tick).value;
    return s;
}

void Testbed::tick_once() {
    Tick tick = plant_.tick() + 1;
    SensorSnapshot latest = snapshot(plant_.tick());

    const ActuatorCommands& commands = controllers_.decide(latest);
    for (netbus::PacketRecord& p : controller_packets(commands, map_, tick, latest))
        bus_.publish(std::move(p));

    if (pending_spoof_) {
        auto payloads = netbus::decompose(*pending_spoof_);
        for (int idx = 0; idx < 16; ++idx) {
            netbus::PacketRecord p;
            p.key = netbus::TypeKey::from_flat(idx);
            p.direction = netbus::Direction::Spoofed;
            p.tick = tick;
            p.payload = std::move(payloads[static_cast<std::size_t>(idx)]);
            bus_.publish(std::move(p));
        }
        pending_spoof_.reset();
    }

    auto winners = bus_.winners(tick);
    for (int idx = 0; idx < 16; ++idx)
        if (winners[static_cast<std::size_t>(idx)] != nullptr)
            plant_.apply_packet(*winners[static_cast<std::size_t>(idx)], map_);

    plant_.step();

    std::array<double, kSensorCount> row{};
    for (SensorId id : kAllSensors)
        row[static_cast<std::size_t>(id)] = plant_.read_value(id, tick);
    historian_.record(tick, row);
}

void Testbed::advance(int ticks) {
    for (int i = 0; i < ticks; ++i) tick_once();
}

std::vector<netbus::PacketRecord> Testbed::sniff_window(int ticks) {
    Tick from = plant_.tick() + 1;
    advance(ticks);
    std::vector<netbus::PacketRecord> out = bus_.window(from, plant_.tick());
    if (out.empty()) throw netbus::EmptyWindowError("sniff_window: no traffic captured");
    return out;
}

void Testbed::spoof(const netbus::FeatureVector& v) {
    pending_spoof_ = v;
}

SensorReading Testbed::read_sensor(SensorId id) {
    return historian_.query(id, plant_.tick());
}

SensorReading Testbed::historian(SensorId id, Tick tick) const {
    if (tick > plant_.tick()) throw NotRecordedError(tick);
    return historian_.query(id, tick);
}

double Testbed::true_sensor_value(SensorId id) const {
    return plant_.true_value(id);
}

std::unique_ptr<Testbed> make_settled_testbed(PlantConfig cfg, ProtocolMap map, int warmup_ticks,
                                              int phase, Tick bus_retention) {
    auto bed = std::make_unique<Testbed>(cfg, std::move(map), bus_retention);
    bed->advance(warmup_ticks + phase);
    return bed;
}

} // namespace aquafuzz::plantsim
