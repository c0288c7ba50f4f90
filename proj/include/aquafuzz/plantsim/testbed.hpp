#ifndef AQUAFUZZ_PLANTSIM_TESTBED_HPP
#define AQUAFUZZ_PLANTSIM_TESTBED_HPP

#include <limits>
#include <memory>
#include <optional>

#include "aquafuzz/netbus/bus.hpp"
#include "aquafuzz/plantsim/controller.hpp"
#include "aquafuzz/plantsim/historian.hpp"
#include "aquafuzz/plantsim/plant.hpp"
#include "aquafuzz/plantsim/protocol_map.hpp"

namespace aquafuzz::plantsim {

/// Owns the closed loop: plant, PLCs, bus, and historian, advanced in tick
/// order. Implements the attacker-facing PlantLink. Each tick the controllers
/// read the latest sensors and emit 16 packets; a queued spoof is published
/// after them (so the plant decodes the spoofed payloads for those types);
/// the winning packet per type is applied in (stage, type) order before the
/// physics step.
class Testbed final : public netbus::PlantLink {
public:
    explicit Testbed(PlantConfig cfg, ProtocolMap map = ProtocolMap::default_map(),
                     Tick bus_retention = 512);

    // PlantLink
    std::vector<netbus::PacketRecord> sniff_window(int ticks) override;
    void spoof(const netbus::FeatureVector& v) override;
    SensorReading read_sensor(SensorId id) override;
    SensorReading historian(SensorId id, Tick tick) const override;
    double true_sensor_value(SensorId id) const override;
    Tick now() const override { return plant_.tick(); }
    void advance(int ticks) override;
    const SafetyRange& safety(SensorId id) const override {
        return safety_[static_cast<std::size_t>(id)];
    }
    std::uint64_t protocol_map_hash() const override { return map_hash_; }

    // Plant-side access for the harness and the CLI.
    Plant& plant() { return plant_; }
    const Plant& plant() const { return plant_; }
    const netbus::Bus& bus() const { return bus_; }
    const Historian& historian_log() const { return historian_; }
    const ProtocolMap& protocol_map() const { return map_; }
    StageControllers& controllers() { return controllers_; }

private:
    void tick_once();
    SensorSnapshot snapshot(Tick tick) const;

    PlantConfig cfg_;
    ProtocolMap map_;
    std::uint64_t map_hash_;
    Plant plant_;
    StageControllers controllers_;
    netbus::Bus bus_;
    Historian historian_;
    std::array<SafetyRange, kSensorCount> safety_{};
    std::optional<netbus::FeatureVector> pending_spoof_;
};

/// Convenience: a testbed advanced past the start-up transient so sniffing
/// begins in steady operation. `phase` varies the settling time so repeated
/// trials observe different points of the control cycle.
std::unique_ptr<Testbed> make_settled_testbed(PlantConfig cfg, ProtocolMap map, int warmup_ticks,
                                              int phase = 0,
                                              Tick bus_retention = 512);

} // namespace aquafuzz::plantsim

#endif
