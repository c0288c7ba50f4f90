#ifndef AQUAFUZZ_NETBUS_BUS_HPP
#define AQUAFUZZ_NETBUS_BUS_HPP

#include <array>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "aquafuzz/netbus/feature_vector.hpp"
#include "aquafuzz/netbus/packet.hpp"

namespace aquafuzz::netbus {

struct EmptyWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// In-process packet bus between controllers and the plant. The simulation
/// loop owns it and publishes in tick order; when both the controller and a
/// spoofer emit the same type within a tick, the plant decodes the packet
/// published last (last-writer-wins).
///
/// Retention is bounded: entries older than `retention_ticks` before the
/// newest tick are dropped. Long experiments keep memory flat; standalone
/// capture runs set it to unlimited.
class Bus {
public:
    explicit Bus(Tick retention_ticks = std::numeric_limits<Tick>::max())
        : retention_(retention_ticks) {}

    void publish(PacketRecord p) {
        p.validate();
        if (p.tick > newest_) newest_ = p.tick;
        log_.push_back(std::move(p));
        prune();
    }

    const std::deque<PacketRecord>& log() const { return log_; }

    /// All traffic with tick in [from, to], in publication order.
    std::vector<PacketRecord> window(Tick from, Tick to) const;

    /// The winning packet per type for a tick: the last one published.
    std::array<const PacketRecord*, 16> winners(Tick tick) const;

    void clear() { log_.clear(); }

private:
    void prune() {
        while (!log_.empty() && log_.front().tick < newest_ - retention_)
            log_.pop_front();
    }

    std::deque<PacketRecord> log_;
    Tick retention_;
    Tick newest_ = 0;
};

/// The attacker's only handle on the plant: sniff traffic, spoof packets,
/// and observe sensor readings. Implementations advance the simulation;
/// calls are made between ticks (single-owner, no concurrent mutation).
class PlantLink {
public:
    virtual ~PlantLink() = default;

    /// Advance `ticks` ticks and return all bus traffic emitted during them.
    /// Throws EmptyWindowError if the window carried no packets.
    virtual std::vector<PacketRecord> sniff_window(int ticks) = 0;

    /// Queue a spoof: the 16 decomposed packets are injected on the next tick,
    /// taking precedence over the controller's packets of the same types.
    virtual void spoof(const FeatureVector& v) = 0;

    /// Current (noisy) reading of a sensor, as the attacker observes it.
    virtual SensorReading read_sensor(SensorId id) = 0;

    /// Recorded reading at an earlier tick (historian access).
    virtual SensorReading historian(SensorId id, Tick tick) const = 0;

    /// Ground-truth value, used to judge whether an attack really succeeded.
    virtual double true_sensor_value(SensorId id) const = 0;

    virtual Tick now() const = 0;
    virtual void advance(int ticks) = 0;

    virtual const SafetyRange& safety(SensorId id) const = 0;

    /// Fingerprint of the plant's protocol map. Only the hash crosses this
    /// interface; the map itself never leaves the plant side.
    virtual std::uint64_t protocol_map_hash() const = 0;
};

} // namespace aquafuzz::netbus

#endif
