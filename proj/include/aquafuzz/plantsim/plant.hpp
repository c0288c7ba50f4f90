#ifndef AQUAFUZZ_PLANTSIM_PLANT_HPP
#define AQUAFUZZ_PLANTSIM_PLANT_HPP

#include <array>
#include <deque>
#include <string>

#include "aquafuzz/core/rng.hpp"
#include "aquafuzz/core/types.hpp"
#include "aquafuzz/netbus/packet.hpp"
#include "aquafuzz/plantsim/protocol_map.hpp"

namespace aquafuzz::plantsim {

/// Physical and control parameters of the four-stage plant. The defaults are
/// sized so one simulation tick is one second, 1 m^3/h of net flow moves a
/// tank level by 0.5 mm/s, and every safety threshold is reachable within
/// roughly a hundred ticks of sustained manipulation.
struct PlantConfig {
    std::uint64_t seed = 1;

    double level_rate = 0.5;  // mm/s of tank level per m^3/h of net flow

    // Per-stage transfer line: valve-gated base flow plus pump contribution.
    // Stages 1, 2 and 4 carry high-rate flush pumps that the normal control
    // program never runs; stage 3's pump is a booster cycled by the PLC.
    std::array<double, 4> base_flow = {2.0, 2.0, 0.6, 1.2};
    std::array<double, 4> pump_flow = {10.0, 10.0, 0.9, 10.0};

    // Nominal (max normal) line rates, the anchor for flow safety thresholds.
    std::array<double, 4> nominal_flow = {2.0, 2.0, 1.5, 1.2};

    // Stage-2 discharge at flush rate pressurises the stage-3 intake and
    // lifts its line flow by this factor.
    double surge_factor = 1.5;
    double surge_trigger = 10.0;  // m^3/h on the stage-2 line

    double dpit_coeff = 8.0;  // kPa per (m^3/h)^2 across the stage-3 filter

    double level_min = 0.0;
    double level_max = 1200.0;
    std::array<double, 3> init_level = {650.0, 650.0, 650.0};

    // Safety thresholds and operational bands.
    double lit_safety_low = 250.0;
    double lit_safety_high = 1100.0;
    double lit_op_low = 500.0;
    double lit_op_high = 800.0;
    double fit_safety_factor = 1.25;  // H_s = factor * nominal, L_s = 0
    double dpit_safety_low = 2.0;
    double dpit_safety_high = 30.0;
    double dpit_op_low = 2.5;
    double dpit_op_high = 26.0;

    // Controller setpoints not tied to the operational band.
    double drain_min = 300.0;       // upstream tank protection
    double t401_band_low = 610.0;   // stage-3 booster / stage-4 valve band
    double t401_band_high = 690.0;
    double t401_emergency_high = 1000.0;

    bool noise_enabled = true;
    double noise_level = 1.0;     // mm
    double noise_flow = 0.02;     // m^3/h
    double noise_pressure = 0.1;  // kPa

    SafetyRange safety(SensorId id) const;

    static PlantConfig from_json_file(const std::string& path);
    std::string to_json() const;
    void to_json_file(const std::string& path) const;
};

enum class ApplyResult { Applied, Rejected };

struct SafetyEvent {
    Tick tick = 0;
    SensorId sensor{};
    double value = 0.0;
    bool high_side = false;
};

/// Tank levels, line flows, and actuator states of the plant, advanced one
/// tick at a time. Packet decoding is the only way commands reach it.
class Plant {
public:
    explicit Plant(PlantConfig cfg);

    /// Structural payload validation followed by command application.
    /// A magic mismatch rejects the packet and leaves all state untouched;
    /// reserved bits are ignored.
    ApplyResult apply_packet(const netbus::PacketRecord& packet, const ProtocolMap& map);

    /// Advance the physics one tick (dt fixed at one second).
    void step();

    Tick tick() const { return tick_; }

    double level(int tank) const { return levels_[static_cast<std::size_t>(tank)]; }  // 0:T101 1:T301 2:T401
    bool actuator(ActuatorId id) const { return actuators_[static_cast<std::size_t>(id)]; }
    void set_actuator(ActuatorId id, bool on) { actuators_[static_cast<std::size_t>(id)] = on; }

    /// Line flows implied by the current actuator state, m^3/h.
    std::array<double, 4> flows() const;
    double dpit() const;

    /// Ground-truth sensor value at the current state.
    double true_value(SensorId id) const;

    /// True value plus zero-mean noise, deterministic in (seed, sensor, tick).
    double read_value(SensorId id, Tick tick) const;

    const PlantConfig& config() const { return cfg_; }

    const std::deque<SafetyEvent>& recent_safety_events() const { return events_; }
    std::uint64_t safety_event_count() const { return event_count_; }

private:
    void record_crossings();

    PlantConfig cfg_;
    std::array<double, 3> levels_;
    std::array<bool, kActuatorCount> actuators_{};
    Tick tick_ = 0;
    std::deque<SafetyEvent> events_;
    std::uint64_t event_count_ = 0;
};

} // namespace aquafuzz::plantsim

#endif
