#include "aquafuzz/plantsim/plant.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace aquafuzz::plantsim {

SafetyRange PlantConfig::safety(SensorId id) const {
    SafetyRange r;
    r.id = id;
    switch (kind_of(id)) {
    case SensorKind::Level:
        r.low = lit_safety_low;
        r.high = lit_safety_high;
        r.op_low = lit_op_low;
        r.op_high = lit_op_high;
        break;
    case SensorKind::Flow: {
        double nominal = nominal_flow[static_cast<std::size_t>(stage_of(id) - 1)];
        r.low = 0.0;
        r.high = fit_safety_factor * nominal;
        r.op_low = 0.05 * nominal;
        r.op_high = 1.1 * nominal;
        break;
    }
    case SensorKind::Pressure:
        r.low = dpit_safety_low;
        r.high = dpit_safety_high;
        r.op_low = dpit_op_low;
        r.op_high = dpit_op_high;
        break;
    }
    r.validate();
    return r;
}

Plant::Plant(PlantConfig cfg) : cfg_(cfg), levels_(cfg.init_level) {
    // Normal resting point: stage-3 line flowing, stage-4 line open.
    set_actuator(ActuatorId::MV301, true);
    set_actuator(ActuatorId::P301, true);
    set_actuator(ActuatorId::MV401, true);
}

ApplyResult Plant::apply_packet(const netbus::PacketRecord& packet, const ProtocolMap& map) {
    packet.validate();
    const PacketSpec& spec = map.spec(packet.key.stage, packet.key.type);
    if (packet.payload[static_cast<std::size_t>(spec.magic_byte)] != spec.magic)
        return ApplyResult::Rejected;
    for (const CommandField& f : spec.commands) {
        bool on = (packet.payload[static_cast<std::size_t>(f.byte)] >> f.bit) & 1;
        actuators_[static_cast<std::size_t>(f.actuator)] = on;
    }
    return ApplyResult::Applied;
}

std::array<double, 4> Plant::flows() const {
    auto on = [&](ActuatorId id) { return actuator(id) ? 1.0 : 0.0; };
    std::array<double, 4> q{};
    q[0] = on(ActuatorId::MV101) * (cfg_.base_flow[0] + cfg_.pump_flow[0] * on(ActuatorId::P101));
    q[1] = on(ActuatorId::MV201) * (cfg_.base_flow[1] + cfg_.pump_flow[1] * on(ActuatorId::P201));
    q[2] = on(ActuatorId::MV301) * (cfg_.base_flow[2] + cfg_.pump_flow[2] * on(ActuatorId::P301));
    if (q[1] >= cfg_.surge_trigger) q[2] *= cfg_.surge_factor;
    q[3] = on(ActuatorId::MV401) * (cfg_.base_flow[3] + cfg_.pump_flow[3] * on(ActuatorId::P401));
    return q;
}

double Plant::dpit() const {
    double q3 = flows()[2];
    return cfg_.dpit_coeff * q3 * q3;
}

void Plant::step() {
    std::array<double, 4> q = flows();
    levels_[0] += cfg_.level_rate * (q[0] - q[1]);
    levels_[1] += cfg_.level_rate * (q[1] - q[2]);
    levels_[2] += cfg_.level_rate * (q[2] - q[3]);
    ++tick_;
    record_crossings();
    for (double& l : levels_) l = std::clamp(l, cfg_.level_min, cfg_.level_max);
}

void Plant::record_crossings() {
    // Crossings are judged on the unclamped values, before physical limits
    // pin the level.
    for (SensorId id : kAllSensors) {
        double v = true_value(id);
        SafetyRange r = cfg_.safety(id);
        bool high = v >= r.high;
        bool low = v <= r.low && kind_of(id) != SensorKind::Flow;  // flow low threshold is 0, not counted
        if (high || low) {
            ++event_count_;
            events_.push_back(SafetyEvent{tick_, id, v, high});
            while (events_.size() > 4096) events_.pop_front();
        }
    }
}

double Plant::true_value(SensorId id) const {
    std::array<double, 4> q = flows();
    switch (id) {
    case SensorId::FIT101: return q[0];
    case SensorId::FIT201: return q[1];
    case SensorId::FIT301: return q[2];
    case SensorId::FIT401: return q[3];
    case SensorId::DPIT301: return dpit();
    case SensorId::LIT101: return levels_[0];
    case SensorId::LIT301: return levels_[1];
    case SensorId::LIT401: return levels_[2];
    }
    return 0.0;
}

double Plant::read_value(SensorId id, Tick tick) const {
    double v = true_value(id);
    if (cfg_.noise_enabled) {
        double sigma = 0.0;
        switch (kind_of(id)) {
        case SensorKind::Level: sigma = cfg_.noise_level; break;
        case SensorKind::Flow: sigma = cfg_.noise_flow; break;
        case SensorKind::Pressure: sigma = cfg_.noise_pressure; break;
        }
        Rng rng = Rng::substream(hash_mix(cfg_.seed, static_cast<std::uint64_t>(id)),
                                 "sensor-noise", static_cast<std::uint64_t>(tick));
        v += sigma * rng.gauss();
    }
    if (kind_of(id) == SensorKind::Level)
        return std::clamp(v, cfg_.level_min, cfg_.level_max);
    return std::max(v, 0.0);
}

std::string PlantConfig::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["seed"] = seed;
    j["level_rate"] = level_rate;
    j["base_flow"] = base_flow;
    j["pump_flow"] = pump_flow;
    j["nominal_flow"] = nominal_flow;
    j["surge_factor"] = surge_factor;
    j["surge_trigger"] = surge_trigger;
    j["dpit_coeff"] = dpit_coeff;
    j["level_min"] = level_min;
    j["level_max"] = level_max;
    j["init_level"] = init_level;
    j["lit_safety_low"] = lit_safety_low;
    j["lit_safety_high"] = lit_safety_high;
    j["lit_op_low"] = lit_op_low;
    j["lit_op_high"] = lit_op_high;
    j["fit_safety_factor"] = fit_safety_factor;
    j["dpit_safety_low"] = dpit_safety_low;
    j["dpit_safety_high"] = dpit_safety_high;
    j["dpit_op_low"] = dpit_op_low;
    j["dpit_op_high"] = dpit_op_high;
    j["drain_min"] = drain_min;
    j["t401_band_low"] = t401_band_low;
    j["t401_band_high"] = t401_band_high;
    j["t401_emergency_high"] = t401_emergency_high;
    j["noise_enabled"] = noise_enabled;
    j["noise_level"] = noise_level;
    j["noise_flow"] = noise_flow;
    j["noise_pressure"] = noise_pressure;
    return j.dump(2);
}

void PlantConfig::to_json_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write plant config: " + path);
    f << to_json() << "\n";
}

PlantConfig PlantConfig::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open plant config: " + path);
    nlohmann::json j = nlohmann::json::parse(f);
    if (j.value("version", 0) != 1) throw std::runtime_error("plant config: unsupported version");

    PlantConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("seed", c.seed);
    get("level_rate", c.level_rate);
    get("base_flow", c.base_flow);
    get("pump_flow", c.pump_flow);
    get("nominal_flow", c.nominal_flow);
    get("surge_factor", c.surge_factor);
    get("surge_trigger", c.surge_trigger);
    get("dpit_coeff", c.dpit_coeff);
    get("level_min", c.level_min);
    get("level_max", c.level_max);
    get("init_level", c.init_level);
    get("lit_safety_low", c.lit_safety_low);
    get("lit_safety_high", c.lit_safety_high);
    get("lit_op_low", c.lit_op_low);
    get("lit_op_high", c.lit_op_high);
    get("fit_safety_factor", c.fit_safety_factor);
    get("dpit_safety_low", c.dpit_safety_low);
    get("dpit_safety_high", c.dpit_safety_high);
    get("dpit_op_low", c.dpit_op_low);
    get("dpit_op_high", c.dpit_op_high);
    get("drain_min", c.drain_min);
    get("t401_band_low", c.t401_band_low);
    get("t401_band_high", c.t401_band_high);
    get("t401_emergency_high", c.t401_emergency_high);
    get("noise_enabled", c.noise_enabled);
    get("noise_level", c.noise_level);
    get("noise_flow", c.noise_flow);
    get("noise_pressure", c.noise_pressure);
    return c;
}

} // namespace aquafuzz::plantsim
