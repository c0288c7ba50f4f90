#include "doctest.h"

#include <sstream>

#include "aquafuzz/core/rng.hpp"
#include "aquafuzz/netbus/capture.hpp"
#include "aquafuzz/netbus/feature_vector.hpp"
#include "aquafuzz/plantsim/testbed.hpp"

using namespace aquafuzz;
using namespace aquafuzz::netbus;

namespace {

PacketRecord make_packet(int stage, PacketType type, Tick tick, std::uint8_t fill) {
    PacketRecord p;
    p.key = {stage, type};
    p.tick = tick;
    p.payload.assign(static_cast<std::size_t>(payload_bytes(type)), fill);
    return p;
}

std::vector<PacketRecord> one_of_each(Tick tick = 0) {
    std::vector<PacketRecord> out;
    for (int stage = 1; stage <= 4; ++stage)
        for (PacketType t : kAllPacketTypes)
            out.push_back(make_packet(stage, t, tick,
                                      static_cast<std::uint8_t>(stage * 16 + static_cast<int>(t))));
    return out;
}

std::vector<PacketRecord> random_capture(Rng& rng, int ticks) {
    std::vector<PacketRecord> out;
    for (Tick t = 0; t < ticks; ++t)
        for (int stage = 1; stage <= 4; ++stage)
            for (PacketType type : kAllPacketTypes) {
                PacketRecord p = make_packet(stage, type, t, 0);
                for (auto& b : p.payload) b = static_cast<std::uint8_t>(rng.next() & 0xff);
                if (rng.uniform() < 0.25) p.direction = Direction::Spoofed;
                out.push_back(std::move(p));
            }
    return out;
}

plantsim::PlantConfig quiet_config(std::uint64_t seed = 7) {
    plantsim::PlantConfig cfg;
    cfg.seed = seed;
    return cfg;
}

// Authoritative command bits of the default map, as test oracles only: the
// type-B open-latch is the last decoded MV command and the type-C override
// the last decoded pump command.
std::size_t mv_bit(int stage) { return FeatureVector::bit_index(stage, PacketType::B, 6, 0); }
std::size_t pump_bit(int stage) { return FeatureVector::bit_index(stage, PacketType::C, 5, 3); }

} // namespace

TEST_CASE("feature vector geometry") {
    CHECK(FeatureVector::kBits == 2752);
    CHECK(FeatureVector::block_offset(1, PacketType::A) == 0);
    CHECK(FeatureVector::block_offset(1, PacketType::B) == 80);
    CHECK(FeatureVector::block_offset(1, PacketType::C) == 336);
    CHECK(FeatureVector::block_offset(1, PacketType::D) == 512);
    CHECK(FeatureVector::block_offset(2, PacketType::A) == 688);
    CHECK(FeatureVector::bit_index(4, PacketType::D, 21, 7) == 2751);

    auto loc = FeatureVector::locate(2751);
    CHECK(loc.stage == 4);
    CHECK(loc.type == PacketType::D);
    CHECK(loc.byte == 21);
    CHECK(loc.bit == 7);
}

TEST_CASE("assemble uses first packet of each type in fixed order") {
    auto packets = one_of_each();
    FeatureVector v = assemble(packets);
    for (int stage = 1; stage <= 4; ++stage)
        for (PacketType t : kAllPacketTypes) {
            auto payload = v.payload(stage, t);
            for (auto b : payload) CHECK(b == stage * 16 + static_cast<int>(t));
        }
}

TEST_CASE("assemble ignores later duplicates") {
    auto packets = one_of_each();
    packets.push_back(make_packet(1, PacketType::A, 1, 0xff));
    FeatureVector v = assemble(packets);
    for (auto b : v.payload(1, PacketType::A)) CHECK(b == 0x10);
}

TEST_CASE("assemble reports the missing type") {
    auto packets = one_of_each();
    packets.erase(packets.begin() + 6);  // stage 2, type C
    try {
        assemble(packets);
        FAIL("expected MissingTypeError");
    } catch (const MissingTypeError& e) {
        CHECK(e.key.stage == 2);
        CHECK(e.key.type == PacketType::C);
    }
}

TEST_CASE("decompose splits at fixed boundaries") {
    FeatureVector v;
    auto zero = decompose(v);
    CHECK(zero[0].size() == 10);
    CHECK(zero[1].size() == 32);
    CHECK(zero[2].size() == 22);
    CHECK(zero[3].size() == 22);
    for (const auto& payload : zero)
        for (auto b : payload) CHECK(b == 0);

    v.flip(0);
    auto parts = decompose(v);
    CHECK(parts[0][0] == 0x01);  // stage 1, type A, byte 0
    for (int idx = 1; idx < 16; ++idx)
        for (auto b : parts[static_cast<std::size_t>(idx)]) CHECK(b == 0);
}

TEST_CASE("assemble/decompose are mutually inverse on random captures") {
    Rng rng(42);
    for (int iter = 0; iter < 200; ++iter) {
        auto packets = random_capture(rng, 1);
        FeatureVector v = assemble(packets);
        auto parts = decompose(v);
        for (const auto& p : packets)
            CHECK(parts[static_cast<std::size_t>(p.key.flat_index())] == p.payload);
        CHECK(assemble(packets) == v);
    }
}

TEST_CASE("feature vector hex round trip") {
    Rng rng(3);
    FeatureVector v;
    for (int i = 0; i < 400; ++i) v.flip(rng.below(FeatureVector::kBits));
    CHECK(FeatureVector::from_hex(v.to_hex()) == v);
    CHECK_THROWS_AS(FeatureVector::from_hex("abc"), BadLengthError);
}

TEST_CASE("capture file round trip") {
    Rng rng(11);
    auto packets = random_capture(rng, 10);
    CHECK(packets.size() == 160);

    std::stringstream ss;
    capture_write(ss, packets, 0xdeadbeefcafe0000ULL);
    Capture cap = capture_read(ss);
    CHECK(cap.protocol_map_hash == 0xdeadbeefcafe0000ULL);
    REQUIRE(cap.packets.size() == packets.size());
    for (std::size_t i = 0; i < packets.size(); ++i) {
        CHECK(cap.packets[i].tick == packets[i].tick);
        CHECK(cap.packets[i].key == packets[i].key);
        CHECK(cap.packets[i].direction == packets[i].direction);
        CHECK(cap.packets[i].payload == packets[i].payload);
    }
}

TEST_CASE("empty capture is a bare header") {
    std::stringstream ss;
    capture_write(ss, {}, 1);
    CHECK(ss.str().starts_with("# aquafuzz-capture v1 map="));
    Capture cap = capture_read(ss);
    CHECK(cap.packets.empty());
}

TEST_CASE("capture parse errors carry the line number") {
    std::stringstream ss;
    ss << "# aquafuzz-capture v1 map=0000000000000001\n";
    ss << "0,1,A,controller,00000000000000000000\n";
    ss << "0,9,A,controller,00000000000000000000\n";
    try {
        capture_read(ss);
        FAIL("expected CaptureParseError");
    } catch (const CaptureParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("one sniffed tick carries exactly 16 packets") {
    plantsim::Testbed bed(quiet_config());
    auto window = bed.sniff_window(1);
    CHECK(window.size() == 16);
    std::array<int, 16> seen{};
    for (const auto& p : window) seen[static_cast<std::size_t>(p.key.flat_index())]++;
    for (int n : seen) CHECK(n == 1);
}

TEST_CASE("ten sniffed ticks carry 160 packets in tick order") {
    plantsim::Testbed bed(quiet_config());
    auto window = bed.sniff_window(10);
    CHECK(window.size() == 160);
    for (std::size_t i = 1; i < window.size(); ++i) CHECK(window[i].tick >= window[i - 1].tick);
}

TEST_CASE("spoofed packets are tagged and win the tick") {
    plantsim::Testbed bed(quiet_config());
    bed.advance(50);
    FeatureVector p_o = assemble(bed.sniff_window(1));

    FeatureVector attack = p_o;
    attack.flip(mv_bit(1));
    bed.spoof(attack);
    auto window = bed.sniff_window(1);
    CHECK(window.size() == 32);
    int spoofed = 0;
    for (const auto& p : window)
        if (p.direction == Direction::Spoofed) ++spoofed;
    CHECK(spoofed == 16);
    // The plant decoded the spoofed MV command, not the controller's.
    CHECK(bed.plant().actuator(ActuatorId::MV101));
}

TEST_CASE("spoofing the sniffed vector back is behaviour-neutral") {
    plantsim::PlantConfig cfg = quiet_config(21);
    plantsim::Testbed spoofed(cfg);
    plantsim::Testbed control(cfg);
    spoofed.advance(100);
    control.advance(100);

    FeatureVector p_o = assemble(spoofed.sniff_window(1));
    control.advance(1);
    for (int i = 0; i < 5; ++i) {
        spoofed.spoof(p_o);
        spoofed.advance(1);
        control.advance(1);
        for (SensorId id : kAllSensors)
            CHECK(spoofed.true_sensor_value(id) == doctest::Approx(control.true_sensor_value(id)).epsilon(1e-12));
    }
}

TEST_CASE("a flipped MV command changes the flow within five ticks") {
    plantsim::PlantConfig cfg = quiet_config(5);
    cfg.noise_enabled = false;
    plantsim::Testbed bed(cfg);
    bed.advance(50);
    REQUIRE(bed.true_sensor_value(SensorId::FIT101) == 0.0);  // MV101 closed at start-up

    FeatureVector p_o = assemble(bed.sniff_window(1));
    FeatureVector attack = p_o;
    attack.flip(mv_bit(1));
    double before = bed.true_sensor_value(SensorId::FIT101);
    for (int i = 0; i < 5; ++i) {
        bed.spoof(attack);
        bed.advance(1);
    }
    // Mass balance oracle: the valve alone admits the base flow.
    CHECK(bed.true_sensor_value(SensorId::FIT101) == doctest::Approx(2.0));
    CHECK(before == 0.0);
}

TEST_CASE("corrupting every magic byte leaves all actuators untouched") {
    plantsim::Testbed bed(quiet_config());
    bed.advance(80);
    FeatureVector p_o = assemble(bed.sniff_window(1));

    std::array<bool, kActuatorCount> before{};
    for (ActuatorId a : kAllActuators)
        before[static_cast<std::size_t>(a)] = bed.plant().actuator(a);

    FeatureVector corrupt = p_o;
    for (int stage = 1; stage <= 4; ++stage)
        for (PacketType t : kAllPacketTypes)
            corrupt.flip(FeatureVector::bit_index(stage, t, 0, 0));
    // Also flip command bits so any accepted packet would show up.
    for (int stage = 1; stage <= 4; ++stage) {
        corrupt.flip(mv_bit(stage));
        corrupt.flip(pump_bit(stage));
    }
    bed.spoof(corrupt);
    bed.advance(1);
    for (ActuatorId a : kAllActuators)
        CHECK(bed.plant().actuator(a) == before[static_cast<std::size_t>(a)]);
}

TEST_CASE("sniffing an empty window fails loudly") {
    plantsim::Testbed bed(quiet_config());
    CHECK_THROWS_AS(bed.sniff_window(0), EmptyWindowError);
}
