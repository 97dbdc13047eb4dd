/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The ofhct Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ofh/codec/capture.hpp"
#include "ofh/cuplane/analyzer.hpp"
#include "ofh/cuplane/beam.hpp"
#include "ofh/cuplane/flows.hpp"
#include "ofh/cuplane/grid.hpp"
#include "ofh/cuplane/pn23.hpp"

using namespace ofh;
using namespace ofh::cuplane;

namespace {

// Bit-list form of the same recurrence, y[k+23] = y[k] ^ y[k+5], with the
// seed's most significant bit as y[0].
std::vector<std::uint8_t> pn23_oracle(std::uint32_t seed, std::size_t n) {
    std::vector<std::uint8_t> y;
    for (int i = 0; i < 23; ++i) y.push_back(static_cast<std::uint8_t>((seed >> (22 - i)) & 1u));
    while (y.size() < n) y.push_back(y[y.size() - 23] ^ y[y.size() - 18]);
    y.resize(n);
    return y;
}

std::string bits_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    for (auto b : bits) s.push_back(static_cast<char>('0' + b));
    return s;
}

} // namespace

TEST(Pn23, AllOnesSeedStartsWithOne) {
    EXPECT_EQ(pn23_bits(0x7FFFFF, 1), std::vector<std::uint8_t>{1});
}

TEST(Pn23, FirstBitsFrozen) {
    EXPECT_EQ(bits_string(pn23_bits(0x7FFFFF, 64)),
              "1111111111111111111111100000000000000000011111000000000000011111");
    EXPECT_EQ(bits_string(pn23_bits(0x000001, 64)),
              "0000000000000000000000100000000000000000100001000000000000100000");
}

TEST(Pn23, MatchesListRecurrence) {
    for (std::uint32_t seed : {0x7FFFFFu, 0x1u, 0x2A5A5Au, 0x400000u}) {
        EXPECT_EQ(pn23_bits(seed, 5000), pn23_oracle(seed, 5000)) << std::hex << seed;
    }
}

TEST(Pn23, ZeroSeedRejected) {
    EXPECT_THROW(Pn23(0), CuplaneError);
    EXPECT_THROW(pn23_bits(1u << 23, 4), CuplaneError);  // only the low 23 bits count
}

TEST(Pn23, NoStateRepeatsWithinAMillionSteps) {
    std::vector<bool> seen(Pn23::kMask + 1);
    for (std::uint32_t seed : {0x7FFFFFu, 0x000001u, 0x13579Bu}) {
        std::fill(seen.begin(), seen.end(), false);
        Pn23 gen(seed);
        for (int step = 0; step < 1'000'000; ++step) {
            ASSERT_FALSE(seen[gen.state()]) << "repeat at step " << step;
            ASSERT_NE(gen.state(), 0u);
            seen[gen.state()] = true;
            gen.next();
        }
    }
}

TEST(Constellation, QpskZeroBitsAtPlusPlus) {
    const std::uint8_t bits[2] = {0, 0};
    const Cplx p = map_bits(Modulation::qpsk, bits);
    EXPECT_DOUBLE_EQ(p.real(), 1.0 / std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(p.imag(), 1.0 / std::sqrt(2.0));
}

TEST(Constellation, UnitAveragePowerAndDistinctPoints) {
    for (auto m : {Modulation::qpsk, Modulation::qam64, Modulation::qam256}) {
        const int width = bits_per_symbol(m);
        double power = 0.0;
        std::vector<Cplx> points;
        for (int v = 0; v < (1 << width); ++v) {
            std::uint8_t bits[8];
            for (int k = 0; k < width; ++k) bits[k] = static_cast<std::uint8_t>((v >> (width - 1 - k)) & 1);
            points.push_back(map_bits(m, bits));
            power += std::norm(points.back());
        }
        EXPECT_NEAR(power / points.size(), 1.0, 1e-12) << to_string(m);
        for (std::size_t a = 0; a < points.size(); ++a) {
            for (std::size_t b = a + 1; b < points.size(); ++b) EXPECT_GT(std::abs(points[a] - points[b]), 1e-6);
        }
    }
}

// Gray mapping: nearest neighbours differ in exactly one bit.
TEST(Constellation, GrayNeighboursDifferInOneBit) {
    for (auto m : {Modulation::qam64, Modulation::qam256}) {
        const int width = bits_per_symbol(m);
        std::vector<Cplx> points(1u << width);
        for (int v = 0; v < (1 << width); ++v) {
            std::uint8_t bits[8];
            for (int k = 0; k < width; ++k) bits[k] = static_cast<std::uint8_t>((v >> (width - 1 - k)) & 1);
            points[static_cast<std::size_t>(v)] = map_bits(m, bits);
        }
        const double norm = m == Modulation::qam64 ? std::sqrt(42.0) : std::sqrt(170.0);
        for (int a = 0; a < (1 << width); ++a) {
            for (int b = 0; b < (1 << width); ++b) {
                if (std::abs(std::abs(points[a] - points[b]) * norm - 2.0) < 1e-9) {
                    EXPECT_EQ(__builtin_popcount(static_cast<unsigned>(a ^ b)), 1) << a << " " << b;
                }
            }
        }
    }
}

TEST(Grid, EmptyAllocationIsAllZero) {
    CarrierConfig carrier;
    const auto grid = generate_grid(carrier, WaveformSpec{}, Allocation{0, 0, 0, 14});
    for (int s = 0; s < kSymbolsPerSlot; ++s) EXPECT_EQ(grid.populated(s), 0u);
}

TEST(Grid, FullBandPopulatesEveryRe) {
    CarrierConfig carrier;
    const auto grid = generate_grid(carrier, WaveformSpec{}, Allocation{0, 133, 0, 14});
    for (int s = 0; s < kSymbolsPerSlot; ++s) EXPECT_EQ(grid.populated(s), 133u * 12u);
}

TEST(Grid, PartialAllocationLeavesTheRestZero) {
    CarrierConfig carrier;
    const auto grid = generate_grid(carrier, WaveformSpec{}, Allocation{10, 5, 2, 3});
    for (int s = 0; s < kSymbolsPerSlot; ++s) {
        EXPECT_EQ(grid.populated(s), (s >= 2 && s < 5) ? 60u : 0u) << s;
    }
    EXPECT_EQ(grid.at(2, 119), codec::IqSample{});
    EXPECT_NE(grid.at(2, 120), codec::IqSample{});
    EXPECT_NE(grid.at(2, 179), codec::IqSample{});
    EXPECT_EQ(grid.at(2, 180), codec::IqSample{});
}

TEST(Grid, OutOfRangeAllocationRejected) {
    CarrierConfig carrier;
    EXPECT_THROW(generate_grid(carrier, WaveformSpec{}, Allocation{130, 4, 0, 14}), CuplaneError);
    EXPECT_THROW(generate_grid(carrier, WaveformSpec{}, Allocation{0, 4, 10, 5}), CuplaneError);
    EXPECT_THROW(generate_grid(carrier, WaveformSpec{}, Allocation{-1, 4, 0, 14}), CuplaneError);
}

TEST(Grid, RmsTargetAndBitOrder) {
    CarrierConfig carrier;
    WaveformSpec wf;
    wf.modulation = Modulation::qam256;
    const auto grid = generate_grid(carrier, wf, Allocation{0, 133, 0, 14});
    double power = 0.0;
    for (const auto& v : grid.values()) power += std::norm(v);
    EXPECT_NEAR(std::sqrt(power / (133.0 * 12 * 14)), 4096.0, 4096.0 * 0.02);

    // First RE consumes the first eight PN23 bits.
    const auto bits = pn23_bits(wf.seed, 8);
    const Cplx p = map_bits(Modulation::qam256, bits.data()) * 4096.0;
    EXPECT_EQ(grid.at(0, 0).i, static_cast<std::int16_t>(std::nearbyint(p.real())));
    EXPECT_EQ(grid.at(0, 0).q, static_cast<std::int16_t>(std::nearbyint(p.imag())));
}

TEST(Grid, SameSeedSameGrid) {
    CarrierConfig carrier;
    WaveformSpec wf;
    wf.seed = 0x123456;
    const Allocation a{0, 20, 0, 14};
    EXPECT_EQ(generate_grid(carrier, wf, a), generate_grid(carrier, wf, a));
    wf.seed = 0x123457;
    EXPECT_FALSE(generate_grid(carrier, wf, a) == generate_grid(carrier, WaveformSpec{.seed = 0x123456}, a));
}

TEST(Grid, CaptureExportOneRecordPerSymbol) {
    CarrierConfig carrier;
    const auto grid = generate_grid(carrier, WaveformSpec{}, Allocation{0, 2, 0, 14});
    std::stringstream buf;
    export_grid_capture(buf, grid, 1000);
    const auto records = codec::read_capture(buf);
    ASSERT_EQ(records.size(), 14u);
    EXPECT_EQ(records[3].time_ns, 1003u);
    EXPECT_EQ(records[0].bytes.size(), 133u * 12 * 4);
    const auto v = grid.at(0, 0);
    EXPECT_EQ(static_cast<std::int16_t>((records[0].bytes[0] << 8) | records[0].bytes[1]), v.i);
    EXPECT_EQ(static_cast<std::int16_t>((records[0].bytes[2] << 8) | records[0].bytes[3]), v.q);
}

TEST(Timing, SlotAddressing) {
    CarrierConfig carrier;
    EXPECT_EQ(carrier.slot_duration_ns(), 500'000);
    EXPECT_EQ(slot_address(carrier, 0), (SlotAddress{0, 0, 0}));
    EXPECT_EQ(slot_address(carrier, 21), (SlotAddress{1, 0, 1}));
    EXPECT_EQ(slot_address(carrier, 37), (SlotAddress{1, 8, 1}));
    EXPECT_EQ(slot_address(carrier, 20 * 256 + 3), (SlotAddress{0, 1, 1}));
    EXPECT_EQ(symbol_time(carrier, 2, 0), 1'000'000);
    EXPECT_EQ(symbol_time(carrier, 2, 7), 1'250'000);
    EXPECT_EQ(symbol_time(carrier, 0, 1), 35'714);
}

TEST(Timing, ResolveAcrossFrameWrap) {
    CarrierConfig carrier;
    const std::int64_t cycle = 256 * 20;
    for (std::int64_t slot : {std::int64_t{5}, cycle - 1, cycle, cycle + 7, 3 * cycle + 100}) {
        const auto addr = slot_address(carrier, slot);
        for (sim::SimTime delta : {-800'000LL, 0LL, 900'000LL}) {
            EXPECT_EQ(resolve_slot(carrier, addr, slot_start(carrier, slot) + delta), slot) << slot;
        }
    }
}

TEST(Timing, TddPattern) {
    CarrierConfig carrier;
    EXPECT_EQ(carrier.slot_kind(0), SlotKind::downlink);
    EXPECT_EQ(carrier.slot_kind(3), SlotKind::special);
    EXPECT_EQ(carrier.slot_kind(4), SlotKind::uplink);
    EXPECT_EQ(carrier.slot_kind(9), SlotKind::uplink);
    EXPECT_TRUE(carrier.carries(3, codec::DataDirection::uplink));
    EXPECT_TRUE(carrier.carries(3, codec::DataDirection::downlink));
    EXPECT_FALSE(carrier.carries(4, codec::DataDirection::downlink));
    EXPECT_FALSE(carrier.carries(1, codec::DataDirection::uplink));
}

TEST(Timing, ConfigValidation) {
    CarrierConfig carrier;
    EXPECT_NO_THROW(carrier.validate());
    carrier.scs_khz = 15;
    EXPECT_THROW(carrier.validate(), CuplaneError);
    carrier = CarrierConfig{};
    carrier.tdd_pattern = "DDXU";
    EXPECT_THROW(carrier.validate(), CuplaneError);
    DelayWindow w;
    w.t2a_min_up_ns = w.t2a_max_up_ns;
    EXPECT_THROW(w.validate(), CuplaneError);
}

TEST(Window, ClosedInterval) {
    EXPECT_EQ(classify(100, 100, 400), Arrival::on_time);
    EXPECT_EQ(classify(400, 100, 400), Arrival::on_time);
    EXPECT_EQ(classify(99, 100, 400), Arrival::late);
    EXPECT_EQ(classify(401, 100, 400), Arrival::early);
    EXPECT_EQ(classify(-5, 100, 400), Arrival::late);
}

namespace {

std::vector<std::vector<Cplx>> single_sample(const std::vector<Cplx>& weights) {
    std::vector<std::vector<Cplx>> s;
    for (const auto& w : weights) s.push_back({w});
    return s;
}

// |sum_n w_n e^{j pi n sin t}|^2 for steering weights toward t0: a
// Dirichlet kernel in u = sin t - sin t0.
double dirichlet(double theta, double theta0, int n) {
    const double u = std::sin(theta * std::numbers::pi / 180) - std::sin(theta0 * std::numbers::pi / 180);
    const double den = std::sin(std::numbers::pi * u / 2);
    if (std::abs(den) < 1e-12) return n;
    const double num = std::sin(n * std::numbers::pi * u / 2);
    return num * num / (n * den * den);
}

TEST(Grid, EveryOtherPrbAllocation) {
    CarrierConfig carrier;
    const Allocation alloc{10, 5, 0, 1, true};
    const auto grid = generate_grid(carrier, {}, alloc);
    EXPECT_EQ(grid.populated(0), 5u * 12u);
    for (int prb = 10; prb < 20; ++prb) {
        const auto samples = grid.prb(0, prb);
        const bool any = std::any_of(samples.begin(), samples.end(), [](const codec::IqSample& v) { return v.i != 0 || v.q != 0; });
        EXPECT_EQ(any, prb % 2 == 0) << prb;
    }
    EXPECT_THROW(generate_grid(carrier, {}, Allocation{125, 5, 0, 1, true}), CuplaneError);
    EXPECT_NO_THROW(generate_grid(carrier, {}, Allocation{124, 5, 0, 1, true}));
}

TEST(Flow, EveryOtherPrbSetsRbOnBothPlanes) {
    CarrierConfig carrier;
    FlowBuilder builder(carrier, {});
    builder.set_carrier_active(true);
    const Allocation alloc{10, 5, 0, 2, true};
    const auto grid = generate_grid(carrier, {}, alloc);
    const auto flow = builder.dl_slot(0, grid, alloc);
    const auto cfg = carrier.codec_config();
    const auto c = codec::decode_cplane(flow[0].frame, cfg);
    EXPECT_TRUE(c.sections[0].rb);
    EXPECT_EQ(c.sections[0].num_prb, 5);
    const auto u = codec::decode_uplane(flow[1].frame, cfg);
    ASSERT_EQ(u.sections[0].prbs.size(), 5u);
    EXPECT_TRUE(u.sections[0].rb);
    EXPECT_EQ(u.sections[0].prbs[1], codec::bfp_compress(grid.prb(0, 12)));
}

} // namespace

TEST(Beam, ArrayFactorMatchesClosedForm) {
    for (double t0 : {-45.0, -12.5, 0.0, 30.0}) {
        const auto signals = single_sample(steering_weights(t0, 32));
        for (int t = -90; t <= 90; t += 7) {
            EXPECT_NEAR(array_factor(signals, t), dirichlet(t, t0, 32), 1e-9) << t0 << " " << t;
        }
    }
}

TEST(Beam, SteeredThirtyDegrees) {
    const auto d = detect_beam_direction(single_sample(steering_weights(30.0, 32)));
    ASSERT_TRUE(d.azimuth_deg);
    EXPECT_NEAR(*d.azimuth_deg, 30.0, 1.0);
}

TEST(Beam, InPhaseIsBroadside) {
    const auto d = detect_beam_direction(single_sample(std::vector<Cplx>(32, Cplx{1.0, 0.0})));
    ASSERT_TRUE(d.azimuth_deg);
    EXPECT_EQ(*d.azimuth_deg, 0.0);
}

TEST(Beam, SinglePortHasNoDominantBeam) {
    std::vector<Cplx> w(32);
    w[5] = Cplx{3.0, -1.0};
    const auto d = detect_beam_direction(single_sample(w));
    EXPECT_FALSE(d.azimuth_deg);
    EXPECT_NEAR(d.peak_to_average, 1.0, 1e-9);
    EXPECT_FALSE(detect_beam_direction(single_sample(std::vector<Cplx>(32))).azimuth_deg);
}

TEST(Beam, TieGoesToSmallerAngle) {
    // Two equal beams at +-20 degrees: symmetric array factor, positive wins.
    auto a = steering_weights(20.0, 32);
    const auto b = steering_weights(-20.0, 32);
    for (std::size_t n = 0; n < a.size(); ++n) a[n] += b[n];
    const auto d = detect_beam_direction(single_sample(a));
    ASSERT_TRUE(d.azimuth_deg);
    EXPECT_EQ(*d.azimuth_deg, 20.0);
}

TEST(Beam, SyntheticTable) {
    const auto table = BeamTable::synthetic();
    ASSERT_EQ(table.size(), 37u);
    EXPECT_TRUE(table.is_synthetic());
    EXPECT_EQ(table.find(1)->azimuth_deg, -45.0);
    EXPECT_EQ(table.find(19)->azimuth_deg, 0.0);
    EXPECT_EQ(table.find(37)->azimuth_deg, 45.0);
    EXPECT_EQ(table.find(38), nullptr);
    for (const auto& [id, e] : table.entries()) {
        double p = 0.0;
        for (const auto& w : e.weights) p += std::norm(w);
        EXPECT_NEAR(p, 1.0, 1e-12);
    }
    // Broadside entry: all ports equal phase.
    for (const auto& w : table.find(19)->weights) EXPECT_NEAR(std::arg(w), 0.0, 1e-12);
}

TEST(Beam, EveryTableEntryDetectedWithinOneDegree) {
    const auto table = BeamTable::synthetic();
    for (const auto& [id, e] : table.entries()) {
        const auto d = detect_beam_direction(single_sample(e.weights));
        ASSERT_TRUE(d.azimuth_deg) << id;
        EXPECT_LE(std::abs(*d.azimuth_deg - e.azimuth_deg), 1.0) << id;
    }
}

TEST(Beam, JsonRoundTrip) {
    const auto table = BeamTable::synthetic(8, -10, 10, 5);
    const auto back = BeamTable::from_json(table.to_json(), 8);
    ASSERT_EQ(back.size(), 5u);
    EXPECT_TRUE(back.is_synthetic());
    for (const auto& [id, e] : table.entries()) {
        const auto* f = back.find(id);
        ASSERT_NE(f, nullptr);
        EXPECT_EQ(f->azimuth_deg, e.azimuth_deg);
        for (std::size_t n = 0; n < e.weights.size(); ++n) EXPECT_NEAR(std::abs(f->weights[n] - e.weights[n]), 0, 1e-12);
    }
}

TEST(Beam, IngestNormalizesAndValidates) {
    const auto t = BeamTable::from_json(
        R"({"beams":[{"beam_id":7,"azimuth_deg":0,"weights":[[2,0],[2,0]]}]})", 2);
    EXPECT_FALSE(t.is_synthetic());
    EXPECT_NEAR(std::abs(t.find(7)->weights[0]), std::sqrt(0.5), 1e-12);
    EXPECT_THROW(BeamTable::from_json(R"({"beams":[{"beam_id":7,"azimuth_deg":0,"weights":[[0,0],[0,0]]}]})", 2),
                 CuplaneError);
    EXPECT_THROW(BeamTable::from_json(R"({"beams":[{"beam_id":7,"azimuth_deg":0,"weights":[[1,0]]}]})", 2),
                 CuplaneError);
    EXPECT_THROW(BeamTable::from_json(R"({"beams":[{"beam_id":0,"azimuth_deg":0,"weights":[[1,0],[1,0]]}]})", 2),
                 CuplaneError);
    EXPECT_THROW(BeamTable::from_json("not json", 2), CuplaneError);
}

namespace {

FlowBuilder active_builder() {
    FlowBuilder b(CarrierConfig{}, DelayWindow{});
    b.set_carrier_active(true);
    return b;
}

} // namespace

TEST(Flow, OneSlotOneSection) {
    auto b = active_builder();
    const CarrierConfig carrier;
    const Allocation a{0, 133, 0, 14};
    const auto grid = generate_grid(carrier, WaveformSpec{}, a);
    const auto flow = b.dl_slot(40, grid, a);
    ASSERT_EQ(flow.size(), 15u);
    EXPECT_EQ(flow[0].plane, Plane::control);
    for (std::size_t k = 1; k < flow.size(); ++k) {
        EXPECT_EQ(flow[k].plane, Plane::user);
        EXPECT_EQ(flow[k].symbol, static_cast<int>(k - 1));
    }
    const auto cfg = carrier.codec_config();
    const auto c = codec::decode_cplane(flow[0].frame, cfg);
    EXPECT_EQ(c.sections.size(), 1u);
    EXPECT_EQ(c.sections[0].num_prb, 133);
    EXPECT_EQ(c.sections[0].num_symbol, 14);
    EXPECT_EQ(c.frame_id, 2);
    // U-Plane payload is exactly the BFP-compressed grid.
    const auto u = codec::decode_uplane(flow[5].frame, cfg);
    EXPECT_EQ(u.symbol_id, 4);
    ASSERT_EQ(u.sections[0].prbs.size(), 133u);
    for (int prb = 0; prb < 133; ++prb) EXPECT_EQ(u.sections[0].prbs[prb], codec::bfp_compress(grid.prb(4, prb)));
}

TEST(Flow, MessagesInsideTheirWindows) {
    auto b = active_builder();
    const DelayWindow w;
    const Allocation a{0, 4, 0, 14};
    const auto flow = b.dl_slot(40, generate_grid(CarrierConfig{}, WaveformSpec{}, a), a);
    for (const auto& m : flow) {
        const auto adv = m.air_time - m.send_at;
        EXPECT_EQ(adv, m.advance);
        if (m.plane == Plane::control) {
            EXPECT_EQ(classify(adv, w.t2a_min_cp_ns, w.t2a_max_cp_ns), Arrival::on_time);
        } else {
            EXPECT_EQ(classify(adv, w.t2a_min_up_ns, w.t2a_max_up_ns), Arrival::on_time);
        }
    }
}

TEST(Flow, BeamIdWithoutExtension) {
    auto b = active_builder();
    const Allocation a{0, 4, 0, 14};
    const auto flow = b.dl_slot(40, generate_grid(CarrierConfig{}, WaveformSpec{}, a), a, BeamSpec{12, {}});
    const auto c = codec::decode_cplane(flow[0].frame, CarrierConfig{}.codec_config());
    EXPECT_EQ(c.sections[0].beam_id, 12);
    EXPECT_FALSE(c.sections[0].extension);
    EXPECT_TRUE(c.sections[0].beam_weights.empty());
}

TEST(Flow, InlineWeightsSetExtension) {
    auto b = active_builder();
    const Allocation a{0, 4, 0, 14};
    const auto weights = steering_weights(30.0, 32);
    const auto flow = b.dl_slot(40, generate_grid(CarrierConfig{}, WaveformSpec{}, a), a, BeamSpec{0, weights});
    const auto c = codec::decode_cplane(flow[0].frame, CarrierConfig{}.codec_config());
    EXPECT_TRUE(c.sections[0].extension);
    ASSERT_EQ(c.sections[0].beam_weights.size(), 32u);
    const auto back = normalize_weights(dequantize_weights(c.sections[0].beam_weights));
    for (std::size_t n = 0; n < 32; ++n) EXPECT_LT(std::abs(back[n] - weights[n]), 1e-4);
}

TEST(Flow, InactiveCarrierAndTddRejected) {
    FlowBuilder b(CarrierConfig{}, DelayWindow{});
    const Allocation a{0, 4, 0, 14};
    const auto grid = generate_grid(CarrierConfig{}, WaveformSpec{}, a);
    try {
        b.dl_slot(40, grid, a);
        FAIL();
    } catch (const CuplaneError& e) {
        EXPECT_EQ(e.code(), CuplaneErrc::inactive_carrier);
    }
    b.set_carrier_active(true);
    try {
        b.dl_slot(44, grid, a);  // U slot
        FAIL();
    } catch (const CuplaneError& e) {
        EXPECT_EQ(e.code(), CuplaneErrc::tdd_violation);
    }
    EXPECT_THROW(b.ul_slot(41, a), CuplaneError);
    EXPECT_THROW(b.prach(40, PrachConfig{}), CuplaneError);
    EXPECT_NO_THROW(b.ul_slot(44, a));
    EXPECT_NO_THROW(b.prach(43, PrachConfig{}));
}

TEST(Flow, PrachCarriesSt3Fields) {
    auto b = active_builder();
    PrachConfig p;
    p.time_offset = 12;
    p.cp_length = 20;
    p.freq_offset = -42;
    p.start_prb = 30;
    const auto flow = b.prach(44, p);
    ASSERT_EQ(flow.size(), 1u);
    const auto c = codec::decode_cplane(flow[0].frame, CarrierConfig{}.codec_config());
    EXPECT_EQ(c.section_type, codec::SectionType::st3);
    EXPECT_EQ(c.direction, codec::DataDirection::uplink);
    ASSERT_TRUE(c.st3);
    EXPECT_EQ(c.st3->time_offset, 12);
    EXPECT_EQ(c.st3->cp_length, 20);
    EXPECT_EQ(c.st3->freq_offset, -42);
    EXPECT_EQ(c.sections[0].start_prb, 30);
    EXPECT_EQ(c.sections[0].num_prb, 12);
}

TEST(Flow, SequenceIdsCountPerPlane) {
    auto b = active_builder();
    const Allocation a{0, 1, 0, 14};
    const auto grid = generate_grid(CarrierConfig{}, WaveformSpec{}, a);
    const auto f1 = b.dl_slot(40, grid, a);
    const auto f2 = b.dl_slot(41, grid, a);
    const auto layout = CarrierConfig{}.eaxc_layout;
    EXPECT_EQ(codec::decode_ecpri(f1[0].frame, layout).header.sequence_id, 0);
    EXPECT_EQ(codec::decode_ecpri(f2[0].frame, layout).header.sequence_id, 1);
    EXPECT_EQ(codec::decode_ecpri(f1[14].frame, layout).header.sequence_id, 13);
    EXPECT_EQ(codec::decode_ecpri(f2[1].frame, layout).header.sequence_id, 14);
}

TEST(Flow, SchedulingInThePastRefused) {
    auto b = active_builder();
    const Allocation a{0, 1, 0, 14};
    const auto flow = b.dl_slot(0, generate_grid(CarrierConfig{}, WaveformSpec{}, a), a);
    sim::Scheduler s;
    EXPECT_THROW(schedule_flow(s, flow, [](const TimedMessage&) {}), CuplaneError);
}

TEST(Flow, SameSeedSameBytes) {
    const Allocation a{0, 50, 0, 14};
    WaveformSpec wf;
    wf.modulation = Modulation::qam64;
    auto b1 = active_builder();
    auto b2 = active_builder();
    const auto f1 = b1.dl_slot(40, generate_grid(CarrierConfig{}, wf, a), a);
    const auto f2 = b2.dl_slot(40, generate_grid(CarrierConfig{}, wf, a), a);
    ASSERT_EQ(f1.size(), f2.size());
    for (std::size_t k = 0; k < f1.size(); ++k) EXPECT_EQ(f1[k].frame, f2[k].frame);
}

TEST(Analyzer, IdentityIsZero) {
    const auto grid = generate_grid(CarrierConfig{}, WaveformSpec{}, Allocation{0, 10, 0, 14});
    const auto v = grid.values();
    const auto r = compare_grids(v, v);
    EXPECT_EQ(r.normalized_error, 0.0);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Analyzer, ZeroEmissionScoresOne) {
    const auto v = generate_grid(CarrierConfig{}, WaveformSpec{}, Allocation{0, 10, 0, 14}).values();
    const std::vector<Cplx> zeros(v.size());
    const auto r = compare_grids(zeros, v);
    EXPECT_EQ(r.normalized_error, 1.0);
    EXPECT_EQ(r.verdict, Verdict::fail);
    VirtualRf rf(133, 32);
    const auto d = analyze_dl_output(rf, 5, 0, generate_grid(CarrierConfig{}, WaveformSpec{}, Allocation{0, 10, 0, 14}));
    EXPECT_EQ(d.verdict, Verdict::fail);
    EXPECT_EQ(d.counters.received, 0u);
}

TEST(Analyzer, GainIsNormalizedAway) {
    const auto v = generate_grid(CarrierConfig{}, WaveformSpec{}, Allocation{0, 10, 0, 14}).values();
    auto scaled = v;
    for (auto& x : scaled) x *= 0.031;  // roughly the 30 dB pad
    EXPECT_NEAR(normalized_error(scaled, v), 0.0, 1e-20);
}

// With exponents <= 1 each component is off by at most 1, so the raw error
// is at most 2N / P_ref; power normalization at most quadruples it.
TEST(Analyzer, BfpQuantizationWithinPropagatedBound) {
    CarrierConfig carrier;
    for (auto m : {Modulation::qpsk, Modulation::qam64, Modulation::qam256}) {
        WaveformSpec wf;
        wf.modulation = m;
        wf.rms = 300.0;
        const Allocation a{0, 133, 0, 14};
        const auto grid = generate_grid(carrier, wf, a);
        ResourceGrid decoded(carrier.n_prb);
        int max_exp = 0;
        for (int s = 0; s < 14; ++s) {
            for (int p = 0; p < 133; ++p) {
                const auto block = codec::bfp_compress(grid.prb(s, p));
                max_exp = std::max<int>(max_exp, block.exponent);
                decoded.set_prb(s, p, codec::bfp_decompress(block));
            }
        }
        ASSERT_LE(max_exp, 1) << to_string(m);
        const auto ref = grid.values();
        double p_ref = 0.0;
        for (const auto& x : ref) p_ref += std::norm(x);
        const double bound = 4.0 * 2.0 * static_cast<double>(ref.size()) / p_ref;
        const double err = normalized_error(decoded.values(), ref);
        EXPECT_LE(err, bound) << to_string(m);
        EXPECT_LT(err, kDefaultErrorThreshold);
    }
}

TEST(ZadoffChu, ConstantAmplitudeIdealAutocorrelation) {
    const auto x = zadoff_chu(1, 139);
    for (const auto& v : x) EXPECT_NEAR(std::abs(v), 1.0, 1e-12);
    // Direct cyclic autocorrelation: L at lag 0, zero elsewhere for prime L.
    for (int lag = 0; lag < 139; ++lag) {
        Cplx acc{};
        for (int n = 0; n < 139; ++n) acc += x[n] * std::conj(x[(n + lag) % 139]);
        EXPECT_NEAR(std::abs(acc), lag == 0 ? 139.0 : 0.0, 1e-9) << lag;
    }
}

TEST(ZadoffChu, CleanPeakAtOccasionStart) {
    const auto x = zadoff_chu(1, 139);
    const auto c = prach_correlate(x, 1, 139);
    EXPECT_NEAR(c.peak, 1.0, 1e-12);
    EXPECT_EQ(c.lag, 0);
}

TEST(ZadoffChu, CyclicDelayMovesThePeak) {
    const auto x = zadoff_chu(1, 139);
    std::vector<Cplx> r(139);
    for (int n = 0; n < 139; ++n) r[n] = 50.0 * x[(n + 9) % 139];
    const auto c = prach_correlate(r, 1, 139);
    EXPECT_NEAR(c.peak, 1.0, 1e-12);
    EXPECT_EQ(c.lag, 9);
}

TEST(ZadoffChu, NothingToCorrelate) {
    EXPECT_EQ(prach_correlate(std::vector<Cplx>(139), 1, 139).peak, 0.0);
    EXPECT_LT(prach_correlate(zadoff_chu(2, 139), 1, 139).peak, 0.2);
}

TEST(Uplink, CollectorRebuildsGrid) {
    CarrierConfig carrier;
    const auto cfg = carrier.codec_config();
    const auto grid = generate_grid(carrier, WaveformSpec{.rms = 200.0}, Allocation{3, 2, 0, 14});
    UplinkCollector collector(carrier);
    for (int sym = 0; sym < 14; ++sym) {
        codec::UplaneMessage m;
        m.direction = codec::DataDirection::uplink;
        const auto addr = slot_address(carrier, 44);
        m.frame_id = addr.frame_id;
        m.subframe_id = addr.subframe_id;
        m.slot_id = addr.slot_id;
        m.symbol_id = static_cast<std::uint8_t>(sym);
        codec::UplaneSection s;
        s.start_prb = 3;
        s.num_prb = 2;
        s.prbs = {codec::bfp_compress(grid.prb(sym, 3)), codec::bfp_compress(grid.prb(sym, 4))};
        m.sections.push_back(s);
        collector.on_frame(symbol_time(carrier, 44, sym) + 40'000, codec::encode_uplane(m, cfg));
    }
    collector.on_frame(0, std::vector<std::uint8_t>{1, 2, 3});
    EXPECT_EQ(collector.decode_errors(), 1u);
    EXPECT_TRUE(collector.has_slot(44));
    EXPECT_FALSE(collector.has_slot(45));
    const auto r = analyze_ul_output(collector, 44, grid);
    EXPECT_EQ(r.normalized_error, 0.0);  // rms 200 fits 9 bits exactly
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_EQ(analyze_ul_output(collector, 49, grid).verdict, Verdict::fail);
}

TEST(Rf, EmissionsAccumulateAndPortSignalsAlign) {
    VirtualRf rf(133, 4);
    const std::vector<Cplx> a{{1, 0}, {2, 0}};
    rf.emit({7, 0, 1}, 10, a);
    rf.emit({7, 0, 1}, 11, a);
    const auto row = rf.emitted({7, 0, 1});
    EXPECT_EQ(row[10], Cplx(1, 0));
    EXPECT_EQ(row[11], Cplx(3, 0));
    EXPECT_EQ(row[12], Cplx(2, 0));
    EXPECT_DOUBLE_EQ(rf.emitted_energy({7, 0, 1}), 1 + 9 + 4);
    const auto sig = rf.port_signals(7);
    ASSERT_EQ(sig.size(), 4u);
    for (const auto& s : sig) EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(sig[0][0], Cplx{});
    EXPECT_THROW(rf.emit({7, 0, 1}, 1595, a), CuplaneError);
}
