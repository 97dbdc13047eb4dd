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
#include <memory>
#include <sstream>

#include "ofh/codec/capture.hpp"
#include "ofh/cuplane/analyzer.hpp"
#include "ofh/ru/testbed.hpp"
#include "ofh/sim/random.hpp"

namespace ofh::ru {
namespace {

using codec::CaptureDirection;
using codec::DataDirection;
using cuplane::Allocation;
using cuplane::ResourceGrid;

std::int64_t next_slot(Testbed& tb, DataDirection direction, sim::SimTime lead = sim::millis(2)) {
    const auto& carrier = tb.builder().carrier();
    auto slot = cuplane::slot_at(carrier, tb.scheduler().now() + lead) + 1;
    while (!carrier.carries(slot, direction)) ++slot;
    return slot;
}

void run_past(Testbed& tb, std::int64_t slot) {
    tb.scheduler().run_until(cuplane::slot_start(tb.builder().carrier(), slot + 2));
}

std::unique_ptr<Testbed> active_testbed(TestbedConfig config = {}) {
    auto tb = std::make_unique<Testbed>(std::move(config));
    const auto failure = tb->bring_up();
    EXPECT_FALSE(failure.has_value()) << *failure;
    return tb;
}

TEST(Lifecycle, CleanBootReachesMplaneUpOnFirstAttempt) {
    Testbed tb;
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane(sim::seconds(10)));
    EXPECT_GE(tb.ru().phase(), RuPhase::mplane_up);
    EXPECT_EQ(tb.ru().call_home_attempts(), 1u);
    ASSERT_TRUE(tb.ru().lease().has_value());
    EXPECT_EQ(tb.ru().lease()->address, "fd00::10");
    EXPECT_EQ(tb.ru().datastore().leaf("interfaces/eth0/ipv6-address"), "fd00::10");
}

TEST(Lifecycle, DroppedAuthStaysInCallHomeAndRetriesEveryFiveSeconds) {
    TestbedConfig cfg;
    set_toggle(cfg.ru.faults, "drop_callhome_auth");
    Testbed tb(cfg);
    tb.power_on();
    tb.scheduler().run_until(sim::seconds(20));
    EXPECT_EQ(tb.ru().phase(), RuPhase::call_home);
    EXPECT_FALSE(tb.client().established());
    // Attempts at 0.11 s, 5.11 s, 10.11 s and 15.11 s.
    EXPECT_EQ(tb.ru().call_home_attempts(), 4u);
    EXPECT_EQ(tb.ru().call_home_failures(), 4u);
    EXPECT_EQ(tb.client().rejected_handshakes(), 4u);
}

TEST(Lifecycle, NoDhcpServerStaysInDhcp) {
    TestbedConfig cfg;
    cfg.dhcp_available = false;
    Testbed tb(cfg);
    tb.power_on();
    EXPECT_FALSE(tb.await_mplane(sim::seconds(30)));
    EXPECT_EQ(tb.ru().phase(), RuPhase::dhcp);
    EXPECT_EQ(tb.ru().call_home_attempts(), 0u);
}

TEST(Lifecycle, BringUpVisitsEveryPhaseInOrder) {
    auto tb = active_testbed();
    const std::vector<RuPhase> expected{RuPhase::boot,    RuPhase::dhcp,       RuPhase::call_home,
                                        RuPhase::mplane_up, RuPhase::syncing, RuPhase::configured,
                                        RuPhase::carriers_active};
    std::vector<RuPhase> seen;
    for (const auto& change : tb->ru().phase_history()) seen.push_back(change.phase);
    EXPECT_EQ(seen, expected);
}

// Within one boot, every transition that is not a recorded fallback moves
// forward; a new boot always starts at BOOT.
void expect_monotone(const std::vector<PhaseChange>& history) {
    for (std::size_t i = 1; i < history.size(); ++i) {
        const auto& prev = history[i - 1];
        const auto& cur = history[i];
        if (cur.boot != prev.boot) {
            EXPECT_EQ(cur.phase, RuPhase::boot);
            continue;
        }
        if (!cur.regression) {
            EXPECT_GT(cur.phase, prev.phase) << "at " << cur.at << " " << cur.reason;
        }
    }
}

// Before the first MPLANE_UP of a boot, nothing leaves the device except
// DHCP and Call Home.
void expect_black_box(const EventLog& log) {
    bool up = false;
    for (const auto& e : log.events()) {
        if (e.category == "phase" && e.text.starts_with("BOOT")) up = false;
        if (e.category == "phase" && e.text.starts_with("MPLANE_UP")) up = true;
        if (!up && e.direction == CaptureDirection::ru_to_ter) {
            EXPECT_TRUE(e.category == "dhcp" || e.category == "call-home") << e.category << ": " << e.text;
        }
    }
}

// Replays the log: wherever a carrier is active, the recorded sync state at
// that instant is LOCKED.
void expect_carrier_gate(const EventLog& log) {
    std::string sync = "FREERUN";
    std::map<std::string, bool> active;
    for (const auto& e : log.events()) {
        if (e.category == "sync" && !e.text.starts_with("ptp")) sync = e.text;
        if (e.category == "carrier") {
            const auto space = e.text.find(' ');
            active[e.text.substr(0, space)] = e.text.compare(space + 1, 6, "active") == 0;
        }
        for (const auto& [id, on] : active) {
            if (on) {
                EXPECT_EQ(sync, "LOCKED") << "carrier " << id << " active at " << e.at;
            }
        }
    }
}

TEST(LifecycleProperty, MonotoneBlackBoxAndGatedUnderRandomFaults) {
    sim::Rng rng(20240601);
    for (int trial = 0; trial < 12; ++trial) {
        TestbedConfig cfg;
        if (rng.uniform() < 0.3) set_toggle(cfg.ru.faults, "drop_callhome_auth");
        if (rng.uniform() < 0.3) set_toggle(cfg.ru.faults, "raise_alarm");
        cfg.dhcp_available = rng.uniform() > 0.15;
        Testbed tb(cfg);
        tb.power_on();
        tb.await_mplane(sim::seconds(12));
        if (tb.client().established()) {
            tb.await_lock(sim::seconds(10));
            tb.set_carriers_active(true);
            tb.scheduler().run_for(sim::millis(static_cast<double>(rng.uniform_int(10, 2000))));
            if (rng.uniform() < 0.5) {
                tb.ru().inject_fault("disable_sync");
                tb.scheduler().run_for(sim::seconds(3));
            }
        }
        expect_monotone(tb.ru().phase_history());
        expect_black_box(tb.ru().events());
        expect_carrier_gate(tb.ru().events());
    }
}

TEST(CarrierGate, ActivationRefusedWithoutLock) {
    TestbedConfig cfg;
    set_toggle(cfg.ru.faults, "disable_sync");
    Testbed tb(cfg);
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    tb.scheduler().run_for(sim::seconds(2));
    const auto reply = tb.set_carriers_active(true);
    ASSERT_TRUE(reply.is_error());
    EXPECT_EQ(reply.error.message, "not synchronized");
    EXPECT_FALSE(tb.ru().any_carrier_active());
    EXPECT_EQ(tb.ru().phase(), RuPhase::syncing);
}

TEST(CarrierGate, SyncLossDeactivatesCarriersFirst) {
    auto tb = active_testbed();
    ASSERT_TRUE(tb->ru().any_carrier_active());
    tb->ru().inject_fault("disable_sync");
    tb->scheduler().run_for(sim::seconds(3));
    EXPECT_NE(tb->ru().sync_state(), splane::SyncState::locked);
    EXPECT_FALSE(tb->ru().any_carrier_active());
    EXPECT_EQ(tb->ru().phase(), RuPhase::syncing);
    EXPECT_EQ(tb->ru().datastore().leaf("carriers/tx0/active"), "false");
    expect_carrier_gate(tb->ru().events());
    // Re-locking does not bring carriers back on its own.
    tb->ru().clear_fault("disable_sync");
    tb->ru().ptp().start();
    ASSERT_TRUE(tb->await_lock());
    EXPECT_EQ(tb->ru().phase(), RuPhase::configured);
    EXPECT_FALSE(tb->ru().any_carrier_active());
}

TEST(CarrierGate, SyncAlarmRaisedWhenLockNeverArrives) {
    TestbedConfig cfg;
    set_toggle(cfg.ru.faults, "disable_sync");
    Testbed tb(cfg);
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    tb.scheduler().run_for(sim::seconds(6));
    const auto active = tb.ru().server().active_alarms();
    ASSERT_EQ(active.size(), 1u);
    EXPECT_EQ(active[0].fault_id, kSyncAlarmId);
}

TEST(Cuplane, TrafficBeforeActivationIsNotReady) {
    Testbed tb;
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    ASSERT_EQ(tb.ru().phase(), RuPhase::syncing);
    tb.builder().set_carrier_active(true);
    const auto slot = next_slot(tb, DataDirection::downlink);
    const Allocation alloc{0, 4, 0, 14};
    const auto grid = cuplane::generate_grid(tb.builder().carrier(), {}, alloc);
    tb.deliver(tb.builder().dl_slot(slot, grid, alloc));
    run_past(tb, slot);
    EXPECT_EQ(tb.ru().counter("not-ready"), 15u);
    EXPECT_EQ(tb.ru().counter("dl-cplane-early") + tb.ru().counter("dl-cplane-late"), 0u);
    EXPECT_FALSE(tb.rf().any_emission());
}

TEST(Cuplane, DownlinkEmissionEqualsDecompressedGrid) {
    auto tb = active_testbed();
    const auto& carrier = tb->builder().carrier();
    const Allocation alloc{0, carrier.n_prb, 0, 14};
    const auto grid = cuplane::generate_grid(carrier, {}, alloc);
    const auto slot = next_slot(*tb, DataDirection::downlink);
    tb->deliver(tb->builder().dl_slot(slot, grid, alloc));
    run_past(*tb, slot);

    for (int sym = 0; sym < 14; ++sym) {
        const auto emitted = tb->rf().emitted({slot, sym, 0});
        for (int prb = 0; prb < carrier.n_prb; ++prb) {
            const auto expected = codec::bfp_decompress(codec::bfp_compress(grid.prb(sym, prb)));
            for (std::size_t sc = 0; sc < codec::kSubcarriersPerPrb; ++sc) {
                const auto& e = emitted[static_cast<std::size_t>(prb) * codec::kSubcarriersPerPrb + sc];
                ASSERT_EQ(e, cuplane::Cplx(expected[sc].i, expected[sc].q)) << "sym " << sym << " prb " << prb;
            }
        }
    }
    EXPECT_EQ(tb->ru().counter("dl-cplane-received"), 1u);
    EXPECT_EQ(tb->ru().counter("dl-uplane-received"), 14u);
    const auto verdict = cuplane::analyze_dl_output(tb->rf(), slot, 0, grid);
    EXPECT_EQ(verdict.verdict, Verdict::pass) << verdict.detail;
    // Nothing leaks onto other ports without beamforming.
    EXPECT_EQ(tb->rf().emitted_energy({slot, 0, 1}), 0.0);
}

TEST(Cuplane, EveryOtherPrbEmitsOnlyAllocatedPrbs) {
    auto tb = active_testbed();
    const Allocation alloc{20, 30, 2, 6, true};
    const auto grid = cuplane::generate_grid(tb->builder().carrier(), {}, alloc);
    const auto slot = next_slot(*tb, DataDirection::downlink);
    tb->deliver(tb->builder().dl_slot(slot, grid, alloc));
    run_past(*tb, slot);
    const auto r = cuplane::analyze_dl_output(tb->rf(), slot, 0, grid);
    EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
    const auto row = tb->rf().emitted({slot, 2, 0});
    EXPECT_EQ(row[21 * 12], cuplane::Cplx{});
    EXPECT_NE(row[22 * 12], cuplane::Cplx{});
}

TEST(Cuplane, EarlyCplaneIsDroppedWithoutEmission) {
    auto tb = active_testbed();
    const Allocation alloc{0, 4, 0, 14};
    const auto grid = cuplane::generate_grid(tb->builder().carrier(), {}, alloc);
    const auto slot = next_slot(*tb, DataDirection::downlink);
    auto flow = tb->builder().dl_slot(slot, grid, alloc);
    cuplane::retime(flow.front(), tb->builder().window().t2a_max_cp_ns + 1);
    tb->deliver(flow);
    run_past(*tb, slot);
    EXPECT_EQ(tb->ru().counter("dl-cplane-early"), 1u);
    EXPECT_EQ(tb->ru().counter("unscheduled"), 14u);
    EXPECT_FALSE(tb->rf().any_emission());
    EXPECT_EQ(tb->read_counter("dl-cplane-early"), 1u);
}

TEST(Cuplane, WindowEdgesAreInclusive) {
    auto tb = active_testbed();
    const auto& w = tb->builder().window();
    const Allocation alloc{0, 2, 0, 1};
    const auto grid = cuplane::generate_grid(tb->builder().carrier(), {}, alloc);
    auto slot = next_slot(*tb, DataDirection::downlink);
    auto a = tb->builder().dl_slot(slot, grid, alloc);
    cuplane::retime(a[0], w.t2a_max_cp_ns);
    cuplane::retime(a[1], w.t2a_min_up_ns);
    tb->deliver(a);
    run_past(*tb, slot);
    EXPECT_EQ(tb->ru().counter("dl-cplane-received"), 1u);
    EXPECT_EQ(tb->ru().counter("dl-uplane-received"), 1u);
    slot = next_slot(*tb, DataDirection::downlink);
    auto b = tb->builder().dl_slot(slot, grid, alloc);
    cuplane::retime(b[1], w.t2a_min_up_ns - 1);
    tb->deliver(b);
    run_past(*tb, slot);
    EXPECT_EQ(tb->ru().counter("dl-uplane-late"), 1u);
}

TEST(Cuplane, TddViolationIsCounted) {
    auto tb = active_testbed();
    // A TER that believes every slot is downlink.
    auto wrong = tb->builder().carrier();
    wrong.tdd_pattern = "D";
    cuplane::FlowBuilder rogue(wrong, tb->builder().window());
    rogue.set_carrier_active(true);
    const auto slot = next_slot(*tb, DataDirection::uplink);
    ASSERT_EQ(tb->builder().carrier().slot_kind(slot) == cuplane::SlotKind::uplink ||
                  tb->builder().carrier().slot_kind(slot) == cuplane::SlotKind::special,
              true);
    auto u_slot = slot;
    while (tb->builder().carrier().slot_kind(u_slot) != cuplane::SlotKind::uplink) ++u_slot;
    const Allocation alloc{0, 2, 0, 1};
    const auto grid = cuplane::generate_grid(wrong, {}, alloc);
    tb->deliver(rogue.dl_slot(u_slot, grid, alloc));
    run_past(*tb, u_slot);
    EXPECT_EQ(tb->ru().counter("tdd-violation"), 2u);
    EXPECT_FALSE(tb->rf().any_emission());
}

TEST(Beam, BroadsideEntryDrivesAllPortsInPhase) {
    auto tb = active_testbed();
    const auto* broadside = [&]() -> const cuplane::BeamEntry* {
        for (const auto& [id, e] : tb->ru().beams().entries()) {
            if (e.azimuth_deg == 0.0) return &e;
        }
        return nullptr;
    }();
    ASSERT_NE(broadside, nullptr);
    const Allocation alloc{0, 2, 0, 1};
    const auto grid = cuplane::generate_grid(tb->builder().carrier(), {}, alloc);
    const auto slot = next_slot(*tb, DataDirection::downlink);
    tb->deliver(tb->builder().dl_slot(slot, grid, alloc, {broadside->beam_id, {}}));
    run_past(*tb, slot);
    const auto ref = tb->rf().emitted({slot, 0, 0});
    ASSERT_GT(tb->rf().emitted_energy({slot, 0, 0}), 0.0);
    for (int p = 1; p < 32; ++p) {
        const auto port = tb->rf().emitted({slot, 0, p});
        for (std::size_t k = 0; k < ref.size(); ++k) ASSERT_NEAR(std::abs(port[k] - ref[k]), 0.0, 1e-9);
    }
}

TEST(Beam, EveryTableEntryDetectedWithinOneDegree) {
    auto tb = active_testbed();
    const Allocation alloc{0, 4, 0, 2};
    const auto grid = cuplane::generate_grid(tb->builder().carrier(), {}, alloc);
    for (const auto& [id, entry] : tb->ru().beams().entries()) {
        const auto slot = next_slot(*tb, DataDirection::downlink);
        tb->deliver(tb->builder().dl_slot(slot, grid, alloc, {id, {}}));
        run_past(*tb, slot);
        const auto r = cuplane::analyze_beam(tb->rf(), slot, entry.azimuth_deg);
        EXPECT_EQ(r.verdict, Verdict::pass) << "beam " << id << ": " << r.detail;
    }
}

TEST(Beam, InlineWeightsTakePrecedenceOverTable) {
    auto tb = active_testbed();
    const Allocation alloc{0, 4, 0, 2};
    const auto grid = cuplane::generate_grid(tb->builder().carrier(), {}, alloc);
    const auto slot = next_slot(*tb, DataDirection::downlink);
    // Beam id points at -45 degrees; the inline weights steer to +30.
    cuplane::BeamSpec spec{1, cuplane::steering_weights(30.0, 32)};
    tb->deliver(tb->builder().dl_slot(slot, grid, alloc, spec));
    run_past(*tb, slot);
    const auto r = cuplane::analyze_beam(tb->rf(), slot, 30.0);
    EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
}

TEST(Beam, UnknownBeamIdIsCountedAndDropped) {
    auto tb = active_testbed();
    const Allocation alloc{0, 2, 0, 1};
    const auto grid = cuplane::generate_grid(tb->builder().carrier(), {}, alloc);
    const auto slot = next_slot(*tb, DataDirection::downlink);
    tb->deliver(tb->builder().dl_slot(slot, grid, alloc, {999, {}}));
    run_past(*tb, slot);
    EXPECT_EQ(tb->ru().counter("unknown-beam"), 1u);
    EXPECT_EQ(tb->ru().counter("unscheduled"), 1u);
    EXPECT_FALSE(tb->rf().any_emission());
}

TEST(Dlm, RandomOffsetsConserveAndLeakNoEnergy) {
    for (auto direction : {DataDirection::downlink, DataDirection::uplink}) {
        TestbedConfig cfg;
        cfg.capture_fronthaul = false;
        auto tb = active_testbed(cfg);
        sim::Rng rng(7, sim::Stream::dlm_offsets);
        std::vector<sim::SimTime> offsets(200);
        for (auto& o : offsets) o = rng.uniform_int(0, 800'000);
        cuplane::DlmSetup setup{tb->scheduler(), tb->ru(), tb->rf(), tb->uplink(), tb->builder(), {}};
        const auto r = cuplane::evaluate_dlm(setup, direction, offsets);
        EXPECT_TRUE(r.counters.conserved());
        EXPECT_EQ(r.counters.sent, 200u);
        EXPECT_EQ(r.out_of_window_energy, 0.0);
        EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
        EXPECT_GT(r.counters.dropped_early, 0u);
        EXPECT_GT(r.counters.dropped_late, 0u);
        const bool dl = direction == DataDirection::downlink;
        EXPECT_EQ(tb->ru().counter(dl ? "dl-uplane-early" : "ul-cplane-early"), r.counters.dropped_early);
        EXPECT_EQ(tb->ru().counter(dl ? "dl-uplane-late" : "ul-cplane-late"), r.counters.dropped_late);
    }
}

TEST(Uplink, InjectedGridComesBackThroughUplane) {
    auto tb = active_testbed();
    const auto& carrier = tb->builder().carrier();
    const Allocation alloc{0, carrier.n_prb, 0, 14};
    const auto grid = cuplane::generate_grid(carrier, {}, alloc);
    const auto slot = next_slot(*tb, DataDirection::uplink);
    tb->rf().inject(slot, grid);
    tb->deliver(tb->builder().ul_slot(slot, alloc));
    run_past(*tb, slot);
    EXPECT_EQ(tb->ru().counter("ul-uplane-sent"), 14u);
    const auto r = cuplane::analyze_ul_output(tb->uplink(), slot, grid);
    EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
    EXPECT_LT(r.normalized_error, 1e-3);
}

void inject_preamble(Testbed& tb, std::int64_t slot, const cuplane::PrachConfig& cfg, sim::SimTime delay) {
    auto x = cuplane::zadoff_chu(cfg.root, cfg.length);
    for (auto& v : x) v *= cfg.amplitude;
    const auto start = cuplane::prach_occasion_start(tb.builder().carrier(), slot, cfg.start_symbol, cfg.time_offset);
    tb.rf().inject_prach(start + delay, std::move(x));
}

TEST(Prach, PreambleAtOccasionStartCorrelates) {
    auto tb = active_testbed();
    cuplane::PrachConfig cfg;
    const auto slot = next_slot(*tb, DataDirection::uplink);
    inject_preamble(*tb, slot, cfg, 0);
    tb->deliver(tb->builder().prach(slot, cfg));
    run_past(*tb, slot);
    const auto r = cuplane::analyze_prach(tb->uplink(), slot, cfg);
    EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
    EXPECT_GE(r.correlation_peak, 0.9);
}

TEST(Prach, DelayWithinCyclicPrefixStillCorrelates) {
    auto tb = active_testbed();
    cuplane::PrachConfig cfg;
    cfg.time_offset = 10;
    const auto slot = next_slot(*tb, DataDirection::uplink);
    inject_preamble(*tb, slot, cfg, 5 * cuplane::kPrachSamplePeriodNs);
    tb->deliver(tb->builder().prach(slot, cfg));
    run_past(*tb, slot);
    const auto r = cuplane::analyze_prach(tb->uplink(), slot, cfg);
    EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
}

TEST(Prach, MissingOrLatePreambleFails) {
    auto tb = active_testbed();
    cuplane::PrachConfig cfg;
    auto slot = next_slot(*tb, DataDirection::uplink);
    tb->deliver(tb->builder().prach(slot, cfg));
    run_past(*tb, slot);
    EXPECT_EQ(cuplane::analyze_prach(tb->uplink(), slot, cfg).verdict, Verdict::fail);

    slot = next_slot(*tb, DataDirection::uplink);
    inject_preamble(*tb, slot, cfg, (cfg.cp_length + 1) * cuplane::kPrachSamplePeriodNs);
    tb->deliver(tb->builder().prach(slot, cfg));
    run_past(*tb, slot);
    EXPECT_EQ(cuplane::analyze_prach(tb->uplink(), slot, cfg).verdict, Verdict::fail);
    EXPECT_EQ(tb->ru().counter("prach-late"), 1u);
}

TEST(Reset, RunsActivatedSlotAndCallsHomeAgain) {
    Testbed tb;
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    const std::vector<std::uint8_t> image{'o', 'f', 'h', '-', 'r', 'u', '-', '2'};
    const auto dl = tb.client().sw_download("2.0.0", mplane::image_checksum(image), image);
    ASSERT_FALSE(dl.is_error());
    ASSERT_FALSE(tb.client().sw_install("swSlot2").is_error());
    ASSERT_FALSE(tb.client().sw_activate("swSlot2").is_error());
    const auto attempts = tb.ru().call_home_attempts();
    ASSERT_FALSE(tb.client().reset().is_error());
    tb.scheduler().run_for(sim::seconds(1));
    ASSERT_TRUE(tb.await_mplane());
    EXPECT_EQ(tb.ru().boot_count(), 2u);
    EXPECT_EQ(tb.ru().call_home_attempts(), attempts + 1);
    const auto inv = tb.client().get(std::string("software-inventory/swSlot2"));
    ASSERT_EQ(inv.kind, mplane::RpcReply::Kind::data);
    EXPECT_EQ(inv.data["software-inventory"]["swSlot2"]["running"], "true");
    expect_monotone(tb.ru().phase_history());
    // A BOOT entry follows the reset, and a Call Home follows that.
    const auto& events = tb.ru().events().events();
    auto reset = std::find_if(events.begin(), events.end(), [](const RuEvent& e) { return e.category == "reset"; });
    ASSERT_NE(reset, events.end());
    EXPECT_NE(std::find_if(reset, events.end(),
                           [](const RuEvent& e) { return e.category == "call-home" &&
                                                         e.direction == CaptureDirection::ru_to_ter; }),
              events.end());
}

TEST(Faults, UnknownToggleThrows) {
    Testbed tb;
    EXPECT_THROW(tb.ru().inject_fault("melt_radio"), UnknownToggle);
    EXPECT_THROW(toggle_case("melt_radio"), UnknownToggle);
}

TEST(Faults, EveryToggleMapsToADistinctCase) {
    std::set<std::string_view> cases;
    for (auto t : kFaultToggles) cases.insert(toggle_case(t));
    EXPECT_EQ(cases.size(), kFaultToggles.size());
}

TEST(Faults, CorruptChecksumMakesSlotInvalid) {
    Testbed tb;
    tb.ru().inject_fault("corrupt_software_checksum");
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    const std::vector<std::uint8_t> image{1, 2, 3, 4};
    const auto reply = tb.client().sw_download("2.0.0", mplane::image_checksum(image), image);
    ASSERT_EQ(reply.kind, mplane::RpcReply::Kind::data);
    EXPECT_EQ(reply.data["status"], "INVALID");
    EXPECT_TRUE(tb.client().sw_install("swSlot2").is_error());
}

TEST(Faults, WithheldAckLeadsToSupervisionExpiry) {
    auto tb = active_testbed();
    tb->ru().inject_fault("withhold_supervision_ack");
    ASSERT_FALSE(tb->client().supervision_kick(10, 2).is_error());
    const auto second = tb->client().supervision_kick(10, 2);
    EXPECT_TRUE(second.is_error());
    tb->scheduler().run_for(sim::seconds(13));
    EXPECT_FALSE(tb->ru().any_carrier_active());
    EXPECT_FALSE(tb->client().established());
    const auto alarms = tb->ru().server().active_alarms();
    ASSERT_FALSE(alarms.empty());
    EXPECT_EQ(alarms.back().fault_id, 31u);
    // The device calls home again after the backoff.
    tb->scheduler().run_for(sim::seconds(6));
    EXPECT_TRUE(tb->client().established());
    EXPECT_EQ(tb->ru().call_home_attempts(), 2u);
    expect_monotone(tb->ru().phase_history());
    expect_carrier_gate(tb->ru().events());
}

TEST(Faults, RaiseAlarmReachesSubscriber) {
    Testbed tb;
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    ASSERT_FALSE(tb.client().subscribe("alarms").is_error());
    tb.ru().inject_fault("raise_alarm", {{"fault_id", 9}});
    tb.client().sync();
    const auto notes = tb.client().notifications();
    ASSERT_EQ(notes.size(), 1u);
    EXPECT_EQ(notes[0].event["fault-id"], 9);
    EXPECT_EQ(notes[0].event["is-cleared"], false);
}

TEST(Faults, RejectedNodeRefusesEdit) {
    Testbed tb;
    tb.ru().inject_fault("reject_config_node");
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    const auto reply = tb.client().edit_config({{kDefaultRejectedNode, "30"}});
    ASSERT_TRUE(reply.is_error());
    EXPECT_EQ(reply.error.path, kDefaultRejectedNode);
    EXPECT_EQ(tb.ru().datastore().leaf(kDefaultRejectedNode), "20");
}

TEST(Faults, PlanIsReportedAsJson) {
    FaultPlan plan;
    set_toggle(plan, "reject_config_node", "device/name");
    const auto j = plan.to_json();
    EXPECT_EQ(j["reject_config_node"], "device/name");
    EXPECT_EQ(plan.active(), std::vector<std::string>{"reject_config_node"});
}

TEST(EventLogFormat, CaptureRoundTrips) {
    Testbed tb;
    tb.power_on();
    ASSERT_TRUE(tb.await_mplane());
    std::stringstream buf;
    tb.ru().events().write_capture(buf);
    const auto records = codec::read_capture(buf);
    ASSERT_EQ(records.size(), tb.ru().events().events().size());
    const auto& first = records.front();
    EXPECT_EQ(std::string(first.bytes.begin(), first.bytes.end()), "phase: BOOT (power on)");
}

TEST(Transport, TcpBringUp) {
    TestbedConfig cfg;
    cfg.transport = mplane::TransportMode::tcp;
    std::unique_ptr<Testbed> tb;
    try {
        tb = std::make_unique<Testbed>(cfg);
    } catch (const std::exception& e) {
        GTEST_SKIP() << "no IPv6 loopback: " << e.what();
    }
    const auto failure = tb->bring_up();
    EXPECT_FALSE(failure.has_value()) << *failure;
    EXPECT_EQ(tb->ru().phase(), RuPhase::carriers_active);
}

} // namespace
} // namespace ofh::ru
