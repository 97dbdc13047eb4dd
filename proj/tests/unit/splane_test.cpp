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

#include <algorithm>
#include <random>
#include <sstream>

#include "ofh/splane/clock.hpp"
#include "ofh/splane/flow.hpp"
#include "ofh/splane/ptp.hpp"
#include "ofh/splane/servo.hpp"

namespace ofh::splane {
namespace {

TEST(Clock, ReadingFollowsPhaseAndFrequency) {
    SimClock c(250.0, 40.0);
    EXPECT_DOUBLE_EQ(c.read(0.0), 250.0);
    EXPECT_DOUBLE_EQ(c.read(1e9), 1e9 + 250.0 + 40.0);
    EXPECT_DOUBLE_EQ(c.read(5e8), 5e8 + 250.0 + 20.0);
}

TEST(Clock, FrequencyChangeDoesNotRewriteThePast) {
    SimClock c(0.0, 100.0);
    c.adjust_frequency(-100.0, 1e9);
    EXPECT_DOUBLE_EQ(c.offset_at(1e9), 100.0);
    EXPECT_DOUBLE_EQ(c.offset_at(3e9), 100.0);
}

TEST(Clock, NoiseIsSeededAndCentered) {
    SimClock a(0, 0, 10.0, 7), b(0, 0, 10.0, 7);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double ra = a.read(0.0);
        EXPECT_EQ(ra, b.read(0.0));
        sum += ra;
    }
    EXPECT_NEAR(sum / 20000.0, 0.0, 0.5);
}

TEST(Exchange, SymmetricPathRecoversOffsetExactly) {
    sim::Rng rng(1);
    SimClock master, slave(-730.0);
    const ExchangeResult r = ptp_exchange(master, slave, make_path(Topology::c1, 1500.0), 1e6, rng);
    EXPECT_EQ(r.offset_est_ns, -730.0);
    EXPECT_EQ(r.delay_est_ns, 1500.0);
}

TEST(Exchange, ForwardAsymmetryShowsAsHalf) {
    // Hand-built timestamps: t1 = 0, forward 1200 ns, turnaround 1000 ns,
    // reverse 1000 ns, zero true offset.
    const ExchangeResult hand = solve_exchange(0.0, 1200.0, 2200.0, 3200.0);
    EXPECT_EQ(hand.offset_est_ns, 100.0);
    EXPECT_EQ(hand.delay_est_ns, 1100.0);

    sim::Rng rng(1);
    SimClock master, slave;
    PathModel path{1200.0, 1000.0, {}};
    const ExchangeResult sim = ptp_exchange(master, slave, path, 0.0, rng);
    EXPECT_EQ(sim.offset_est_ns, 100.0);
    EXPECT_EQ(sim.t2, 1200.0);
    EXPECT_EQ(sim.t4, 3200.0);
}

TEST(Exchange, DegenerateZeroDelay) {
    sim::Rng rng(1);
    SimClock master, slave;
    const ExchangeResult r = ptp_exchange(master, slave, PathModel{}, 0.0, rng, 0.0);
    EXPECT_EQ(r.t1, r.t2);
    EXPECT_EQ(r.t3, r.t4);
    EXPECT_EQ(r.offset_est_ns, 0.0);
}

TEST(ExchangeProperty, SymmetricPathsAlwaysExact) {
    std::mt19937_64 gen(3);
    sim::Rng rng(1);
    for (int i = 0; i < 2000; ++i) {
        // Integer-valued nanoseconds keep the arithmetic exact in doubles.
        const double offset = static_cast<double>(static_cast<std::int64_t>(gen() % 2'000'001) - 1'000'000);
        const double delay = static_cast<double>(gen() % 100'000);
        SimClock master, slave(offset);
        const auto r = ptp_exchange(master, slave, make_path(Topology::c1, delay), static_cast<double>(gen() % 1'000'000), rng);
        ASSERT_EQ(r.offset_est_ns, offset);
        ASSERT_EQ(r.delay_est_ns, delay);
    }
}

TEST(Path, TotalDelayIsBasePlusResidence) {
    sim::Rng rng(5);
    const PathModel c3 = make_path(Topology::c3, 400.0, 0.0, 750.0, 0.0);
    EXPECT_EQ(c3.hops.size(), 3u);
    EXPECT_DOUBLE_EQ(c3.forward(rng), 400.0 + 3 * 750.0);
    const PathModel jittered = make_path(Topology::c2, 400.0, 60.0, 750.0, 30.0);
    for (int i = 0; i < 1000; ++i) {
        const double f = jittered.forward(rng);
        const double r = jittered.reverse(rng);
        EXPECT_GE(f, 1150.0);
        EXPECT_LE(f, 1180.0);
        EXPECT_GE(r, 1210.0);
        EXPECT_LE(r, 1240.0);
    }
}

TEST(Profile, DomainAndRates) {
    PtpProfileConfig p;
    EXPECT_TRUE(p.valid());
    p.domain_number = 44;
    EXPECT_FALSE(p.valid());
    p.domain_number = 43;
    EXPECT_TRUE(p.valid());
    p.announce_rate_hz = 1.0;
    ASSERT_EQ(p.violations().size(), 1u);
    EXPECT_NE(p.violations()[0].find("announce"), std::string::npos);
}

TEST(Servo, ConvergesWithinHundredExchanges) {
    Servo servo;
    SimClock clock(1000.0);
    const double T = 62.5e6;
    double e = 0.0;
    for (int k = 0; k <= 100; ++k) {
        e = clock.offset_at(k * T);
        if (k < 100) servo.update(e, clock, k * T, T);
    }
    // Oracle: e[k+1] = (1-kp-ki) e[k] + g[k], g[k+1] = g[k] - ki e[k], e0 = 1000.
    EXPECT_NEAR(e, -6.168620, 1e-5);
    EXPECT_LT(std::abs(e), 10.0);
    EXPECT_EQ(servo.state().sync_state, SyncState::locked);
}

TEST(Servo, MatchesIndependentRecurrence) {
    const double kp = 0.1, ki = 0.01, T = 62.5e6;
    Servo servo;
    SimClock clock(800.0, 16.0);
    double e_ref = 800.0, g_ref = 16.0 * T * 1e-9;
    for (int k = 0; k < 300; ++k) {
        const double e = clock.offset_at(k * T);
        ASSERT_NEAR(e, e_ref, 1e-4) << k;
        servo.update(e, clock, k * T, T);
        const double e_next = (1 - kp - ki) * e_ref + g_ref;
        g_ref -= ki * e_ref;
        e_ref = e_next;
    }
}

TEST(Servo, ZeroOffsetIsAFixedPoint) {
    Servo servo;
    SimClock clock;
    for (int k = 0; k < 50; ++k) servo.update(0.0, clock, k * 1e6, 1e6);
    EXPECT_EQ(clock.phase_offset_ns(), 0.0);
    EXPECT_EQ(clock.freq_offset_ppb(), 0.0);
    EXPECT_EQ(servo.state().sync_state, SyncState::locked);
}

TEST(Servo, LargeOffsetIsStepped) {
    Servo servo;
    SimClock clock(1e6);
    servo.update(clock.offset_at(0.0), clock, 0.0, 62.5e6);
    EXPECT_EQ(servo.steps(), 1u);
    EXPECT_EQ(clock.offset_at(0.0), 0.0);
}

TEST(Servo, HoldoverAfterSilence) {
    Servo servo;
    SimClock clock;
    for (int k = 0; k < 10; ++k) servo.update(0.0, clock, k * 62.5e6, 62.5e6);
    ASSERT_EQ(servo.state().sync_state, SyncState::locked);
    const double last = 9 * 62.5e6;
    EXPECT_EQ(servo.check_timeout(last + 0.5e9), SyncState::locked);
    EXPECT_EQ(servo.check_timeout(last + 1e9), SyncState::holdover);
}

TEST(ServoProperty, HoldCountHysteresis) {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        Servo servo;
        SimClock clock;
        SyncState last = servo.state().sync_state;
        int since_change = 1000;
        for (int k = 0; k < 300; ++k) {
            // Bursty offsets straddling the threshold.
            const bool big = static_cast<int>(gen() % 10) < trial % 10;
            const double off = big ? 150.0 + static_cast<double>(gen() % 500) : static_cast<double>(gen() % 90);
            servo.update((gen() & 1) ? off : -off, clock, k * 1e6, 1e6);
            ++since_change;
            if (servo.state().sync_state != last) {
                ASSERT_GE(since_change, servo.config().hold_count) << "trial " << trial;
                since_change = 0;
                last = servo.state().sync_state;
            }
        }
    }
}

TEST(Bmca, SingleAnnouncer) {
    const std::vector<AnnounceRecord> one{{128, 6, 0x21, 128, 5}};
    EXPECT_EQ(bmca_select(one), one[0]);
    EXPECT_FALSE(bmca_select({}).has_value());
}

TEST(Bmca, ClassThenIdentity) {
    const AnnounceRecord a{128, 7, 0x21, 128, 1}, b{128, 6, 0x21, 128, 9};
    EXPECT_EQ(bmca_select(std::vector{a, b}), b);
    const AnnounceRecord c{128, 6, 0x21, 128, 3};
    EXPECT_EQ(bmca_select(std::vector{b, c}), c);
}

TEST(BmcaProperty, PermutationInvariant) {
    std::mt19937_64 gen(29);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<AnnounceRecord> set;
        const int n = 1 + static_cast<int>(gen() % 8);
        for (int i = 0; i < n; ++i) {
            set.push_back({static_cast<std::uint8_t>(127 + gen() % 2), static_cast<std::uint8_t>(6 + gen() % 2),
                           static_cast<std::uint8_t>(0x20 + gen() % 2), static_cast<std::uint8_t>(128),
                           gen() % 4});
        }
        const auto best = bmca_select(set);
        for (int p = 0; p < 5; ++p) {
            std::shuffle(set.begin(), set.end(), gen);
            ASSERT_EQ(bmca_select(set)->key(), best->key());
        }
    }
}

TEST(Functional, LargeInitialErrorStillLocks) {
    sim::Scheduler s;
    PtpFlowConfig cfg;
    cfg.slave_phase_offset_ns = 2500.0;
    cfg.slave_freq_offset_ppb = 20.0;
    PtpFlow flow(s, cfg);
    flow.start();
    s.run_for(sim::seconds(20));
    EXPECT_EQ(flow.sync_state(), SyncState::locked);
    EXPECT_LT(std::abs(flow.time_error_at(s.now())), 10.0);
}

SyncStateProbe probe_of(PtpFlow& flow) {
    return [&flow]() -> std::optional<std::string> { return std::string(to_string(flow.sync_state())); };
}

TEST(Functional, DirectPathPasses) {
    sim::Scheduler s;
    PtpFlow flow(s, {});
    const auto r = run_functional_test(s, flow, {}, probe_of(flow));
    EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
    EXPECT_NEAR(r.observed_announce_hz, 8.0, 0.01);
    EXPECT_LT(r.lock_time, sim::seconds(5));
}

TEST(Functional, SlowAnnounceIsAProfileViolation) {
    sim::Scheduler s;
    PtpFlowConfig cfg;
    cfg.emitted_announce_rate_hz = 1.0;
    PtpFlow flow(s, cfg);
    const auto r = run_functional_test(s, flow, {}, probe_of(flow));
    EXPECT_TRUE(r.locked);
    EXPECT_EQ(r.verdict, Verdict::fail);
    ASSERT_FALSE(r.violations.empty());
    EXPECT_NE(r.violations[0].find("announce"), std::string::npos);
}

TEST(Functional, ThreeHopChainPasses) {
    sim::Scheduler s;
    PtpFlowConfig cfg;
    cfg.path = make_path(Topology::c3, 500.0, 0.0, 1500.0, 40.0);
    cfg.slave_noise_ns = 5.0;
    PtpFlow flow(s, cfg);
    const auto r = run_functional_test(s, flow, {}, probe_of(flow));
    EXPECT_EQ(r.verdict, Verdict::pass) << r.detail;
}

TEST(Functional, NoMplaneIsBlocked) {
    sim::Scheduler s;
    PtpFlow flow(s, {});
    const auto r = run_functional_test(s, flow, {}, [] { return std::optional<std::string>{}; });
    EXPECT_EQ(r.verdict, Verdict::blocked);
}

TEST(Functional, HaltedFlowEntersHoldover) {
    sim::Scheduler s;
    PtpFlow flow(s, {});
    std::vector<SyncState> seen;
    flow.on_state_change = [&](SyncState st) { seen.push_back(st); };
    flow.start();
    s.run_for(sim::seconds(5));
    ASSERT_EQ(flow.sync_state(), SyncState::locked);
    flow.halt();
    s.run_for(sim::seconds(2));
    EXPECT_EQ(flow.sync_state(), SyncState::holdover);
    EXPECT_EQ(seen, (std::vector<SyncState>{SyncState::locked, SyncState::holdover}));
}

PerformanceResult perf(double asymmetry, double calibration, double cable = 0.0) {
    sim::Scheduler s;
    PtpFlowConfig cfg;
    cfg.path = make_path(Topology::c1, 800.0, asymmetry);
    PtpFlow flow(s, cfg);
    PerformanceConfig pc;
    pc.calibration_offset_ns = calibration;
    pc.trigger_cable_delay_ns = cable;
    return run_performance_test(s, flow, pc, probe_of(flow));
}

TEST(Performance, CleanLinkIsWithinTenNanoseconds) {
    const auto r = perf(0.0, 0.0);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_LT(r.max_te_ns, 10.0);
}

TEST(Performance, AsymmetryShowsAsHalf) {
    const auto r = perf(200.0, 0.0);
    EXPECT_NEAR(r.mean_te_ns, 100.0, 5.0);
    EXPECT_NEAR(r.max_te_ns, 100.0, 5.0);
}

TEST(Performance, CalibrationRemovesTheBias) {
    const auto r = perf(200.0, 100.0);
    EXPECT_LT(r.max_te_ns, 5.0);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Performance, TriggerCableNeedsItsOwnCalibration) {
    const auto uncal = perf(0.0, 0.0, 2000.0);
    EXPECT_EQ(uncal.verdict, Verdict::fail);
    const auto cal = perf(0.0, 2000.0, 2000.0);
    EXPECT_EQ(cal.verdict, Verdict::pass);
}

TEST(PerformanceProperty, CalibrationIsTranslationEquivariant) {
    const auto base = perf(120.0, 0.0);
    for (double c : {-37.5, 0.25, 60.0, 1000.0}) {
        TimeErrorSeries shifted = base.series;
        shifted.calibration_offset_ns = c;
        for (std::size_t i = 0; i < base.series.samples.size(); ++i) {
            ASSERT_DOUBLE_EQ(shifted.reported(i), base.series.reported(i) - c);
        }
    }
}

TEST(Performance, SeriesExportIsTwoColumns) {
    TimeErrorSeries s;
    s.samples = {{100, 12.5}, {200, -3.0}};
    s.calibration_offset_ns = 2.5;
    std::ostringstream out;
    s.write(out);
    EXPECT_EQ(out.str(), "100 10.000\n200 -5.500\n");
}

} // namespace
} // namespace ofh::splane
