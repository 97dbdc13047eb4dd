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

#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ofh/sim/scheduler.hpp"
#include "ofh/splane/clock.hpp"
#include "ofh/splane/ptp.hpp"
#include "ofh/splane/servo.hpp"
#include "ofh/verdict.hpp"

namespace ofh::splane {

struct PtpFlowConfig {
    /// What the slave expects.
    PtpProfileConfig profile;
    /// What the grandmaster actually emits; differs from the profile only when
    /// a misconfiguration is being exercised.
    double emitted_announce_rate_hz = 8.0;
    std::vector<AnnounceRecord> grandmasters{AnnounceRecord{128, 6, 0x21, 128, 0x00A0C9FFFE000001ULL}};
    PathModel path = make_path(Topology::c1, 500.0);
    // Small enough that the default PI gains lock without overshooting the
    // lock threshold; larger errors still converge, with a lock flap.
    double slave_phase_offset_ns = 300.0;
    double slave_freq_offset_ppb = 10.0;
    double slave_noise_ns = 0.0;
    double master_noise_ns = 0.0;
    ServoConfig servo;
    std::uint64_t seed = 1;
};

/// Grandmaster, path and O-RU slave clock on the simulated timeline.
class PtpFlow {
public:
    PtpFlow(sim::Scheduler& scheduler, PtpFlowConfig config);
    ~PtpFlow();
    PtpFlow(const PtpFlow&) = delete;
    PtpFlow& operator=(const PtpFlow&) = delete;

    void start();
    /// Stops all PTP messages; the servo's timeout check keeps running.
    void halt();
    bool running() const noexcept { return running_; }

    SyncState sync_state() const noexcept { return servo_.state().sync_state; }
    const ClockState& clock_state() const noexcept { return servo_.state(); }
    const Servo& servo() const noexcept { return servo_; }
    SimClock& slave() noexcept { return slave_; }
    SimClock& master() noexcept { return master_; }
    const PtpFlowConfig& config() const noexcept { return config_; }

    /// Slave minus grandmaster, noise-free, at true time `t`.
    double time_error_at(sim::SimTime t) const noexcept;

    std::uint64_t announces_received() const noexcept { return announces_; }
    std::uint64_t exchanges() const noexcept { return exchanges_; }
    /// Announce rate seen by the slave, or 0 with fewer than two announces.
    double observed_announce_rate_hz() const noexcept;
    const std::optional<AnnounceRecord>& selected_master() const noexcept { return selected_; }
    const std::optional<ExchangeResult>& last_exchange() const noexcept { return last_exchange_; }

    std::function<void(SyncState)> on_state_change;

private:
    void announce_tick();
    void sync_tick();
    void watchdog_tick();
    void notify(SyncState before);

    sim::Scheduler& scheduler_;
    PtpFlowConfig config_;
    SimClock master_;
    SimClock slave_;
    Servo servo_;
    sim::Rng jitter_;
    bool running_ = false;
    bool watchdog_armed_ = false;
    /// Scheduled callbacks check this so a destroyed flow is never touched.
    std::shared_ptr<bool> alive_ = std::make_shared<bool>(true);
    std::vector<AnnounceRecord> heard_;
    std::optional<AnnounceRecord> selected_;
    std::optional<ExchangeResult> last_exchange_;
    std::uint64_t announces_ = 0;
    std::uint64_t exchanges_ = 0;
    sim::SimTime first_announce_ = 0;
    sim::SimTime last_announce_ = 0;
    std::size_t next_gm_ = 0;
};

/// Reads the O-RU's self-reported sync state over the M-Plane; nullopt when
/// the M-Plane is unavailable.
using SyncStateProbe = std::function<std::optional<std::string>()>;

struct FunctionalConfig {
    sim::SimTime lock_budget = sim::seconds(60);
    /// Minimum observation window for the announce-rate check.
    sim::SimTime rate_window = sim::seconds(4);
    sim::SimTime poll_interval = sim::seconds(1);
    double rate_tolerance = 0.05;
};

struct FunctionalResult {
    Verdict verdict = Verdict::blocked;
    bool locked = false;
    sim::SimTime lock_time = 0;
    double observed_announce_hz = 0.0;
    std::vector<std::string> violations;
    std::string detail;
};

/// Starts the flow (if needed) and waits for the O-RU to report LOCKED, then
/// checks the observed message rates against the profile.
FunctionalResult run_functional_test(sim::Scheduler& scheduler, PtpFlow& flow, const FunctionalConfig& config,
                                     const SyncStateProbe& probe);

/// Time error at the virtual RF boundary. Samples hold the observed value
/// (true TE plus trigger-cable delay); reported values subtract calibration.
struct TimeErrorSeries {
    struct Sample {
        sim::SimTime t = 0;
        double te_ns = 0.0;
    };
    std::vector<Sample> samples;
    double calibration_offset_ns = 0.0;

    double reported(std::size_t i) const { return samples.at(i).te_ns - calibration_offset_ns; }
    double max_abs_te_ns() const;
    double mean_te_ns() const;
    /// Two columns, "t_ns te_ns", one reported sample per line.
    void write(std::ostream& out) const;
};

struct PerformanceConfig {
    sim::SimTime lock_budget = sim::seconds(60);
    sim::SimTime settle = sim::seconds(10);
    sim::SimTime duration = sim::seconds(30);
    sim::SimTime sample_interval = sim::millis(100);
    double calibration_offset_ns = 0.0;
    double trigger_cable_delay_ns = 0.0;
    double te_limit_ns = 1500.0;
};

struct PerformanceResult {
    Verdict verdict = Verdict::blocked;
    bool locked = false;
    double max_te_ns = 0.0;
    double mean_te_ns = 0.0;
    TimeErrorSeries series;
    std::string detail;
};

PerformanceResult run_performance_test(sim::Scheduler& scheduler, PtpFlow& flow, const PerformanceConfig& config,
                                       const SyncStateProbe& probe);

} // namespace ofh::splane
