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

#include "ofh/splane/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ofh::splane {

namespace {

sim::SimTime period_of(double rate_hz) {
    return static_cast<sim::SimTime>(std::llround(1e9 / rate_hz));
}

} // namespace

PtpFlow::PtpFlow(sim::Scheduler& scheduler, PtpFlowConfig config)
    : scheduler_(scheduler),
      config_(std::move(config)),
      master_(0.0, 0.0, config_.master_noise_ns, config_.seed, sim::Stream::master_clock),
      slave_(config_.slave_phase_offset_ns, config_.slave_freq_offset_ppb, config_.slave_noise_ns, config_.seed,
             sim::Stream::slave_clock),
      servo_(config_.servo),
      jitter_(config_.seed, sim::Stream::hop_jitter) {}

PtpFlow::~PtpFlow() { *alive_ = false; }

void PtpFlow::start() {
    if (running_) return;
    running_ = true;
    auto alive = alive_;
    scheduler_.schedule_in(0, [this, alive] {
        if (*alive) announce_tick();
    });
    scheduler_.schedule_in(period_of(config_.profile.sync_rate_hz), [this, alive] {
        if (*alive) sync_tick();
    });
    if (!watchdog_armed_) {
        watchdog_armed_ = true;
        scheduler_.schedule_in(period_of(config_.profile.sync_rate_hz), [this, alive] {
            if (*alive) watchdog_tick();
        });
    }
}

void PtpFlow::halt() { running_ = false; }

double PtpFlow::time_error_at(sim::SimTime t) const noexcept {
    const auto td = static_cast<double>(t);
    return slave_.true_time(td) - master_.true_time(td);
}

double PtpFlow::observed_announce_rate_hz() const noexcept {
    if (announces_ < 2 || last_announce_ == first_announce_) return 0.0;
    return static_cast<double>(announces_ - 1) * 1e9 / static_cast<double>(last_announce_ - first_announce_);
}

void PtpFlow::notify(SyncState before) {
    if (servo_.state().sync_state != before && on_state_change) on_state_change(servo_.state().sync_state);
}

void PtpFlow::announce_tick() {
    if (!running_) return;
    const sim::SimTime now = scheduler_.now();
    if (announces_ == 0) first_announce_ = now;
    last_announce_ = now;
    ++announces_;
    if (!config_.grandmasters.empty()) {
        const AnnounceRecord& gm = config_.grandmasters[next_gm_++ % config_.grandmasters.size()];
        if (std::find(heard_.begin(), heard_.end(), gm) == heard_.end()) heard_.push_back(gm);
        selected_ = bmca_select(heard_);
    }
    auto alive = alive_;
    scheduler_.schedule_in(period_of(config_.emitted_announce_rate_hz), [this, alive] {
        if (*alive) announce_tick();
    });
}

void PtpFlow::sync_tick() {
    if (!running_) return;
    const sim::SimTime interval = period_of(config_.profile.sync_rate_hz);
    auto alive = alive_;
    if (selected_) {
        double completed = 0.0;
        const ExchangeResult result = ptp_exchange(master_, slave_, config_.path,
                                                   static_cast<double>(scheduler_.now()), jitter_, 1000.0, &completed);
        const auto done = static_cast<sim::SimTime>(std::ceil(completed));
        scheduler_.schedule_at(done, [this, alive, result, interval] {
            if (!*alive || !running_) return;
            const SyncState before = servo_.state().sync_state;
            ++exchanges_;
            last_exchange_ = result;
            servo_.update(result.offset_est_ns, slave_, static_cast<double>(scheduler_.now()),
                          static_cast<double>(interval));
            notify(before);
        });
    }
    scheduler_.schedule_in(interval, [this, alive] {
        if (*alive) sync_tick();
    });
}

void PtpFlow::watchdog_tick() {
    const SyncState before = servo_.state().sync_state;
    servo_.check_timeout(static_cast<double>(scheduler_.now()));
    notify(before);
    auto alive = alive_;
    scheduler_.schedule_in(period_of(config_.profile.sync_rate_hz), [this, alive] {
        if (*alive) watchdog_tick();
    });
}

FunctionalResult run_functional_test(sim::Scheduler& scheduler, PtpFlow& flow, const FunctionalConfig& config,
                                     const SyncStateProbe& probe) {
    FunctionalResult result;
    if (!probe()) {
        result.detail = "M-Plane unavailable; sync state cannot be observed";
        return result;
    }
    flow.start();
    const sim::SimTime start = scheduler.now();
    while (scheduler.now() - start < config.lock_budget ||
           (result.locked && scheduler.now() - start < config.rate_window)) {
        scheduler.run_for(config.poll_interval);
        const auto state = probe();
        if (!state) {
            result.verdict = Verdict::blocked;
            result.detail = "M-Plane lost during the test";
            return result;
        }
        if (*state == "LOCKED" && !result.locked) {
            result.locked = true;
            result.lock_time = scheduler.now() - start;
        }
        if (result.locked && scheduler.now() - start >= config.rate_window) break;
    }
    result.observed_announce_hz = flow.observed_announce_rate_hz();
    if (!result.locked) {
        result.verdict = Verdict::fail;
        result.detail = "O-RU did not report LOCKED within the convergence budget";
        return result;
    }
    result.violations = flow.config().profile.violations();
    const double want = flow.config().profile.announce_rate_hz;
    if (std::abs(result.observed_announce_hz - want) > config.rate_tolerance * want) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "observed announce rate %.3g Hz, profile requires %.3g Hz",
                      result.observed_announce_hz, want);
        result.violations.emplace_back(buf);
    }
    result.verdict = result.violations.empty() ? Verdict::pass : Verdict::fail;
    result.detail = result.violations.empty() ? "LOCKED, announce rate conforms" : result.violations.front();
    return result;
}

double TimeErrorSeries::max_abs_te_ns() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) worst = std::max(worst, std::abs(reported(i)));
    return worst;
}

double TimeErrorSeries::mean_te_ns() const {
    if (samples.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) sum += reported(i);
    return sum / static_cast<double>(samples.size());
}

void TimeErrorSeries::write(std::ostream& out) const {
    char line[64];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::snprintf(line, sizeof line, "%lld %.3f\n", static_cast<long long>(samples[i].t), reported(i));
        out << line;
    }
}

PerformanceResult run_performance_test(sim::Scheduler& scheduler, PtpFlow& flow, const PerformanceConfig& config,
                                       const SyncStateProbe& probe) {
    PerformanceResult result;
    result.series.calibration_offset_ns = config.calibration_offset_ns;
    if (!probe()) {
        result.detail = "M-Plane unavailable; sync state cannot be observed";
        return result;
    }
    flow.start();
    const sim::SimTime start = scheduler.now();
    const sim::SimTime poll = sim::millis(100);
    while (scheduler.now() - start < config.lock_budget) {
        scheduler.run_for(poll);
        const auto state = probe();
        if (!state) break;
        if (*state == "LOCKED") {
            result.locked = true;
            break;
        }
    }
    if (!result.locked) {
        result.detail = "O-RU never reported LOCKED; time error not measurable";
        return result;
    }
    scheduler.run_for(config.settle);
    const sim::SimTime end = scheduler.now() + config.duration;
    while (scheduler.now() < end) {
        scheduler.run_for(config.sample_interval);
        result.series.samples.push_back(
            {scheduler.now(), flow.time_error_at(scheduler.now()) + config.trigger_cable_delay_ns});
    }
    result.max_te_ns = result.series.max_abs_te_ns();
    result.mean_te_ns = result.series.mean_te_ns();
    result.verdict = result.max_te_ns <= config.te_limit_ns ? Verdict::pass : Verdict::fail;
    char buf[128];
    std::snprintf(buf, sizeof buf, "max|TE| %.1f ns (limit %.0f ns), mean %.1f ns", result.max_te_ns,
                  config.te_limit_ns, result.mean_te_ns);
    result.detail = buf;
    return result;
}

} // namespace ofh::splane
