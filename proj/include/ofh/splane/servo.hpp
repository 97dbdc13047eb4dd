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

#include <cstdint>
#include <string_view>

#include "ofh/splane/clock.hpp"

namespace ofh::splane {

enum class SyncState { freerun, holdover, locked };
std::string_view to_string(SyncState s) noexcept;

struct ServoConfig {
    double kp = 0.1;
    double ki = 0.01;
    double lock_threshold_ns = 100.0;
    int hold_count = 8;
    /// Offsets beyond this are removed by a phase step instead of slewing.
    double step_threshold_ns = 20'000.0;
    /// Exchange silence after which a LOCKED clock enters HOLDOVER.
    double holdover_timeout_ns = 1e9;
};

struct ServoState {
    double estimated_offset_ns = 0.0;
    double estimated_freq_ppb = 0.0;
    double integrator = 0.0;
};

struct ClockState {
    SyncState sync_state = SyncState::freerun;
    ServoState servo;
};

/// PI servo steering a SimClock from per-exchange offset estimates, plus the
/// lock-state machine with symmetric hold-count hysteresis.
class Servo {
public:
    explicit Servo(ServoConfig config = {});

    /// Applies one correction at true time `now`; `interval_ns` is the spacing
    /// between exchanges. Returns the (possibly new) state.
    SyncState update(double offset_est_ns, SimClock& clock, double now, double interval_ns);

    /// Called periodically; moves LOCKED to HOLDOVER after the silence timeout.
    SyncState check_timeout(double now);

    const ClockState& state() const noexcept { return state_; }
    const ServoConfig& config() const noexcept { return config_; }
    std::uint64_t updates() const noexcept { return updates_; }
    std::uint64_t steps() const noexcept { return steps_; }

private:
    ServoConfig config_;
    ClockState state_;
    int in_range_ = 0;
    int out_of_range_ = 0;
    double last_update_ = 0.0;
    bool seen_update_ = false;
    std::uint64_t updates_ = 0;
    std::uint64_t steps_ = 0;
};

} // namespace ofh::splane
