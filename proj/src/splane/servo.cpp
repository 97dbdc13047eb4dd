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

#include "ofh/splane/servo.hpp"

#include <cmath>

namespace ofh::splane {

std::string_view to_string(SyncState s) noexcept {
    switch (s) {
    case SyncState::freerun: return "FREERUN";
    case SyncState::holdover: return "HOLDOVER";
    case SyncState::locked: return "LOCKED";
    }
    return "UNKNOWN";
}

Servo::Servo(ServoConfig config) : config_(config) {}

SyncState Servo::update(double offset_est_ns, SimClock& clock, double now, double interval_ns) {
    ++updates_;
    last_update_ = now;
    seen_update_ = true;
    state_.servo.estimated_offset_ns = offset_est_ns;

    if (std::abs(offset_est_ns) > config_.step_threshold_ns) {
        clock.adjust_phase(-offset_est_ns);
        ++steps_;
    } else {
        const double interval_s = interval_ns * 1e-9;
        const double freq_step_ppb = -config_.ki * offset_est_ns / interval_s;
        state_.servo.integrator += config_.ki * offset_est_ns;
        state_.servo.estimated_freq_ppb -= freq_step_ppb;
        clock.adjust_phase(-config_.kp * offset_est_ns);
        clock.adjust_frequency(freq_step_ppb, now);
    }

    if (std::abs(offset_est_ns) < config_.lock_threshold_ns) {
        ++in_range_;
        out_of_range_ = 0;
    } else {
        ++out_of_range_;
        in_range_ = 0;
    }
    if (state_.sync_state != SyncState::locked && in_range_ >= config_.hold_count) {
        state_.sync_state = SyncState::locked;
    } else if (state_.sync_state != SyncState::freerun && out_of_range_ >= config_.hold_count) {
        state_.sync_state = SyncState::freerun;
    }
    return state_.sync_state;
}

SyncState Servo::check_timeout(double now) {
    if (state_.sync_state == SyncState::locked && seen_update_ && now - last_update_ >= config_.holdover_timeout_ns) {
        state_.sync_state = SyncState::holdover;
        in_range_ = 0;
        out_of_range_ = 0;
    }
    return state_.sync_state;
}

} // namespace ofh::splane
