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
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ofh/sim/random.hpp"
#include "ofh/splane/clock.hpp"

namespace ofh::splane {

/// Message rates and domain of the telecom profile with full timing support.
struct PtpProfileConfig {
    std::uint8_t domain_number = 24;
    double announce_rate_hz = 8.0;
    double sync_rate_hz = 16.0;
    double delay_req_rate_hz = 16.0;
    bool two_step = false;

    /// Human-readable reasons the configuration is outside the profile.
    std::vector<std::string> violations() const;
    bool valid() const { return violations().empty(); }
};

/// Fixed residence time plus uniform jitter in [0, jitter_ns].
struct HopModel {
    double residence_ns = 0.0;
    double jitter_ns = 0.0;
};

struct PathModel {
    double forward_delay_ns = 0.0;
    double reverse_delay_ns = 0.0;
    std::vector<HopModel> hops;

    /// Master-to-slave transit for one message.
    double forward(sim::Rng& jitter) const;
    /// Slave-to-master transit for one message.
    double reverse(sim::Rng& jitter) const;
    /// Sum of fixed residence times (jitter excluded).
    double fixed_residence_ns() const noexcept;
};

enum class Topology { c1, c2, c3 };
std::string to_string(Topology t);

/// Lower-layer-split topologies: C1 is a direct link; C2 crosses one switch;
/// C3 crosses a chain of three. `asymmetry_ns` is added to the reverse path.
PathModel make_path(Topology topology, double base_delay_ns, double asymmetry_ns = 0.0,
                    double residence_ns = 1000.0, double jitter_ns = 20.0);

struct ExchangeResult {
    double t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    double offset_est_ns = 0;
    double delay_est_ns = 0;
};

/// Offset and mean-path-delay from the four timestamps.
ExchangeResult solve_exchange(double t1, double t2, double t3, double t4) noexcept;

/// One Sync / Delay_Req round starting at true time `start`. The slave
/// answers `turnaround_ns` after receiving Sync. Returns the timestamps and
/// the true time at which Delay_Resp information is complete.
ExchangeResult ptp_exchange(SimClock& master, SimClock& slave, const PathModel& path, double start,
                            sim::Rng& jitter, double turnaround_ns = 1000.0, double* completed_at = nullptr);

struct AnnounceRecord {
    std::uint8_t priority1 = 128;
    std::uint8_t clock_class = 248;
    std::uint8_t clock_accuracy = 0xFE;
    std::uint8_t priority2 = 128;
    std::uint64_t clock_identity = 0;

    auto key() const noexcept {
        return std::tuple(priority1, clock_class, clock_accuracy, priority2, clock_identity);
    }
    bool operator==(const AnnounceRecord&) const = default;
};

/// Best master by (priority1, class, accuracy, priority2, identity), lower
/// wins. Empty input selects nothing.
std::optional<AnnounceRecord> bmca_select(std::span<const AnnounceRecord> announces);

} // namespace ofh::splane
