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

#include "ofh/sim/random.hpp"

namespace ofh::splane {

/// Free-running oscillator with phase/frequency error and timestamping noise.
/// Times are nanoseconds as doubles so sub-nanosecond path delays survive.
class SimClock {
public:
    SimClock(double phase_offset_ns = 0.0, double freq_offset_ppb = 0.0, double noise_std_ns = 0.0,
             std::uint64_t rng_seed = 0, sim::Stream stream = sim::Stream::slave_clock);

    /// Timestamp taken at true time `t`: true_time(t) plus seeded noise.
    double read(double t);
    /// Noise-free local time at true time `t`.
    double true_time(double t) const noexcept;
    /// true_time(t) - t.
    double offset_at(double t) const noexcept { return true_time(t) - t; }

    void adjust_phase(double delta_ns) noexcept { phase_ns_ += delta_ns; }
    /// Changes the rate from `at` onwards; earlier readings are unaffected.
    void adjust_frequency(double delta_ppb, double at) noexcept;

    double phase_offset_ns() const noexcept { return phase_ns_; }
    double freq_offset_ppb() const noexcept { return freq_ppb_; }
    double noise_std_ns() const noexcept { return noise_std_ns_; }

private:
    double phase_ns_;
    double freq_ppb_;
    double epoch_ = 0.0;
    double noise_std_ns_;
    sim::Rng rng_;
};

} // namespace ofh::splane
