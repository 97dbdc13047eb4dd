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

#include "ofh/splane/clock.hpp"

namespace ofh::splane {

SimClock::SimClock(double phase_offset_ns, double freq_offset_ppb, double noise_std_ns, std::uint64_t rng_seed,
                   sim::Stream stream)
    : phase_ns_(phase_offset_ns), freq_ppb_(freq_offset_ppb), noise_std_ns_(noise_std_ns), rng_(rng_seed, stream) {}

double SimClock::true_time(double t) const noexcept { return t + phase_ns_ + freq_ppb_ * (t - epoch_) * 1e-9; }

double SimClock::read(double t) {
    const double local = true_time(t);
    return noise_std_ns_ > 0.0 ? local + rng_.gaussian(noise_std_ns_) : local;
}

void SimClock::adjust_frequency(double delta_ppb, double at) noexcept {
    // Fold the elapsed drift into the phase so the new rate starts at `at`.
    phase_ns_ += freq_ppb_ * (at - epoch_) * 1e-9;
    epoch_ = at;
    freq_ppb_ += delta_ppb;
}

} // namespace ofh::splane
