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
#include <vector>

#include "ofh/cuplane/beam.hpp"
#include "ofh/cuplane/flows.hpp"
#include "ofh/cuplane/rf.hpp"
#include "ofh/verdict.hpp"

namespace ofh::cuplane {

struct DlmCounters {
    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    std::uint64_t dropped_early = 0;
    std::uint64_t dropped_late = 0;

    bool conserved() const noexcept { return received + dropped_early + dropped_late == sent; }
};

struct MeasurementResult {
    double normalized_error = 0.0;
    std::optional<double> detected_azimuth_deg;
    DlmCounters counters;
    Verdict verdict = Verdict::fail;
    double correlation_peak = 0.0;
    /// Energy the analyzer saw where only dropped messages were addressed.
    double out_of_window_energy = 0.0;
    std::string detail;
};

inline constexpr double kDefaultErrorThreshold = 1e-3;
inline constexpr double kPrachPeakThreshold = 0.9;

/// Emission is scaled by sqrt(P_ref / P_emit) first, so a pure gain
/// difference does not count. An all-zero emission scores 1.
double normalized_error(std::span<const Cplx> emitted, std::span<const Cplx> reference);

MeasurementResult compare_grids(std::span<const Cplx> emitted, std::span<const Cplx> reference,
                                double threshold = kDefaultErrorThreshold);

/// One slot of one antenna port against the reference grid.
MeasurementResult analyze_dl_output(const VirtualRf& rf, std::int64_t slot, int port,
                                    const ResourceGrid& reference,
                                    double threshold = kDefaultErrorThreshold);

MeasurementResult analyze_ul_output(const UplinkCollector& uplink, std::int64_t slot,
                                    const ResourceGrid& injected,
                                    double threshold = kDefaultErrorThreshold);

/// Beam check over one emitted slot: PASS iff the detected azimuth is
/// within `tolerance_deg` of `expected_deg`.
MeasurementResult analyze_beam(const VirtualRf& rf, std::int64_t slot, double expected_deg,
                               double tolerance_deg = 1.0);

/// x_u(n) = exp(-j*pi*u*n*(n+1)/L).
std::vector<Cplx> zadoff_chu(int root, int length);

struct Correlation {
    double peak = 0.0;
    int lag = 0;
};

/// Peak over circular lags of |sum r(n) conj(x((n+lag) mod L))| / (|r| |x|),
/// using the first `length` received samples.
Correlation prach_correlate(std::span<const Cplx> received, int root, int length);

/// Looks for the preamble in the O-RU's U-Plane answer to an ST3 occasion.
MeasurementResult analyze_prach(const UplinkCollector& uplink, std::int64_t slot, const PrachConfig& config,
                                double threshold = kPrachPeakThreshold);

/// Anything that accepts fronthaul frames on the simulated timeline.
class FronthaulDut {
public:
    virtual ~FronthaulDut() = default;
    virtual void receive_fronthaul(std::span<const std::uint8_t> frame) = 0;
};

struct DlmSetup {
    sim::Scheduler& scheduler;
    FronthaulDut& dut;
    VirtualRf& rf;
    /// Must already be wired to the DUT's UL output.
    UplinkCollector& uplink;
    FlowBuilder& builder;
    /// Stimulus for DL messages; UL messages sample whatever is injected.
    WaveformSpec waveform;
    Allocation allocation{0, 4, 0, kSymbolsPerSlot};
    int port = 0;
};

/// Sends one message per offset, each aimed at its own symbol (DL U-Plane)
/// or slot (UL C-Plane), `offsets[i]` before its air time. Counters are the
/// analyzer's view: a message counts as received iff its effect is seen on
/// the RF or UL side. PASS iff every message was processed exactly when the
/// window arithmetic says it should and dropped ones left no energy.
MeasurementResult evaluate_dlm(DlmSetup& setup, codec::DataDirection direction,
                               std::span<const sim::SimTime> offsets);

} // namespace ofh::cuplane
