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
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "ofh/codec/cplane.hpp"
#include "ofh/codec/uplane.hpp"
#include "ofh/cuplane/carrier.hpp"
#include "ofh/cuplane/grid.hpp"
#include "ofh/sim/scheduler.hpp"

namespace ofh::cuplane {

enum class Plane { control, user };

struct TimedMessage {
    Plane plane = Plane::control;
    codec::DataDirection direction = codec::DataDirection::downlink;
    std::int64_t slot = 0;
    int symbol = 0;
    /// Over-the-air time of the first symbol the message refers to.
    sim::SimTime air_time = 0;
    /// How long before `air_time` the message reaches the O-RU.
    sim::SimTime advance = 0;
    sim::SimTime send_at = 0;
    std::vector<std::uint8_t> frame;
};

using Flow = std::vector<TimedMessage>;

/// Moves a message so it arrives `advance` before its air time.
void retime(TimedMessage& message, sim::SimTime advance);

/// Beam id 0 with no weights transmits the stream on its own RU port only.
/// Non-empty inline weights take precedence and set the extension flag.
struct BeamSpec {
    std::uint16_t beam_id = 0;
    std::vector<Cplx> inline_weights;
};

/// Scales so the largest component uses the int16 range.
std::vector<codec::IqSample> quantize_weights(std::span<const Cplx> weights);
std::vector<Cplx> dequantize_weights(std::span<const codec::IqSample> weights);

// Short-preamble PRACH conventions shared by both ends.
inline constexpr int kPrachLength = 139;
inline constexpr sim::SimTime kPrachSamplePeriodNs = 257;

struct PrachConfig {
    int root = 1;
    int length = kPrachLength;
    int start_prb = 0;
    int num_prb = 12;
    int start_symbol = 0;
    int num_symbols = 1;
    /// Both in PRACH samples. The occasion starts time_offset samples after
    /// the symbol; a preamble may arrive up to cp_length samples into it.
    std::uint16_t time_offset = 0;
    std::uint16_t cp_length = 16;
    std::int32_t freq_offset = 0;
    std::uint8_t frame_structure = 0x81;
    double amplitude = 2048.0;
};

sim::SimTime prach_occasion_start(const CarrierConfig& carrier, std::int64_t slot,
                                  int start_symbol, std::uint16_t time_offset);

/// TER-side message factory. One eAxC, one section per message; sequence ids
/// count per plane.
class FlowBuilder {
public:
    FlowBuilder(CarrierConfig carrier, DelayWindow window, codec::EaxcId eaxc = {});

    /// Mirrors what the TER read back over the M-Plane. Building a flow for
    /// an inactive carrier throws CuplaneError(inactive_carrier).
    void set_carrier_active(bool active) noexcept { active_ = active; }
    bool carrier_active() const noexcept { return active_; }

    const CarrierConfig& carrier() const noexcept { return carrier_; }
    const DelayWindow& window() const noexcept { return window_; }
    const codec::EaxcId& eaxc() const noexcept { return eaxc_; }

    /// One ST1 C-Plane message, then one U-Plane message per allocated symbol.
    Flow dl_slot(std::int64_t slot, const ResourceGrid& grid, const Allocation& allocation,
                 const BeamSpec& beam = {});
    /// One ST1 UL C-Plane message; the O-RU answers with U-Plane.
    Flow ul_slot(std::int64_t slot, const Allocation& allocation);
    /// One ST3 C-Plane message describing the occasion.
    Flow prach(std::int64_t slot, const PrachConfig& config);

private:
    void check(std::int64_t slot, codec::DataDirection direction) const;
    codec::EcpriHeader header(codec::EcpriMessageType type);

    CarrierConfig carrier_;
    DelayWindow window_;
    codec::EaxcId eaxc_;
    bool active_ = false;
    std::uint8_t cplane_seq_ = 0;
    std::uint8_t uplane_seq_ = 0;
};

/// Schedules delivery of every message at its send time. Throws
/// CuplaneError(schedule_in_past) rather than silently shifting a message.
void schedule_flow(sim::Scheduler& scheduler, const Flow& flow,
                   std::function<void(const TimedMessage&)> deliver);

/// Collects and decodes the O-RU's UL U-Plane output.
class UplinkCollector {
public:
    struct Received {
        sim::SimTime at = 0;
        std::int64_t slot = 0;
        codec::UplaneMessage message;
    };

    explicit UplinkCollector(CarrierConfig carrier);

    void on_frame(sim::SimTime at, std::span<const std::uint8_t> frame);

    const std::vector<Received>& received() const noexcept { return received_; }
    std::uint64_t decode_errors() const noexcept { return decode_errors_; }
    bool has_slot(std::int64_t slot) const;
    /// Decompressed samples for one symbol, full band.
    std::vector<Cplx> symbol_values(std::int64_t slot, int symbol) const;
    /// Whole slot, symbol-major.
    std::vector<Cplx> slot_values(std::int64_t slot) const;
    void clear();

private:
    CarrierConfig carrier_;
    std::vector<Received> received_;
    std::map<std::pair<std::int64_t, int>, std::vector<Cplx>> symbols_;
    std::uint64_t decode_errors_ = 0;
};

} // namespace ofh::cuplane
