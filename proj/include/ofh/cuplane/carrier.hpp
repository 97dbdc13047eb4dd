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
#include <stdexcept>
#include <string>

#include "ofh/codec/cplane.hpp"
#include "ofh/sim/time.hpp"

namespace ofh::cuplane {

enum class CuplaneErrc {
    invalid_config,
    zero_seed,
    allocation_out_of_range,
    inactive_carrier,
    tdd_violation,
    malformed_beam_table,
    unknown_beam,
    schedule_in_past,
};

const char* to_string(CuplaneErrc code) noexcept;

class CuplaneError : public std::runtime_error {
public:
    CuplaneError(CuplaneErrc code, const std::string& detail);
    CuplaneErrc code() const noexcept { return code_; }

private:
    CuplaneErrc code_;
};

inline constexpr int kSymbolsPerSlot = 14;

enum class SlotKind : char { downlink = 'D', uplink = 'U', special = 'S' };

struct CarrierConfig {
    std::string band = "n77";
    int bandwidth_mhz = 50;
    int numerology = 1;
    int scs_khz = 30;
    int n_prb = 133;
    /// One letter per slot, repeating: D, U or S. Special slots carry both.
    std::string tdd_pattern = "DDDSU";
    int ru_ports = 32;
    int iq_bitwidth = 9;
    codec::EaxcLayout eaxc_layout{};

    /// Throws CuplaneError(invalid_config).
    void validate() const;

    int slots_per_subframe() const noexcept { return 1 << numerology; }
    int slots_per_frame() const noexcept { return 10 * slots_per_subframe(); }
    sim::SimTime slot_duration_ns() const noexcept { return sim::kNanosPerMilli >> numerology; }

    SlotKind slot_kind(std::int64_t abs_slot) const;
    bool carries(std::int64_t abs_slot, codec::DataDirection direction) const;

    codec::CodecConfig codec_config() const;
};

/// Radio frame numbering of one slot as it appears on the wire.
struct SlotAddress {
    std::uint8_t frame_id = 0;
    std::uint8_t subframe_id = 0;
    std::uint8_t slot_id = 0;
    bool operator==(const SlotAddress&) const = default;
};

// Absolute slot 0 starts at simulated time 0; both ends share that timeline.
SlotAddress slot_address(const CarrierConfig& carrier, std::int64_t abs_slot);
sim::SimTime slot_start(const CarrierConfig& carrier, std::int64_t abs_slot);
sim::SimTime symbol_time(const CarrierConfig& carrier, std::int64_t abs_slot, int symbol);
/// Slot containing `t` (floor).
std::int64_t slot_at(const CarrierConfig& carrier, sim::SimTime t);
/// Frame ids wrap every 256 frames; picks the absolute slot with this address
/// closest to `near`.
std::int64_t resolve_slot(const CarrierConfig& carrier, const SlotAddress& address, sim::SimTime near);

/// Reception windows, expressed as how long before the symbol's air time a
/// message may arrive. Both ends are inclusive.
struct DelayWindow {
    sim::SimTime t2a_min_up_ns = 100'000;
    sim::SimTime t2a_max_up_ns = 400'000;
    sim::SimTime t2a_min_cp_ns = 250'000;
    sim::SimTime t2a_max_cp_ns = 550'000;

    void validate() const;
    sim::SimTime mid_up() const noexcept { return (t2a_min_up_ns + t2a_max_up_ns) / 2; }
    sim::SimTime mid_cp() const noexcept { return (t2a_min_cp_ns + t2a_max_cp_ns) / 2; }
};

enum class Arrival { on_time, early, late };
const char* to_string(Arrival arrival) noexcept;

/// `advance` is air time minus arrival time.
Arrival classify(sim::SimTime advance, sim::SimTime min_ns, sim::SimTime max_ns) noexcept;

} // namespace ofh::cuplane
