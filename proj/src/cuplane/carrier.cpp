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

#include "ofh/cuplane/carrier.hpp"

#include <cstdlib>

namespace ofh::cuplane {

const char* to_string(CuplaneErrc code) noexcept {
    switch (code) {
    case CuplaneErrc::invalid_config: return "invalid-config";
    case CuplaneErrc::zero_seed: return "zero-seed";
    case CuplaneErrc::allocation_out_of_range: return "allocation-out-of-range";
    case CuplaneErrc::inactive_carrier: return "inactive-carrier";
    case CuplaneErrc::tdd_violation: return "tdd-violation";
    case CuplaneErrc::malformed_beam_table: return "malformed-beam-table";
    case CuplaneErrc::unknown_beam: return "unknown-beam";
    case CuplaneErrc::schedule_in_past: return "schedule-in-past";
    }
    return "unknown";
}

CuplaneError::CuplaneError(CuplaneErrc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

void CarrierConfig::validate() const {
    auto fail = [](const std::string& what) { throw CuplaneError(CuplaneErrc::invalid_config, what); };
    if (numerology < 0 || numerology > 4) fail("numerology");
    if (scs_khz != (15 << numerology)) fail("scs_khz does not match numerology");
    if (n_prb <= 0 || n_prb > 275) fail("n_prb");
    if (tdd_pattern.empty()) fail("tdd_pattern");
    for (char c : tdd_pattern) {
        if (c != 'D' && c != 'U' && c != 'S') fail("tdd_pattern letter");
    }
    if (ru_ports <= 0 || ru_ports > 255) fail("ru_ports");
    if (iq_bitwidth != 9) fail("only 9-bit BFP is supported");
    eaxc_layout.validate();
}

SlotKind CarrierConfig::slot_kind(std::int64_t abs_slot) const {
    const auto n = static_cast<std::int64_t>(tdd_pattern.size());
    const auto idx = ((abs_slot % n) + n) % n;
    return static_cast<SlotKind>(tdd_pattern[static_cast<std::size_t>(idx)]);
}

bool CarrierConfig::carries(std::int64_t abs_slot, codec::DataDirection direction) const {
    const SlotKind kind = slot_kind(abs_slot);
    if (kind == SlotKind::special) return true;
    return direction == codec::DataDirection::downlink ? kind == SlotKind::downlink
                                                       : kind == SlotKind::uplink;
}

codec::CodecConfig CarrierConfig::codec_config() const {
    return codec::CodecConfig{eaxc_layout, static_cast<std::uint16_t>(n_prb),
                              static_cast<std::uint8_t>(ru_ports)};
}

SlotAddress slot_address(const CarrierConfig& carrier, std::int64_t abs_slot) {
    const std::int64_t per_frame = carrier.slots_per_frame();
    const std::int64_t frame = abs_slot / per_frame;
    const std::int64_t in_frame = abs_slot % per_frame;
    return SlotAddress{static_cast<std::uint8_t>(frame % 256),
                       static_cast<std::uint8_t>(in_frame / carrier.slots_per_subframe()),
                       static_cast<std::uint8_t>(in_frame % carrier.slots_per_subframe())};
}

sim::SimTime slot_start(const CarrierConfig& carrier, std::int64_t abs_slot) {
    return abs_slot * carrier.slot_duration_ns();
}

sim::SimTime symbol_time(const CarrierConfig& carrier, std::int64_t abs_slot, int symbol) {
    return slot_start(carrier, abs_slot) + symbol * carrier.slot_duration_ns() / kSymbolsPerSlot;
}

std::int64_t slot_at(const CarrierConfig& carrier, sim::SimTime t) {
    const auto d = carrier.slot_duration_ns();
    return t >= 0 ? t / d : -((-t + d - 1) / d);
}

std::int64_t resolve_slot(const CarrierConfig& carrier, const SlotAddress& address, sim::SimTime near) {
    const std::int64_t per_frame = carrier.slots_per_frame();
    const std::int64_t cycle = 256 * per_frame;
    const std::int64_t offset = address.frame_id * per_frame +
                                address.subframe_id * carrier.slots_per_subframe() + address.slot_id;
    const std::int64_t here = slot_at(carrier, near);
    const std::int64_t base = here - ((here % cycle) + cycle) % cycle;
    std::int64_t best = base + offset;
    for (std::int64_t candidate : {base - cycle + offset, base + cycle + offset}) {
        if (std::llabs(candidate - here) < std::llabs(best - here)) best = candidate;
    }
    return best;
}

void DelayWindow::validate() const {
    if (t2a_min_up_ns >= t2a_max_up_ns) throw CuplaneError(CuplaneErrc::invalid_config, "U-Plane window");
    if (t2a_min_cp_ns >= t2a_max_cp_ns) throw CuplaneError(CuplaneErrc::invalid_config, "C-Plane window");
}

const char* to_string(Arrival arrival) noexcept {
    switch (arrival) {
    case Arrival::on_time: return "on-time";
    case Arrival::early: return "early";
    case Arrival::late: return "late";
    }
    return "unknown";
}

Arrival classify(sim::SimTime advance, sim::SimTime min_ns, sim::SimTime max_ns) noexcept {
    if (advance > max_ns) return Arrival::early;
    if (advance < min_ns) return Arrival::late;
    return Arrival::on_time;
}

} // namespace ofh::cuplane
