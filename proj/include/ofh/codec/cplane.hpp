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
#include <vector>

#include "ofh/codec/bfp.hpp"
#include "ofh/codec/ecpri.hpp"

namespace ofh::codec {

enum class DataDirection : std::uint8_t {
    uplink = 0,
    downlink = 1,
};

enum class SectionType : std::uint8_t {
    st1 = 1,
    st3 = 3,
};

inline constexpr std::uint8_t kPayloadVersion = 1;

/// Session-level parameters both endpoints agree on out of band. Compression
/// is static, so nothing about it travels in the messages.
struct CodecConfig {
    EaxcLayout layout{};
    std::uint16_t carrier_prbs = 133;
    std::uint8_t ru_ports = 32;
};

struct CplaneSection {
    std::uint16_t section_id = 0;    // 12 bits
    bool rb = false;                 // every other PRB
    bool sym_inc = false;
    std::uint16_t start_prb = 0;     // 10 bits
    std::uint8_t num_prb = 0;        // 0 = all PRBs from start_prb
    std::uint16_t re_mask = 0x0FFF;  // 12 bits
    std::uint8_t num_symbol = 1;     // 4 bits
    bool extension = false;
    std::uint16_t beam_id = 0;       // 15 bits
    /// Uncompressed complex weights, one per RU port; present iff `extension`.
    std::vector<IqSample> beam_weights;

    bool operator==(const CplaneSection&) const = default;
};

struct St3Fields {
    std::uint16_t time_offset = 0;
    std::uint8_t frame_structure = 0;
    std::uint16_t cp_length = 0;
    std::int32_t freq_offset = 0;  // signed 24 bits

    bool operator==(const St3Fields&) const = default;
};

/// Wire layout after the eCPRI header, MSB first:
///   direction(1) payload_version(3) filter_index(4) frame_id(8)
///   subframe_id(4) slot_id(6) start_symbol_id(6) number_of_sections(8)
///   section_type(8)
///   [ST3] time_offset(16) frame_structure(8) cp_length(16) freq_offset(24)
///   per section: section_id(12) rb(1) sym_inc(1) start_prb(10) num_prb(8)
///                re_mask(12) num_symbol(4) ef(1) beam_id(15)
///                [ef] ext_type(8)=1 ext_len(8, 4-byte words) reserved(16)
///                     weights: I(16) Q(16) x ru_ports
struct CplaneMessage {
    EcpriHeader header{.message_type = EcpriMessageType::rt_control};
    DataDirection direction = DataDirection::downlink;
    std::uint8_t filter_index = 0;
    std::uint8_t frame_id = 0;
    std::uint8_t subframe_id = 0;
    std::uint8_t slot_id = 0;
    std::uint8_t start_symbol_id = 0;
    SectionType section_type = SectionType::st1;
    std::optional<St3Fields> st3;
    std::vector<CplaneSection> sections;

    bool operator==(const CplaneMessage&) const = default;
};

inline constexpr std::uint8_t kBeamWeightExtension = 1;

/// Full frame (eCPRI header + payload). The header's message type is forced to
/// real-time control and its payload size is recomputed.
std::vector<std::uint8_t> encode_cplane(const CplaneMessage& message, const CodecConfig& config);
CplaneMessage decode_cplane(std::span<const std::uint8_t> frame, const CodecConfig& config);

/// Checks the structural invariants (sections, ST3 extras, weight count);
/// throws CodecError(structural) on the first violation.
void validate(const CplaneMessage& message, const CodecConfig& config);

/// PRB count a section covers once "0 = all" and the rb stride are applied.
std::uint16_t effective_num_prb(std::uint16_t start_prb, std::uint8_t num_prb, bool rb,
                                std::uint16_t carrier_prbs) noexcept;

} // namespace ofh::codec
