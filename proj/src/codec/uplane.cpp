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

#include "ofh/codec/uplane.hpp"

#include <string>

#include "ofh/codec/bits.hpp"
#include "ofh/codec/error.hpp"

namespace ofh::codec {
namespace {

constexpr std::size_t kSectionHeaderBits = 32;

} // namespace

void validate(const UplaneMessage& message, const CodecConfig& config) {
    if (message.sections.empty()) {
        throw CodecError(CodecErrc::structural, "sections", "a U-Plane message needs a section");
    }
    for (const auto& s : message.sections) {
        const auto expected = effective_num_prb(s.start_prb, s.num_prb, s.rb, config.carrier_prbs);
        if (s.prbs.size() != expected) {
            throw CodecError(CodecErrc::structural, "prbs",
                             "section " + std::to_string(s.section_id) + " carries " +
                                 std::to_string(s.prbs.size()) + " PRBs, expected " +
                                 std::to_string(expected));
        }
        for (const auto& prb : s.prbs) {
            if (!prb.valid()) {
                throw CodecError(CodecErrc::field_overflow, "prb",
                                 "exponent or mantissa out of range");
            }
        }
    }
}

std::vector<std::uint8_t> encode_uplane(const UplaneMessage& message, const CodecConfig& config) {
    validate(message, config);

    BitWriter w;
    w.put(static_cast<unsigned>(message.direction), 1, "data_direction");
    w.put(kPayloadVersion, 3, "payload_version");
    w.put(message.filter_index, 4, "filter_index");
    w.put(message.frame_id, 8, "frame_id");
    w.put(message.subframe_id, 4, "subframe_id");
    w.put(message.slot_id, 6, "slot_id");
    w.put(message.symbol_id, 6, "symbol_id");
    for (const auto& s : message.sections) {
        w.put(s.section_id, 12, "section_id");
        w.put_bool(s.rb);
        w.put_bool(s.sym_inc);
        w.put(s.start_prb, 10, "start_prb");
        w.put(s.num_prb, 8, "num_prb");
        for (const auto& prb : s.prbs) {
            write_prb(w, prb);
        }
    }

    EcpriHeader header = message.header;
    header.message_type = EcpriMessageType::iq_data;
    const auto payload = w.take();
    return encode_ecpri(header, payload);
}

UplaneMessage decode_uplane(std::span<const std::uint8_t> frame, const CodecConfig& config) {
    auto ecpri = decode_ecpri(frame, config.layout);
    if (ecpri.header.message_type != EcpriMessageType::iq_data) {
        throw CodecError(CodecErrc::unknown_message_type, "message_type",
                         "U-Plane decode of a non IQ-data frame");
    }

    UplaneMessage m;
    m.header = ecpri.header;
    BitReader r(ecpri.payload);
    m.direction = static_cast<DataDirection>(r.get(1, "data_direction"));
    if (const auto version = r.get(3, "payload_version"); version != kPayloadVersion) {
        throw CodecError(CodecErrc::structural, "payload_version",
                         "version " + std::to_string(version));
    }
    m.filter_index = static_cast<std::uint8_t>(r.get(4, "filter_index"));
    m.frame_id = static_cast<std::uint8_t>(r.get(8, "frame_id"));
    m.subframe_id = static_cast<std::uint8_t>(r.get(4, "subframe_id"));
    m.slot_id = static_cast<std::uint8_t>(r.get(6, "slot_id"));
    m.symbol_id = static_cast<std::uint8_t>(r.get(6, "symbol_id"));

    while (r.bits_remaining() >= kSectionHeaderBits) {
        UplaneSection s;
        s.section_id = static_cast<std::uint16_t>(r.get(12, "section_id"));
        s.rb = r.get_bool("rb");
        s.sym_inc = r.get_bool("sym_inc");
        s.start_prb = static_cast<std::uint16_t>(r.get(10, "start_prb"));
        s.num_prb = static_cast<std::uint8_t>(r.get(8, "num_prb"));
        const auto count = effective_num_prb(s.start_prb, s.num_prb, s.rb, config.carrier_prbs);
        s.prbs.reserve(count);
        for (std::uint16_t k = 0; k < count; ++k) {
            s.prbs.push_back(read_prb(r));
        }
        m.sections.push_back(std::move(s));
    }
    if (!r.at_end()) {
        throw CodecError(CodecErrc::truncated, "section",
                         std::to_string(r.bits_remaining() / 8) + " bytes left, short of a section");
    }
    validate(m, config);
    return m;
}

} // namespace ofh::codec
