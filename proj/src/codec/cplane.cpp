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

#include "ofh/codec/cplane.hpp"

#include <string>

#include "ofh/codec/bits.hpp"
#include "ofh/codec/error.hpp"

namespace ofh::codec {
namespace {

[[noreturn]] void structural(const char* field, const std::string& detail) {
    throw CodecError(CodecErrc::structural, field, detail);
}

// ext_type(8) ext_len(8) reserved(16), then one 32-bit word per weight.
std::uint8_t extension_words(std::size_t weights) {
    return static_cast<std::uint8_t>(1 + weights);
}

} // namespace

std::uint16_t effective_num_prb(std::uint16_t start_prb, std::uint8_t num_prb, bool rb,
                                std::uint16_t carrier_prbs) noexcept {
    if (num_prb != 0) {
        return num_prb;
    }
    if (start_prb >= carrier_prbs) {
        return 0;
    }
    const std::uint16_t span = carrier_prbs - start_prb;
    return rb ? static_cast<std::uint16_t>((span + 1) / 2) : span;
}

void validate(const CplaneMessage& message, const CodecConfig& config) {
    if (message.sections.empty()) {
        structural("number_of_sections", "a C-Plane message needs at least one section");
    }
    if (message.sections.size() > 255) {
        structural("number_of_sections", std::to_string(message.sections.size()) + " sections");
    }
    const bool is_st3 = message.section_type == SectionType::st3;
    if (is_st3 != message.st3.has_value()) {
        structural("st3_extras", is_st3 ? "ST3 message without ST3 fields"
                                        : "ST3 fields on a non-ST3 message");
    }
    for (const auto& s : message.sections) {
        if (!s.extension && !s.beam_weights.empty()) {
            structural("beam_weights", "weights present without extension flag");
        }
        if (s.extension && s.beam_weights.size() != config.ru_ports) {
            structural("beam_weights", std::to_string(s.beam_weights.size()) + " weights for " +
                                           std::to_string(config.ru_ports) + " RU ports");
        }
    }
}

std::vector<std::uint8_t> encode_cplane(const CplaneMessage& message, const CodecConfig& config) {
    validate(message, config);

    BitWriter w;
    w.put(static_cast<unsigned>(message.direction), 1, "data_direction");
    w.put(kPayloadVersion, 3, "payload_version");
    w.put(message.filter_index, 4, "filter_index");
    w.put(message.frame_id, 8, "frame_id");
    w.put(message.subframe_id, 4, "subframe_id");
    w.put(message.slot_id, 6, "slot_id");
    w.put(message.start_symbol_id, 6, "start_symbol_id");
    w.put(message.sections.size(), 8, "number_of_sections");
    w.put(static_cast<unsigned>(message.section_type), 8, "section_type");
    if (message.st3) {
        w.put(message.st3->time_offset, 16, "time_offset");
        w.put(message.st3->frame_structure, 8, "frame_structure");
        w.put(message.st3->cp_length, 16, "cp_length");
        w.put_signed(message.st3->freq_offset, 24, "freq_offset");
    }
    for (const auto& s : message.sections) {
        w.put(s.section_id, 12, "section_id");
        w.put_bool(s.rb);
        w.put_bool(s.sym_inc);
        w.put(s.start_prb, 10, "start_prb");
        w.put(s.num_prb, 8, "num_prb");
        w.put(s.re_mask, 12, "re_mask");
        w.put(s.num_symbol, 4, "num_symbol");
        w.put_bool(s.extension);
        w.put(s.beam_id, 15, "beam_id");
        if (s.extension) {
            w.put(kBeamWeightExtension, 8, "ext_type");
            w.put(extension_words(s.beam_weights.size()), 8, "ext_len");
            w.put(0, 16, "reserved");
            for (const auto& weight : s.beam_weights) {
                w.put_signed(weight.i, 16, "weight_i");
                w.put_signed(weight.q, 16, "weight_q");
            }
        }
    }

    EcpriHeader header = message.header;
    header.message_type = EcpriMessageType::rt_control;
    const auto payload = w.take();
    return encode_ecpri(header, payload);
}

CplaneMessage decode_cplane(std::span<const std::uint8_t> frame, const CodecConfig& config) {
    auto ecpri = decode_ecpri(frame, config.layout);
    if (ecpri.header.message_type != EcpriMessageType::rt_control) {
        throw CodecError(CodecErrc::unknown_message_type, "message_type",
                         "C-Plane decode of a non real-time-control frame");
    }

    CplaneMessage m;
    m.header = ecpri.header;
    BitReader r(ecpri.payload);
    m.direction = static_cast<DataDirection>(r.get(1, "data_direction"));
    if (const auto version = r.get(3, "payload_version"); version != kPayloadVersion) {
        structural("payload_version", "version " + std::to_string(version));
    }
    m.filter_index = static_cast<std::uint8_t>(r.get(4, "filter_index"));
    m.frame_id = static_cast<std::uint8_t>(r.get(8, "frame_id"));
    m.subframe_id = static_cast<std::uint8_t>(r.get(4, "subframe_id"));
    m.slot_id = static_cast<std::uint8_t>(r.get(6, "slot_id"));
    m.start_symbol_id = static_cast<std::uint8_t>(r.get(6, "start_symbol_id"));
    const auto section_count = r.get(8, "number_of_sections");
    const auto type = r.get(8, "section_type");
    switch (type) {
    case 1: m.section_type = SectionType::st1; break;
    case 3: m.section_type = SectionType::st3; break;
    default:
        throw CodecError(CodecErrc::unsupported_section_type, "section_type",
                         "section type " + std::to_string(type));
    }
    if (section_count == 0) {
        structural("number_of_sections", "zero sections");
    }
    if (m.section_type == SectionType::st3) {
        St3Fields st3;
        st3.time_offset = static_cast<std::uint16_t>(r.get(16, "time_offset"));
        st3.frame_structure = static_cast<std::uint8_t>(r.get(8, "frame_structure"));
        st3.cp_length = static_cast<std::uint16_t>(r.get(16, "cp_length"));
        st3.freq_offset = static_cast<std::int32_t>(r.get_signed(24, "freq_offset"));
        m.st3 = st3;
    }
    for (std::uint64_t k = 0; k < section_count; ++k) {
        CplaneSection s;
        s.section_id = static_cast<std::uint16_t>(r.get(12, "section_id"));
        s.rb = r.get_bool("rb");
        s.sym_inc = r.get_bool("sym_inc");
        s.start_prb = static_cast<std::uint16_t>(r.get(10, "start_prb"));
        s.num_prb = static_cast<std::uint8_t>(r.get(8, "num_prb"));
        s.re_mask = static_cast<std::uint16_t>(r.get(12, "re_mask"));
        s.num_symbol = static_cast<std::uint8_t>(r.get(4, "num_symbol"));
        s.extension = r.get_bool("ef");
        s.beam_id = static_cast<std::uint16_t>(r.get(15, "beam_id"));
        if (s.extension) {
            if (const auto ext = r.get(8, "ext_type"); ext != kBeamWeightExtension) {
                structural("ext_type", "unsupported section extension " + std::to_string(ext));
            }
            const auto words = r.get(8, "ext_len");
            r.get(16, "reserved");
            if (words < 1) {
                structural("ext_len", "zero-length extension");
            }
            s.beam_weights.resize(words - 1);
            for (auto& weight : s.beam_weights) {
                weight.i = static_cast<std::int16_t>(r.get_signed(16, "weight_i"));
                weight.q = static_cast<std::int16_t>(r.get_signed(16, "weight_q"));
            }
        }
        m.sections.push_back(std::move(s));
    }
    if (!r.at_end()) {
        throw CodecError(CodecErrc::payload_size_mismatch, "payload",
                         std::to_string(r.bits_remaining() / 8) + " trailing bytes");
    }
    validate(m, config);
    return m;
}

} // namespace ofh::codec
