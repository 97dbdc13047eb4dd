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

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "../support/codec_generators.hpp"
#include "ofh/codec/bfp.hpp"
#include "ofh/codec/capture.hpp"
#include "ofh/codec/cplane.hpp"
#include "ofh/codec/eaxc.hpp"
#include "ofh/codec/ecpri.hpp"
#include "ofh/codec/error.hpp"
#include "ofh/codec/uplane.hpp"

namespace {

using namespace ofh::codec;
using Bytes = std::vector<std::uint8_t>;

// Independent eAxC oracle: positional arithmetic instead of shifts and masks.
std::uint32_t eaxc_oracle(const EaxcId& id) {
    const auto& l = id.layout;
    std::uint32_t value = id.du_port_id;
    value = value * (1U << l.band_sector_bits) + id.band_sector_id;
    value = value * (1U << l.cc_bits) + id.cc_id;
    value = value * (1U << l.ru_port_bits) + id.ru_port_id;
    return value;
}

// Independent BFP oracle: brute force over every exponent with floor division.
unsigned bfp_exponent_oracle(const PrbSamples& samples) {
    for (unsigned e = 0; e <= 15; ++e) {
        bool fits = true;
        for (const auto& s : samples) {
            for (const int c : {int{s.i}, int{s.q}}) {
                const double shifted = std::floor(static_cast<double>(c) / std::ldexp(1.0, static_cast<int>(e)));
                fits = fits && shifted >= -256.0 && shifted <= 255.0;
            }
        }
        if (fits) {
            return e;
        }
    }
    return 15;
}

CodecErrc error_of(auto&& fn) {
    try {
        fn();
    } catch (const CodecError& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected a CodecError";
    return CodecErrc::structural;
}

TEST(Eaxc, ZeroPacksToZero) {
    EXPECT_EQ(pack_eaxc({}), 0x0000);
}

TEST(Eaxc, DefaultLayoutConcatenatesNibbles) {
    const EaxcId id{1, 2, 3, 4, {4, 4, 4, 4}};
    EXPECT_EQ(eaxc_oracle(id), 0x1234U);
    EXPECT_EQ(pack_eaxc(id), 0x1234);
}

TEST(Eaxc, UnevenLayout) {
    const EaxcId id{3, 0, 0, 1, {2, 6, 4, 4}};
    EXPECT_EQ(eaxc_oracle(id), 0xC001U);
    EXPECT_EQ(pack_eaxc(id), 0xC001);
}

TEST(Eaxc, OverflowNamesTheField) {
    try {
        pack_eaxc({0, 16, 0, 0, {4, 4, 4, 4}});
        FAIL();
    } catch (const CodecError& e) {
        EXPECT_EQ(e.code(), CodecErrc::field_overflow);
        EXPECT_EQ(e.field(), "band_sector_id");
    }
}

TEST(Eaxc, LayoutMustSumTo16) {
    EXPECT_EQ(error_of([] { pack_eaxc({0, 0, 0, 0, {4, 4, 4, 3}}); }), CodecErrc::field_overflow);
}

TEST(Eaxc, PackUnpackInverseForRandomLayouts) {
    ofh::sim::Rng rng(11);
    for (int k = 0; k < 2000; ++k) {
        const auto layout = ofh::testing::random_layout(rng);
        const auto id = ofh::testing::random_eaxc(rng, layout);
        const auto packed = pack_eaxc(id);
        EXPECT_EQ(packed, eaxc_oracle(id));
        EXPECT_EQ(unpack_eaxc(packed, layout), id);
    }
}

TEST(Ecpri, EncodeEmptyIqFrame) {
    EcpriHeader h;
    h.protocol_revision = 1;
    h.message_type = EcpriMessageType::iq_data;
    h.e_bit = true;
    EXPECT_EQ(encode_ecpri(h, {}), (Bytes{0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x80}));
}

TEST(Ecpri, EncodeControlFrameWithPayload) {
    EcpriHeader h;
    h.message_type = EcpriMessageType::rt_control;
    h.eaxc = unpack_eaxc(0x0001);
    h.sequence_id = 0x05;
    const Bytes payload{0xAA, 0xBB, 0xCC, 0xDD};
    EXPECT_EQ(encode_ecpri(h, payload),
              (Bytes{0x10, 0x02, 0x00, 0x04, 0x00, 0x01, 0x05, 0x80, 0xAA, 0xBB, 0xCC, 0xDD}));
}

TEST(Ecpri, DecodeEmptyFrame) {
    const auto frame = decode_ecpri(Bytes{0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x80});
    EXPECT_EQ(frame.header.protocol_revision, 1);
    EXPECT_FALSE(frame.header.concatenation);
    EXPECT_EQ(frame.header.message_type, EcpriMessageType::iq_data);
    EXPECT_EQ(frame.header.payload_size, 0);
    EXPECT_EQ(pack_eaxc(frame.header.eaxc), 0);
    EXPECT_TRUE(frame.header.e_bit);
    EXPECT_EQ(frame.header.subsequence_id, 0);
    EXPECT_TRUE(frame.payload.empty());
}

TEST(Ecpri, DecodeErrors) {
    EXPECT_EQ(error_of([] { decode_ecpri(Bytes(7, 0)); }), CodecErrc::truncated);
    EXPECT_EQ(error_of([] { decode_ecpri(Bytes{0x10, 0x07, 0, 0, 0, 0, 0, 0x80}); }),
              CodecErrc::unknown_message_type);
    EXPECT_EQ(error_of([] { decode_ecpri(Bytes{0x10, 0x00, 0, 2, 0, 0, 0, 0x80, 0xAA}); }),
              CodecErrc::truncated);
    EXPECT_EQ(error_of([] { decode_ecpri(Bytes{0x10, 0x00, 0, 0, 0, 0, 0, 0x80, 0xAA}); }),
              CodecErrc::payload_size_mismatch);
}

TEST(Ecpri, OversizedPayloadRejected) {
    const Bytes big(70000, 0);
    EXPECT_EQ(error_of([&] { encode_ecpri({}, big); }), CodecErrc::oversized_payload);
}

TEST(Ecpri, RoundTripRandomHeaders) {
    ofh::sim::Rng rng(7);
    for (int k = 0; k < 2000; ++k) {
        const auto layout = ofh::testing::random_layout(rng);
        auto h = ofh::testing::random_header(rng, layout);
        Bytes payload(static_cast<std::size_t>(rng.uniform_int(0, 64)));
        for (auto& b : payload) {
            b = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
        }
        h.payload_size = static_cast<std::uint16_t>(payload.size());
        const auto frame = decode_ecpri(encode_ecpri(h, payload), layout);
        EXPECT_EQ(frame.header, h);
        EXPECT_EQ(frame.payload, payload);
    }
}

TEST(Bfp, ZeroBlock) {
    const auto block = bfp_compress({});
    EXPECT_EQ(block.exponent, 0);
    for (const auto& m : block.mantissas) {
        EXPECT_EQ(m, IqSample{});
    }
}

TEST(Bfp, InRangeIsIdentity) {
    PrbSamples samples{};
    for (std::size_t k = 0; k < samples.size(); ++k) {
        samples[k] = {static_cast<std::int16_t>(-256 + 40 * static_cast<int>(k)),
                      static_cast<std::int16_t>(255 - 37 * static_cast<int>(k))};
    }
    const auto block = bfp_compress(samples);
    EXPECT_EQ(block.exponent, 0);
    EXPECT_EQ(block.mantissas, samples);
    EXPECT_EQ(bfp_decompress(block), samples);
}

TEST(Bfp, FullScalePositive) {
    PrbSamples samples{};
    samples[3].q = 32767;
    ASSERT_EQ(bfp_exponent_oracle(samples), 7U);
    const auto block = bfp_compress(samples);
    EXPECT_EQ(block.exponent, 7);
    EXPECT_EQ(block.mantissas[3].q, 255);
}

TEST(Bfp, DecompressShifts) {
    PrbBlock block;
    block.exponent = 7;
    block.mantissas[0].i = 255;
    EXPECT_EQ(bfp_decompress(block)[0].i, 255 * 128);
    EXPECT_EQ(bfp_decompress(block)[0].i, 32640);
}

TEST(Bfp, ExponentZeroDecompressIsIdentity) {
    PrbBlock block;
    block.mantissas[5] = {-256, 255};
    EXPECT_EQ(bfp_decompress(block)[5], (IqSample{-256, 255}));
}

TEST(Bfp, MatchesOracleAndBoundsError) {
    ofh::sim::Rng rng(3);
    for (int k = 0; k < 20000; ++k) {
        // Vary the dynamic range so every exponent 0..7 shows up.
        const int range = 1 << rng.uniform_int(4, 15);
        PrbSamples samples{};
        for (auto& s : samples) {
            s = ofh::testing::random_iq(rng, std::max(-range, -32768), std::min(range - 1, 32767));
        }
        const auto block = bfp_compress(samples);
        ASSERT_TRUE(block.valid());
        ASSERT_EQ(block.exponent, bfp_exponent_oracle(samples));
        const auto restored = bfp_decompress(block);
        const int bound = (1 << block.exponent) - 1;
        for (std::size_t n = 0; n < samples.size(); ++n) {
            ASSERT_LE(std::abs(restored[n].i - samples[n].i), bound);
            ASSERT_LE(std::abs(restored[n].q - samples[n].q), bound);
        }
        if (block.exponent > 0) {
            // Minimality: one less exponent must overflow somewhere.
            bool overflow = false;
            for (const auto& s : samples) {
                for (const int c : {int{s.i}, int{s.q}}) {
                    const int shifted = c >> (block.exponent - 1);
                    overflow = overflow || shifted < -256 || shifted > 255;
                }
            }
            ASSERT_TRUE(overflow);
        }
    }
}

TEST(Bfp, MostNegativeInputFitsAtSeven) {
    PrbSamples samples{};
    samples[0].i = -32768;
    const auto block = bfp_compress(samples);
    EXPECT_EQ(block.exponent, 7);
    EXPECT_EQ(bfp_decompress(block)[0].i, -32768);
}

TEST(Cplane, RoundTripRandomMessages) {
    ofh::sim::Rng rng(5);
    CodecConfig config;
    for (int k = 0; k < 2000; ++k) {
        auto m = ofh::testing::random_cplane(rng, config);
        const auto frame = encode_cplane(m, config);
        m.header.payload_size = static_cast<std::uint16_t>(frame.size() - kEcpriHeaderSize);
        ASSERT_EQ(decode_cplane(frame, config), m);
    }
}

TEST(Cplane, St1WireLayout) {
    CplaneMessage m;
    m.direction = DataDirection::downlink;
    m.frame_id = 0x12;
    m.subframe_id = 3;
    m.slot_id = 1;
    m.start_symbol_id = 0;
    CplaneSection s;
    s.section_id = 0xABC;
    s.start_prb = 0;
    s.num_prb = 133;
    s.re_mask = 0xFFF;
    s.num_symbol = 14 & 0x0F;
    s.beam_id = 5;
    m.sections.push_back(s);
    const auto frame = encode_cplane(m, {});
    const Bytes payload(frame.begin() + kEcpriHeaderSize, frame.end());
    // 1|001|0000, frame, 0011|000001|000000 (subframe|slot|symbol), 1 section, type 1,
    // ABC|0|0|0000000000, 133, FFF|1110, 0|000000000000101
    EXPECT_EQ(payload, (Bytes{0x90, 0x12, 0x30, 0x40, 0x01, 0x01, 0xAB, 0xC0, 0x00, 0x85, 0xFF,
                              0xFE, 0x00, 0x05}));
    EXPECT_EQ(frame[1], 0x02);
}

TEST(Cplane, St3WithoutExtrasIsStructuralError) {
    CplaneMessage m;
    m.section_type = SectionType::st3;
    m.sections.push_back({});
    EXPECT_EQ(error_of([&] { encode_cplane(m, {}); }), CodecErrc::structural);
}

TEST(Cplane, ZeroSectionsRejected) {
    CplaneMessage m;
    EXPECT_EQ(error_of([&] { encode_cplane(m, {}); }), CodecErrc::structural);
    // Hand-built payload announcing zero sections.
    EcpriHeader h;
    h.message_type = EcpriMessageType::rt_control;
    const Bytes payload{0x90, 0, 0, 0, 0x00, 0x01};
    EXPECT_EQ(error_of([&] { decode_cplane(encode_ecpri(h, payload), {}); }), CodecErrc::structural);
}

TEST(Cplane, WeightCountMustMatchPorts) {
    CplaneMessage m;
    CplaneSection s;
    s.extension = true;
    s.beam_weights.resize(4);
    m.sections.push_back(s);
    EXPECT_EQ(error_of([&] { encode_cplane(m, {}); }), CodecErrc::structural);
    CodecConfig four_ports;
    four_ports.ru_ports = 4;
    const auto frame = encode_cplane(m, four_ports);
    EXPECT_EQ(error_of([&] { decode_cplane(frame, {}); }), CodecErrc::structural);
}

TEST(Cplane, WeightsWithoutExtensionRejected) {
    CplaneMessage m;
    CplaneSection s;
    s.beam_weights.resize(32);
    m.sections.push_back(s);
    EXPECT_EQ(error_of([&] { encode_cplane(m, {}); }), CodecErrc::structural);
}

TEST(Cplane, UnsupportedSectionTypeRejected) {
    EcpriHeader h;
    h.message_type = EcpriMessageType::rt_control;
    const Bytes payload{0x90, 0, 0, 0, 0x01, 0x05, 0, 0, 0, 0, 0, 0, 0, 0};
    EXPECT_EQ(error_of([&] { decode_cplane(encode_ecpri(h, payload), {}); }),
              CodecErrc::unsupported_section_type);
}

TEST(Cplane, TruncatedPayload) {
    CplaneMessage m;
    m.sections.push_back({});
    auto frame = encode_cplane(m, {});
    frame.resize(frame.size() - 3);
    frame[3] = static_cast<std::uint8_t>(frame.size() - kEcpriHeaderSize);
    EXPECT_EQ(error_of([&] { decode_cplane(frame, {}); }), CodecErrc::truncated);
}

TEST(Uplane, RoundTripRandomMessages) {
    ofh::sim::Rng rng(9);
    CodecConfig config;
    for (int k = 0; k < 500; ++k) {
        auto m = ofh::testing::random_uplane(rng, config);
        const auto frame = encode_uplane(m, config);
        m.header.payload_size = static_cast<std::uint16_t>(frame.size() - kEcpriHeaderSize);
        ASSERT_EQ(decode_uplane(frame, config), m);
    }
}

TEST(Uplane, PrbCountMismatchIsStructural) {
    UplaneMessage m;
    UplaneSection s;
    s.num_prb = 2;
    s.prbs.resize(1);
    m.sections.push_back(s);
    EXPECT_EQ(error_of([&] { encode_uplane(m, {}); }), CodecErrc::structural);
}

TEST(Uplane, AllPrbsEncodingUsesCarrierWidth) {
    UplaneMessage m;
    UplaneSection s;
    s.start_prb = 100;
    s.num_prb = 0;
    s.prbs.resize(33);
    m.sections.push_back(s);
    const auto frame = encode_uplane(m, {});
    EXPECT_EQ(frame.size(), kEcpriHeaderSize + 4 + 4 + 33 * kCompressedPrbBytes);
    EXPECT_EQ(decode_uplane(frame, {}).sections.at(0).prbs.size(), 33U);
}

TEST(Uplane, TruncatedPrbData) {
    UplaneMessage m;
    UplaneSection s;
    s.num_prb = 2;
    s.prbs.resize(2);
    m.sections.push_back(s);
    auto frame = encode_uplane(m, {});
    frame.resize(frame.size() - 10);
    const auto size = frame.size() - kEcpriHeaderSize;
    frame[2] = static_cast<std::uint8_t>(size >> 8);
    frame[3] = static_cast<std::uint8_t>(size & 0xFF);
    EXPECT_EQ(error_of([&] { decode_uplane(frame, {}); }), CodecErrc::truncated);
}

TEST(Codec, EncodingIsPure) {
    ofh::sim::Rng rng(21);
    CodecConfig config;
    const auto m = ofh::testing::random_cplane(rng, config);
    EXPECT_EQ(encode_cplane(m, config), encode_cplane(m, config));
}

TEST(Capture, RecordLayoutIsBigEndian) {
    std::ostringstream out;
    write_capture_record(out, {0x0102030405060708ULL, CaptureDirection::ru_to_ter, {0xAA, 0xBB}});
    const std::string bytes = out.str();
    const Bytes expected{1, 2, 3, 4, 5, 6, 7, 8, 1, 0, 0, 0, 2, 0xAA, 0xBB};
    EXPECT_EQ(Bytes(bytes.begin(), bytes.end()), expected);
}

TEST(Capture, ReadsBackAndDetectsTruncation) {
    std::ostringstream out;
    const CaptureRecord a{10, CaptureDirection::ter_to_ru, {1, 2, 3}};
    const CaptureRecord b{20, CaptureDirection::internal, {}};
    write_capture_record(out, a);
    write_capture_record(out, b);
    std::istringstream in(out.str());
    EXPECT_EQ(read_capture(in), (std::vector<CaptureRecord>{a, b}));

    std::istringstream cut(out.str().substr(0, 15));
    EXPECT_EQ(error_of([&] { read_capture(cut); }), CodecErrc::truncated);
}

} // namespace
