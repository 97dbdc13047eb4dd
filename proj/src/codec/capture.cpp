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

#include "ofh/codec/capture.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "ofh/codec/error.hpp"

namespace ofh::codec {
namespace {

constexpr std::size_t kRecordHeader = 8 + 1 + 4;

template <std::size_t N>
void put_be(std::array<char, kRecordHeader>& buf, std::size_t offset, std::uint64_t value) {
    for (std::size_t k = 0; k < N; ++k) {
        buf[offset + k] = static_cast<char>((value >> (8 * (N - 1 - k))) & 0xFF);
    }
}

template <std::size_t N>
std::uint64_t get_be(const std::array<char, kRecordHeader>& buf, std::size_t offset) {
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < N; ++k) {
        value = (value << 8) | static_cast<std::uint8_t>(buf[offset + k]);
    }
    return value;
}

} // namespace

void write_capture_record(std::ostream& out, const CaptureRecord& record) {
    std::array<char, kRecordHeader> header{};
    put_be<8>(header, 0, record.time_ns);
    put_be<1>(header, 8, static_cast<std::uint8_t>(record.direction));
    put_be<4>(header, 9, record.bytes.size());
    out.write(header.data(), header.size());
    out.write(reinterpret_cast<const char*>(record.bytes.data()),
              static_cast<std::streamsize>(record.bytes.size()));
}

std::optional<CaptureRecord> read_capture_record(std::istream& in) {
    std::array<char, kRecordHeader> header{};
    in.read(header.data(), header.size());
    if (in.gcount() == 0) {
        return std::nullopt;
    }
    if (static_cast<std::size_t>(in.gcount()) != header.size()) {
        throw CodecError(CodecErrc::truncated, "capture_header",
                         std::to_string(in.gcount()) + " header bytes");
    }
    CaptureRecord record;
    record.time_ns = get_be<8>(header, 0);
    const auto direction = get_be<1>(header, 8);
    if (direction > static_cast<std::uint8_t>(CaptureDirection::internal)) {
        throw CodecError(CodecErrc::structural, "capture_direction", std::to_string(direction));
    }
    record.direction = static_cast<CaptureDirection>(direction);
    record.bytes.resize(get_be<4>(header, 9));
    in.read(reinterpret_cast<char*>(record.bytes.data()),
            static_cast<std::streamsize>(record.bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != record.bytes.size()) {
        throw CodecError(CodecErrc::truncated, "capture_body",
                         std::to_string(in.gcount()) + " of " +
                             std::to_string(record.bytes.size()) + " bytes");
    }
    return record;
}

std::vector<CaptureRecord> read_capture(std::istream& in) {
    std::vector<CaptureRecord> records;
    while (auto record = read_capture_record(in)) {
        records.push_back(std::move(*record));
    }
    return records;
}

} // namespace ofh::codec
